"""Command-line interface.

Subcommands:

* ``align``       aligned correlation (plus optional baselines) between two
                  series; writes a path CSV, a summary JSON, and a figure.
* ``synth-eval``  seeded synthetic benchmark; writes significance and
                  forecast tables, the lag profiles, the generated
                  instance, and a lag-profile figure.
* ``network``     distance matrix, triangle audit, MST, and metrics per
                  date range of a panel CSV; writes a network JSON, an
                  edge CSV, a metrics CSV, and a heatmap per range.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical error.
"""

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .alignment import ACConfig, aligned_correlation, lead_lag_series
from .baselines import TOPConfig, dtw_path, top_lead_lag
from .errors import DataError, LeadLagError
from .evaluation import (
    estimate_lag_profiles,
    forecast_reports,
    self_consistency,
)
from .network import build_distance_matrix, minimum_spanning_tree, network_metrics, triangle_audit
from .panel import ingest_panel
from .series import pearson, returns
from .synthetic import STSConfig, gen_sts

__all__ = ["main", "build_parser"]

DEFAULT_MODELS = "ac,dtw,actual,unsynced,top:2,top:1,top:0.5,top:0.2"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the interface contract
    # reserves 2 for data errors, so remap to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_windows(text):
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad window list {text!r}")


def _parse_psi(text):
    if text == "auto":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"psi must be an integer or 'auto', got {text!r}")


def _parse_range(text):
    parts = text.split("..")
    if len(parts) != 2 or not parts[0] or not parts[1]:
        raise argparse.ArgumentTypeError(f"range must look like START..END, got {text!r}")
    return parts[0], parts[1]


def _add_ac_flags(p):
    p.add_argument("--windows", type=_parse_windows, default=(25, 51, 101),
                   help="comma-separated odd window sizes (default 25,51,101)")
    p.add_argument("--psi", type=_parse_psi, default=None,
                   help="endpoint relaxation; integer or 'auto' (= window size, default)")
    p.add_argument("--no-identity-candidate", action="store_true",
                   help="drop the pure diagonal path from the candidate set")


def _ac_config(args):
    return ACConfig(
        windows=args.windows,
        psi=args.psi,
        include_identity_candidate=not args.no_identity_candidate,
    )


def build_parser():
    parser = _Parser(prog="leadlag", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_align = sub.add_parser("align", help="align two series and report the measure")
    p_align.add_argument("--panel", help="panel CSV with a timestamp column")
    p_align.add_argument("--cols",
                         help="comma-separated pair of column labels, e.g. EUR,JPY")
    p_align.add_argument("--x", dest="x_file",
                         help="single-series CSV (timestamp, value); alternative to --panel")
    p_align.add_argument("--y", dest="y_file",
                         help="single-series CSV (timestamp, value); alternative to --panel")
    p_align.add_argument("--format", dest="timestamp_format", default=None,
                         help="strptime timestamp format (default ISO-8601)")
    p_align.add_argument("--range", dest="ranges", type=_parse_range, action="append",
                         help="restrict to START..END (inclusive)")
    p_align.add_argument("--baselines", default="",
                         help="extra models to run, e.g. dtw,top:2")
    p_align.add_argument("--out", required=True, help="output directory")
    p_align.add_argument("--no-figures", action="store_true")
    _add_ac_flags(p_align)

    p_synth = sub.add_parser("synth-eval", help="seeded synthetic benchmark")
    p_synth.add_argument("--schedule", type=int, required=True, choices=[1, 2, 3, 4])
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--length", type=int, default=300)
    p_synth.add_argument("--models", default=DEFAULT_MODELS,
                         help=f"comma list of models (default {DEFAULT_MODELS})")
    p_synth.add_argument("--window-size", type=int, default=100,
                         help="significance-test window (default 100)")
    p_synth.add_argument("--confidence", type=float, default=0.975)
    p_synth.add_argument("--raw-forecast", action="store_true",
                         help="score forecasts in raw units instead of z-scored")
    p_synth.add_argument("--out", required=True, help="output directory")
    p_synth.add_argument("--no-figures", action="store_true")
    _add_ac_flags(p_synth)

    p_net = sub.add_parser("network", help="market topology over a panel CSV")
    p_net.add_argument("--panel", required=True)
    p_net.add_argument("--format", dest="timestamp_format", default=None)
    p_net.add_argument("--range", dest="ranges", type=_parse_range, action="append",
                       help="START..END (inclusive); repeatable, default whole file")
    p_net.add_argument("--all-pairs", action="store_true",
                       help="emit pair stats for all pairs, not only MST edges")
    p_net.add_argument("--out", required=True, help="output directory")
    p_net.add_argument("--no-figures", action="store_true")
    _add_ac_flags(p_net)

    return parser


def _fmt(v):
    return f"{v:.6f}"


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _load_align_inputs(args):
    date_range = args.ranges[0] if args.ranges else None
    if args.x_file or args.y_file:
        if not (args.x_file and args.y_file) or args.panel or args.cols:
            raise DataError("give either --x and --y, or --panel and --cols")
        x = ingest_panel(args.x_file, date_range=date_range,
                         timestamp_format=args.timestamp_format)[0]
        y = ingest_panel(args.y_file, date_range=date_range,
                         timestamp_format=args.timestamp_format)[0]
        return x, y
    if not (args.panel and args.cols):
        raise DataError("give either --x and --y, or --panel and --cols")
    cols = [c.strip() for c in args.cols.split(",")]
    if len(cols) != 2:
        raise DataError(f"--cols needs exactly two labels, got {args.cols!r}")
    panel = ingest_panel(args.panel, date_range=date_range,
                         timestamp_format=args.timestamp_format)
    by_label = {s.label: s for s in panel}
    try:
        return by_label[cols[0]], by_label[cols[1]]
    except KeyError as exc:
        raise DataError(f"column {exc} not in panel (have {sorted(by_label)})") from exc


def _cmd_align(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    x, y = _load_align_inputs(args)

    cfg = _ac_config(args)
    res = aligned_correlation(x, y, cfg)
    n = len(x)
    profile = lead_lag_series(res.path, n)

    _write_csv(
        out / "path.csv",
        ["l", "p_l", "q_l", "lag"],
        [
            (l + 1, int(p), int(q), int(q - p))
            for l, (p, q) in enumerate(res.path.pairs)
        ],
    )

    summary = {
        "ac_distance": res.ac_distance,
        "aligned_correlation": res.aligned_correlation,
        "chosen_window": res.chosen_window,
        "average_lag": res.profile.average_lag,
        "nonzero_ratio": res.profile.nonzero_ratio,
        "zero_lag_correlation": pearson(returns(x).values, returns(y).values),
    }
    baselines = [tok for tok in args.baselines.split(",") if tok.strip()]
    if baselines:
        extra = {}
        for tok in baselines:
            tok = tok.strip().lower()
            if tok == "dtw":
                path = dtw_path(x, y)
                extra["dtw_mean_lag"] = float(np.mean(path.lags))
            elif tok.startswith("top:"):
                temp = float(tok.split(":", 1)[1])
                prof = top_lead_lag(x, y, TOPConfig(temp))
                extra[f"top_mean_lag_T={temp:g}"] = float(np.mean(prof))
            else:
                raise DataError(f"unknown baseline token {tok!r}")
        summary["baselines"] = extra
    with open(out / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")

    if not args.no_figures:
        from .figures import save_alignment_figure

        save_alignment_figure(out / "alignment.png", x, y, profile)
    return 0


def _cmd_synth_eval(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cfg = STSConfig(n=args.length, schedule_id=args.schedule, seed=args.seed)
    instance = gen_sts(cfg)
    instance.to_csv(out / "sts.csv")

    models = [tok for tok in args.models.split(",") if tok.strip()]
    ac_cfg = _ac_config(args)
    profiles = estimate_lag_profiles(instance, models, ac_config=ac_cfg)

    sig = self_consistency(instance, profiles, window=args.window_size,
                           confidence=args.confidence)
    wanted = set(profiles)
    sig = [r for r in sig if r.model in wanted]
    _write_csv(
        out / "significance.csv",
        ["Model", "No. of Windows", "No. of Windows Significant",
         "Mean a value", "Standard Deviation of a values"],
        [
            (r.model, r.windows_total, r.windows_significant,
             _fmt(r.mean_a), _fmt(r.std_a))
            for r in sig
        ],
    )

    fc = forecast_reports(instance, profiles, standardize=not args.raw_forecast)
    _write_csv(
        out / "forecast_mad.csv",
        ["Model", "MAD"],
        [(r.model, _fmt(r.mad)) for r in fc],
    )

    names = list(profiles)
    header = ["t", "true_lag"] + names
    rows = [
        [t, int(instance.true_lags[t])] + [_fmt(profiles[n][t]) for n in names]
        for t in range(cfg.n)
    ]
    _write_csv(out / "lag_profiles.csv", header, rows)

    if not args.no_figures:
        from .figures import save_lag_profile_figure

        save_lag_profile_figure(out / "lag_profiles.png", instance.true_lags, profiles)
    return 0


def _cmd_network(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ranges = args.ranges if args.ranges else [None]
    cfg = _ac_config(args)

    metric_rows = []
    for k, date_range in enumerate(ranges, start=1):
        panel = ingest_panel(args.panel, date_range=date_range,
                             timestamp_format=args.timestamp_format)
        matrix = build_distance_matrix(panel, cfg)
        audit = triangle_audit(matrix)
        tree = minimum_spanning_tree(matrix)
        metrics = network_metrics(matrix, tree)

        tag = f"r{k}"
        range_label = f"{date_range[0]}..{date_range[1]}" if date_range else "all"
        edge_rows = [
            (matrix.labels[i], matrix.labels[j], _fmt(w)) for i, j, w in tree.edges
        ]
        _write_csv(out / f"edges_{tag}.csv", ["source", "target", "weight"], edge_rows)

        tree_pairs = {frozenset((i, j)) for i, j, _ in tree.edges}
        label_index = {lab: idx for idx, lab in enumerate(matrix.labels)}
        stats = matrix.pair_stats
        if not args.all_pairs:
            stats = [
                s for s in stats
                if frozenset((label_index[s.x_label], label_index[s.y_label])) in tree_pairs
            ]
            stats.sort(key=lambda s: s.ac_distance)
        doc = {
            "range": range_label,
            "labels": matrix.labels,
            "distance_matrix": matrix.d.tolist(),
            "mst_edges": [
                {"source": matrix.labels[i], "target": matrix.labels[j], "weight": w}
                for i, j, w in tree.edges
            ],
            "metrics": {
                "mean_dissimilarity": metrics.mean_dissimilarity,
                "normalized_tree_length": metrics.normalized_tree_length,
                "characterized_path_length": metrics.characterized_path_length,
                "non_leaf_nodes": metrics.non_leaf_nodes,
            },
            "triangle_audit": {
                "violations": audit.violations,
                "worst_triple": list(audit.worst_triple) if audit.worst_triple else None,
                "worst_excess": audit.worst_excess,
            },
            "pair_stats": [
                {
                    "x_label": s.x_label,
                    "y_label": s.y_label,
                    "ac_distance": s.ac_distance,
                    "aligned_correlation": s.aligned_correlation,
                    "zero_lag_correlation": s.zero_lag_correlation,
                    "average_lag": s.average_lag,
                    "nonzero_ratio": s.nonzero_ratio,
                    "chosen_window": s.chosen_window,
                }
                for s in stats
            ],
        }
        with open(out / f"network_{tag}.json", "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
        metric_rows.append(
            (range_label, _fmt(metrics.mean_dissimilarity),
             _fmt(metrics.normalized_tree_length),
             _fmt(metrics.characterized_path_length), metrics.non_leaf_nodes)
        )
        if not args.no_figures:
            from .figures import save_distance_heatmap

            save_distance_heatmap(out / f"heatmap_{tag}.png", matrix.labels, matrix.d)

    _write_csv(
        out / "metrics.csv",
        ["range", "mean_dissimilarity", "normalized_tree_length",
         "characterized_path_length", "non_leaf_nodes"],
        metric_rows,
    )
    return 0


_COMMANDS = {
    "align": _cmd_align,
    "synth-eval": _cmd_synth_eval,
    "network": _cmd_network,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except LeadLagError as exc:
        print(f"leadlag: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
