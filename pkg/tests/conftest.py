import numpy as np
import pytest

from leadlag import TimeSeries, gen_ar1, normalize


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def make_shifted_pair(n, shift, seed, noise=0.0):
    """Pair where the first series leads the second by `shift` steps.

    Returns (x, y) with y(t) = x(t - shift) (+ optional noise), both
    z-scored, built from one AR(1) realization so values match exactly.
    """
    base = gen_ar1(n + shift, seed=seed).values
    rng = np.random.default_rng(seed + 1)
    x = base[shift : n + shift]
    y = base[:n] + (rng.normal(0.0, noise, n) if noise > 0 else 0.0)
    return normalize(TimeSeries(x, label="x")), normalize(TimeSeries(y, label="y"))


def make_coupled_panel(n_series, n, coupling, seed, prefix="S"):
    """Equal-length panel sharing a common AR(1) factor."""
    rng = np.random.default_rng(seed)

    def ar1(length):
        x = np.empty(length)
        x[0] = rng.normal(0.0, 1.0 / np.sqrt(1.0 - 0.49))
        for t in range(1, length):
            x[t] = 0.7 * x[t - 1] + rng.normal()
        return x

    common = ar1(n)
    panel = []
    for k in range(n_series):
        v = coupling * common + np.sqrt(1.0 - coupling**2) * ar1(n)
        panel.append(normalize(TimeSeries(v, label=f"{prefix}{k:02d}")))
    return panel
