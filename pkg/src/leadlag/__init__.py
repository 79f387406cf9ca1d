"""Lead-lag estimation via aligned correlation, with baselines,
synthetic benchmarks, and market-topology analysis."""

from .alignment import (
    ACConfig,
    ACResult,
    AlignmentPath,
    LeadLagProfile,
    aligned_correlation,
    cr_cost,
    cr_cost_matrix,
    global_path_score,
    lead_lag_series,
    optimal_path_for_window,
)
from .baselines import TOPConfig, dtw_path, top_lead_lag
from .errors import (
    DataError,
    DegenerateRegressorError,
    EmptyOverlapError,
    InsufficientDataError,
    LeadLagError,
    NonMonotoneTimestampsError,
    NumericalError,
    NumericalUnderflowError,
    ParseError,
    SeriesTooShortError,
    UnknownScheduleError,
    ZeroNormError,
    ZeroVarianceError,
)
from .evaluation import (
    ForecastReport,
    SignificanceReport,
    estimate_lag_profiles,
    forecast_mad,
    forecast_reports,
    ols_slope_test,
    self_consistency,
    synchronize,
)
from .network import (
    DistanceMatrix,
    MSTree,
    NetworkMetrics,
    PairStats,
    TriangleAudit,
    build_distance_matrix,
    minimum_spanning_tree,
    network_metrics,
    triangle_audit,
)
from .panel import ingest_panel
from .series import (
    PaddedReturnSeries,
    ReturnSeries,
    TimeSeries,
    normalize,
    pearson,
    returns,
    uncentered_corr,
)
from .synthetic import STSConfig, STSInstance, gen_ar1, gen_sts, lag_schedule

__version__ = "0.1.0"
