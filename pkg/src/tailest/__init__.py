"""Tail exponent estimation for power-law-like samples on bounded domains."""

from .estimator import (
    DEFAULT_CONFIG,
    DegenerateBoundsError,
    DegenerateSampleError,
    EstimateResult,
    EstimationError,
    HillPlotSeries,
    OrderedSample,
    SingularityError,
    SolverConfig,
    SolverFailureError,
    TailWindow,
    WindowError,
    correction,
    correction_derivative,
    full_window,
    gfun,
    hill_estimate,
    hill_plot_series,
    improved_estimate,
    mean_log,
    mean_log_simpson,
    solve_direct,
    solve_iterative,
)
from .experiments import (
    FIGURE_EXAMPLES,
    TABLE_ROWS,
    FigureSeriesResult,
    RowSummary,
    TableRowResult,
    figure_csv,
    run_figure,
    run_full_table,
    run_table_row,
    summarize_table,
    summary_csv,
    table_csv,
)
from .sampler import (
    DistributionSpec,
    DistributionSpecError,
    GridDistribution,
    SampleRequest,
    draw,
    sigma_statistic,
    tabulate,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CONFIG",
    "DegenerateBoundsError",
    "DegenerateSampleError",
    "DistributionSpec",
    "DistributionSpecError",
    "EstimateResult",
    "EstimationError",
    "FIGURE_EXAMPLES",
    "FigureSeriesResult",
    "GridDistribution",
    "HillPlotSeries",
    "OrderedSample",
    "RowSummary",
    "SampleRequest",
    "SingularityError",
    "SolverConfig",
    "SolverFailureError",
    "TABLE_ROWS",
    "TableRowResult",
    "TailWindow",
    "WindowError",
    "correction",
    "correction_derivative",
    "draw",
    "figure_csv",
    "full_window",
    "gfun",
    "hill_estimate",
    "hill_plot_series",
    "improved_estimate",
    "mean_log",
    "mean_log_simpson",
    "run_figure",
    "run_full_table",
    "run_table_row",
    "sigma_statistic",
    "solve_direct",
    "solve_iterative",
    "summarize_table",
    "summary_csv",
    "table_csv",
    "tabulate",
]
