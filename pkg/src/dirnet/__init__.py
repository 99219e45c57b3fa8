"""Connectivity statistics for random networks of directional antennas."""

__version__ = "0.1.0"

from .analytics import (
    DegreeEstimate,
    HardDiskMu2Mode,
    QuadMethod,
    QuadratureSpec,
    h2_exact_fixed,
    hard_disk_lens_area,
    hm_approx_fixed,
    mu1_closed_form,
    mu2_hard_disk,
    mu2_quadrature,
)
from .antenna import GainModel
from .channel import ChannelKind, ChannelModel, OrientedNode
from .experiments import (
    FitModel,
    FitResult,
    SweepSpec,
    Table,
    TableFormat,
    detect_peak,
    fit_cube_root_law,
    fit_power_law,
    read_table,
    run_degree_sweep,
    run_hbar_scaling,
    run_hop_distribution,
    run_mu3_fit,
    run_phase_diagram,
    write_table,
)
from .simulator import (
    KHopStats,
    NetworkConfig,
    Realization,
    aggregate_stats,
    khop_degrees,
    sample_realization,
    simulate,
    thread_count,
)
from .specfun import NumericalError, digamma, gamma, hyp2f1

__all__ = [
    "ChannelKind",
    "ChannelModel",
    "DegreeEstimate",
    "FitModel",
    "FitResult",
    "GainModel",
    "HardDiskMu2Mode",
    "KHopStats",
    "NetworkConfig",
    "NumericalError",
    "OrientedNode",
    "QuadMethod",
    "QuadratureSpec",
    "Realization",
    "SweepSpec",
    "Table",
    "TableFormat",
    "aggregate_stats",
    "detect_peak",
    "digamma",
    "fit_cube_root_law",
    "fit_power_law",
    "gamma",
    "h2_exact_fixed",
    "hard_disk_lens_area",
    "hm_approx_fixed",
    "hyp2f1",
    "khop_degrees",
    "mu1_closed_form",
    "mu2_hard_disk",
    "mu2_quadrature",
    "read_table",
    "run_degree_sweep",
    "run_hbar_scaling",
    "run_hop_distribution",
    "run_mu3_fit",
    "run_phase_diagram",
    "sample_realization",
    "simulate",
    "thread_count",
    "write_table",
    "__version__",
]
