"""Exact quench dynamics and ergodicity diagnostics for the transverse-field XY chain."""

from .spectral import (
    BogoliubovFrame,
    GridScheme,
    ModelParams,
    MomentumGrid,
    angle_difference,
    angle_pair,
    bogoliubov_frame,
    critical_field,
    dispersion,
    equilibrium_observables,
    finite_ns_grid,
    midpoint_grid,
)
from .quench import (
    ErgodicityReport,
    QuenchProtocol,
    TimeSeries,
    ergodic_width,
    ergodicity_report,
    evolve_single,
    long_time_average_single,
    overlap_c0,
    stationary_mode_residual,
    stationary_modes,
    sweep_final_field,
)
from .cyclic import (
    DwellPoint,
    evolve_cyclic,
    long_time_cyclic,
    qp_kernels,
    sweep_dwell_time,
)
from .ed import (
    DenseSpinSystem,
    SpectralDecomposition,
    build_hamiltonian,
    diagonal_ensemble,
    evolve_observables,
    ground_state,
    propagate_state,
    sector_ground_state,
    state_observables,
    spectral_decomposition,
    zeeman_limit_mz,
)

__version__ = "0.1.0"
