"""Energy-constrained quantum-capacity bounds for bosonic Gaussian channels.

Upper and lower bounds on the quantum capacity of single-mode attenuators
and amplifiers whose environment may be any state with known mean photon
number and entropy, cross-checked by two independent coherent-information
oracles: an exact Gaussian covariance computation and a truncated Fock-space
simulation.
"""

from .entropy import g_nats, g_bits, g_inv, nats_to, LN2
from .errors import TruncationError, UnsupportedOracleError
from .models import (
    Attenuator,
    Amplifier,
    ChannelSpec,
    EnvironmentModel,
    Thermal,
    SqueezedThermal,
    Fock,
    Generic,
)
from .gaussian import (
    GaussianChannelPoint,
    apply_symplectic,
    channel_symplectic,
    env_covariance,
    gaussian_coherent_information,
    gaussian_entropy,
    mean_photon,
    omega,
    partial_trace_cov,
    squeezed_thermal_cov,
    symplectic_eigenvalues,
    thermal_purification,
)
from .bounds import (
    BoundsReport,
    amplifier_q_l,
    amplifier_q_u1,
    amplifier_q_u2,
    attenuator_q_l,
    attenuator_q_u1,
    attenuator_q_u2,
    bounds_report,
    channel_bounds,
    env_summary,
)
from .fock import (
    OracleResult,
    annihilation,
    bs_unitary,
    coherent_information_fock,
    entropy_dm,
    env_density_matrix,
    matrix_exp,
    tms_unitary,
    tmsv_vector,
)
from .sweep import (
    ConsistencyReport,
    FigurePreset,
    GridSpec,
    PRESETS,
    SweepConfig,
    SweepRow,
    amplifier_check_grid,
    amplifier_q_l_direct,
    attenuator_check_grid,
    consistency_report,
    preset_config,
    render_csv,
    report_exit_code,
    run_preset,
    run_sweep,
    sweep_exit_code,
    sweep_rows,
)

__version__ = "0.1.0"

__all__ = [
    "LN2",
    "g_nats",
    "g_bits",
    "g_inv",
    "nats_to",
    "TruncationError",
    "UnsupportedOracleError",
    "Attenuator",
    "Amplifier",
    "ChannelSpec",
    "EnvironmentModel",
    "Thermal",
    "SqueezedThermal",
    "Fock",
    "Generic",
    "GaussianChannelPoint",
    "apply_symplectic",
    "channel_symplectic",
    "env_covariance",
    "gaussian_coherent_information",
    "gaussian_entropy",
    "mean_photon",
    "omega",
    "partial_trace_cov",
    "squeezed_thermal_cov",
    "symplectic_eigenvalues",
    "thermal_purification",
    "BoundsReport",
    "amplifier_q_l",
    "amplifier_q_u1",
    "amplifier_q_u2",
    "attenuator_q_l",
    "attenuator_q_u1",
    "attenuator_q_u2",
    "bounds_report",
    "channel_bounds",
    "env_summary",
    "OracleResult",
    "annihilation",
    "bs_unitary",
    "coherent_information_fock",
    "entropy_dm",
    "env_density_matrix",
    "matrix_exp",
    "tms_unitary",
    "tmsv_vector",
    "ConsistencyReport",
    "FigurePreset",
    "GridSpec",
    "PRESETS",
    "SweepConfig",
    "SweepRow",
    "amplifier_check_grid",
    "amplifier_q_l_direct",
    "attenuator_check_grid",
    "consistency_report",
    "preset_config",
    "render_csv",
    "report_exit_code",
    "run_preset",
    "run_sweep",
    "sweep_exit_code",
    "sweep_rows",
]
