"""Covariance-matrix machinery for centered Gaussian states.

Conventions: quadratures ordered (x1, p1, x2, p2, ...), vacuum covariance is
the identity, so a thermal state with mean photon N has covariance (2N+1) I.
All entropies in nats.
"""

from dataclasses import dataclass

import numpy as np

from .entropy import g_nats
from .errors import UnsupportedOracleError
from .models import Attenuator, Amplifier, ChannelSpec, EnvironmentModel, Thermal, SqueezedThermal

SYMMETRY_TOL = 1e-12
SYMPLECTIC_TOL = 1e-12
EIGENVALUE_TOL = 1e-10


def omega(n_modes: int) -> np.ndarray:
    """Symplectic form: block diagonal with per-mode [[0, 1], [-1, 0]]."""
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(n_modes), block)


def check_covariance(gamma) -> np.ndarray:
    """Validate a covariance matrix and return it as a float array.

    Requires a square 2n x 2n real symmetric matrix whose symplectic
    eigenvalues are all >= 1 (up to tolerance).
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.ndim != 2 or gamma.shape[0] != gamma.shape[1] or gamma.shape[0] % 2:
        raise ValueError(f"covariance must be a 2n x 2n matrix, got shape {gamma.shape}")
    if not np.all(np.isfinite(gamma)):
        raise ValueError("covariance contains non-finite entries")
    if np.max(np.abs(gamma - gamma.T)) >= SYMMETRY_TOL:
        raise ValueError("covariance is not symmetric")
    nu = _symplectic_eigenvalues_unchecked(gamma)
    if np.min(nu) < 1.0 - EIGENVALUE_TOL:
        raise ValueError(
            f"not a valid quantum covariance: smallest symplectic eigenvalue {np.min(nu)}"
        )
    return gamma


def is_symplectic(s, tol: float = SYMPLECTIC_TOL) -> bool:
    """True when S Omega S^T = Omega within ``tol`` (max-abs norm)."""
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2:
        return False
    om = omega(s.shape[0] // 2)
    return float(np.max(np.abs(s @ om @ s.T - om))) < tol


def squeezed_thermal_cov(n_th: float, r: float) -> np.ndarray:
    """Covariance (2*n_th+1)*diag(e^{2r}, e^{-2r}) of a squeezed thermal state."""
    if n_th < 0.0:
        raise ValueError(f"thermal photon number must be >= 0, got {n_th}")
    if r < 0.0:
        raise ValueError(f"squeezing parameter must be >= 0, got {r}")
    scale = 2.0 * n_th + 1.0
    return np.diag([scale * np.exp(2.0 * r), scale * np.exp(-2.0 * r)])


def mean_photon(gamma) -> float:
    """Mean photon number (Tr gamma / 2 - 1) / 2 of a single-mode covariance."""
    gamma = check_covariance(gamma)
    if gamma.shape != (2, 2):
        raise ValueError(f"expected a single-mode covariance, got shape {gamma.shape}")
    value = 0.5 * (0.5 * np.trace(gamma) - 1.0)
    if value < -EIGENVALUE_TOL:
        raise ValueError(f"covariance implies negative photon number {value}")
    return max(float(value), 0.0)


def _symplectic_eigenvalues_unchecked(gamma: np.ndarray) -> np.ndarray:
    n = gamma.shape[0] // 2
    eigs = np.linalg.eigvals(1j * omega(n) @ gamma)
    return np.sort(np.abs(eigs))[::2][:n]


def symplectic_eigenvalues(gamma) -> np.ndarray:
    """Symplectic eigenvalues, one per mode, sorted ascending.

    Computed as the absolute eigenvalues of i*Omega*gamma; each value appears
    twice in that spectrum and is collapsed to one per mode.
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.ndim != 2 or gamma.shape[0] != gamma.shape[1] or gamma.shape[0] % 2:
        raise ValueError(f"covariance must be a 2n x 2n matrix, got shape {gamma.shape}")
    if np.max(np.abs(gamma - gamma.T)) >= SYMMETRY_TOL:
        raise ValueError("covariance is not symmetric")
    return _symplectic_eigenvalues_unchecked(gamma)


def gaussian_entropy(gamma) -> float:
    """Von Neumann entropy (nats) of the Gaussian state with covariance gamma.

    Sum of g((nu_i - 1)/2) over the symplectic eigenvalues nu_i.
    """
    nu = symplectic_eigenvalues(check_covariance(gamma))
    # nu can dip a hair below 1 through roundoff; those modes are pure.
    return float(sum(g_nats(max(0.0, 0.5 * (v - 1.0))) for v in nu))


def channel_symplectic(channel: ChannelSpec) -> np.ndarray:
    """Two-mode phase-space matrix of the channel dilation, acting on (A, E).

    Attenuator: beam splitter with +sqrt(tau) transmitted on both outputs and
    antisymmetric +/-sqrt(1-tau) reflections. Amplifier: two-mode squeezer
    with sqrt(kappa) diagonal blocks and sqrt(kappa-1)*diag(1,-1) couplings
    (phase conjugation of the environment quadratures). Output mode B is mode
    1 and the environment output F is mode 2.
    """
    eye = np.eye(2)
    conj = np.diag([1.0, -1.0])
    if isinstance(channel, Attenuator):
        t = np.sqrt(channel.tau)
        rfl = np.sqrt(1.0 - channel.tau)
        return np.block([[t * eye, rfl * eye], [-rfl * eye, t * eye]])
    if isinstance(channel, Amplifier):
        c = np.sqrt(channel.kappa)
        s = np.sqrt(channel.kappa - 1.0)
        return np.block([[c * eye, s * conj], [s * conj, c * eye]])
    raise TypeError(f"unknown channel type {type(channel).__name__}")


def apply_symplectic(s, gamma) -> np.ndarray:
    """Update a covariance under a symplectic transformation: S gamma S^T."""
    s = np.asarray(s, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    if s.shape[1] != gamma.shape[0] or gamma.shape[0] != gamma.shape[1]:
        raise ValueError(f"dimension mismatch: S is {s.shape}, gamma is {gamma.shape}")
    out = s @ gamma @ s.T
    return 0.5 * (out + out.T)


def partial_trace_cov(gamma, keep) -> np.ndarray:
    """Covariance of the kept modes (principal submatrix).

    ``keep`` is a set of 0-based mode indices; row order follows sorted keep.
    """
    gamma = np.asarray(gamma, dtype=float)
    n = gamma.shape[0] // 2
    modes = sorted(set(int(m) for m in keep))
    if not modes:
        raise ValueError("keep must name at least one mode")
    if modes[0] < 0 or modes[-1] >= n:
        raise ValueError(f"mode indices {modes} out of range for {n} modes")
    idx = [q for m in modes for q in (2 * m, 2 * m + 1)]
    return gamma[np.ix_(idx, idx)]


def thermal_purification(n: float) -> np.ndarray:
    """Two-mode squeezed vacuum covariance whose marginals are thermal with
    mean photon ``n``; the global state is pure (all symplectic eigenvalues 1).
    """
    if n < 0.0:
        raise ValueError(f"mean photon number must be >= 0, got {n}")
    diag = (2.0 * n + 1.0) * np.eye(2)
    off = 2.0 * np.sqrt(n * (n + 1.0)) * np.diag([1.0, -1.0])
    return np.block([[diag, off], [off, diag]])


def env_covariance(env: EnvironmentModel) -> np.ndarray:
    """Single-mode covariance of a Gaussian environment model.

    Raises UnsupportedOracleError for variants with no Gaussian state
    (Fock, Generic).
    """
    if isinstance(env, Thermal):
        return squeezed_thermal_cov(env.n_th, 0.0)
    if isinstance(env, SqueezedThermal):
        return squeezed_thermal_cov(env.n_th, env.r)
    raise UnsupportedOracleError(
        f"no Gaussian covariance exists for environment {env}; "
        "the Gaussian oracle supports thermal and squeezed-thermal variants only"
    )


@dataclass(frozen=True)
class GaussianChannelPoint:
    """One evaluation point: channel, Gaussian environment covariance, and the
    mean photon number of the thermal input."""

    channel: ChannelSpec
    env_cov: np.ndarray
    input_photon: float

    def __post_init__(self):
        check_covariance(self.env_cov)
        if np.asarray(self.env_cov).shape != (2, 2):
            raise ValueError("environment covariance must be single mode")
        if not self.input_photon >= 0.0:
            raise ValueError(f"input photon number must be >= 0, got {self.input_photon}")


def gaussian_coherent_information(point: GaussianChannelPoint) -> float:
    """Exact coherent information (nats) of the channel on a thermal input.

    Builds the three-mode covariance of (reference R, input A, environment E)
    with (R, A) in a two-mode squeezed vacuum purifying the thermal input,
    applies the channel symplectic on (A, E), and returns
    S(B) - S(R, B). The joint (R, B) entropy equals the complementary-output
    entropy because tracing the purified environment is a submatrix operation.
    """
    n = point.input_photon
    gamma = np.zeros((6, 6))
    gamma[:4, :4] = thermal_purification(n)
    gamma[4:, 4:] = np.asarray(point.env_cov, dtype=float)
    s_full = np.eye(6)
    s_full[2:, 2:] = channel_symplectic(point.channel)
    out = apply_symplectic(s_full, gamma)
    s_b = gaussian_entropy(partial_trace_cov(out, {1}))
    s_rb = gaussian_entropy(partial_trace_cov(out, {0, 1}))
    return s_b - s_rb
