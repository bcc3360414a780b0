"""Truncated Fock-space oracle for coherent information.

Simulates the beam-splitter / two-mode-squeezer dilation on a finite
photon-number lattice |0..d-1> per mode. Both channel generators conserve a
photon quantum number (the total for the beam splitter, the difference for
the squeezer), and truncation respects that structure, so the two-mode
unitary is assembled sector by sector: each small block is the exponential
of a real antisymmetric matrix and hence exactly orthogonal. The result is
exactly unitary at any truncation level and cheap to build.

Coherent information uses the input-purification route: the thermal input is
purified to a two-mode squeezed vacuum on modes (R, A), the environment state
enters on E, the dilation maps (A, E) -> (B, F), and

    i_c = S(rho_B) - S(rho_{R B}).

For environments diagonal in photon number, rho_{R B} is block diagonal in
n_B - n_R (exactly, entry by entry), which reduces the d^2 x d^2
eigenproblem to blocks of size at most d. Mixed environments that are not
number-diagonal fall back to a dense eigendecomposition.

Truncation quality is tracked by ``tail_mass``: the largest probability
weight sitting on the top two Fock levels of any retained mode. Results with
tail mass above the caller's threshold raise :class:`TruncationError` with a
suggested dimension and the partial result attached.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

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

#: Default acceptable probability weight on the top two Fock levels.
DEFAULT_TAIL_THRESHOLD = 1e-8
#: Starting truncation for attenuator runs.
DEFAULT_DIM_ATTENUATOR = 20
#: Starting truncation for amplifier runs (squeezing spreads photon number).
DEFAULT_DIM_AMPLIFIER = 24
#: Ceiling of the adaptive ladder.
DIM_CAP = 48
#: Hard cap: the two-mode unitary alone holds d^4 entries.
MAX_SAFE_DIM = 64
#: Default safety limit on amplifier gain.
DEFAULT_KAPPA_MAX = 1.5
#: Default safety limit on input mean photon number for amplifier runs.
DEFAULT_INPUT_PHOTON_MAX = 5.0

#: Environment eigenvalues at or below this weight are skipped.
_PROB_CUTOFF = 1e-18
#: Eigenvalues at or below this are treated as exact zeros in entropies.
_ENTROPY_EIG_FLOOR = 1e-14
_HERMITICITY_TOL = 1e-12


def _check_dim(d: int):
    if d < 2:
        raise ValueError(f"need at least two Fock levels, got d={d}")
    if d > MAX_SAFE_DIM:
        raise ValueError(
            f"truncation {d} exceeds the safety cap {MAX_SAFE_DIM}; "
            f"the two-mode unitary alone is d^4 entries"
        )


def annihilation(d: int) -> np.ndarray:
    """Truncated annihilation operator: entry (n-1, n) equals sqrt(n)."""
    if d < 2:
        raise ValueError(f"need at least two Fock levels, got d={d}")
    a = np.zeros((d, d))
    ns = np.arange(1, d)
    a[ns - 1, ns] = np.sqrt(ns)
    return a


def matrix_exp(m: np.ndarray) -> np.ndarray:
    """Matrix exponential (scaling and squaring); rejects non-finite input."""
    m = np.asarray(m)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix exponential requires finite entries")
    return scipy.linalg.expm(m)


def _sector_unitary(d: int, sectors) -> np.ndarray:
    """Assemble a d^2 x d^2 unitary from (index, generator) sector pairs."""
    u = np.zeros((d * d, d * d))
    for idx, gen in sectors:
        u[np.ix_(idx, idx)] = matrix_exp(gen)
    u.flags.writeable = False
    return u


def _ladder_generator(weights: np.ndarray) -> np.ndarray:
    """Real antisymmetric tridiagonal matrix with +w below the diagonal."""
    m = weights.size + 1
    gen = np.zeros((m, m))
    rows = np.arange(m - 1)
    gen[rows + 1, rows] = weights
    gen[rows, rows + 1] = -weights
    return gen


@lru_cache(maxsize=6)
def bs_unitary(tau: float, d: int) -> np.ndarray:
    """Beam-splitter unitary exp[theta (a^dag e - a e^dag)] on C^d x C^d.

    theta = arctan sqrt((1-tau)/tau), so a single photon is transmitted with
    probability tau. Sign convention: U|1,0> = cos(theta)|1,0> -
    sin(theta)|0,1>. The generator conserves total photon number, so the
    returned matrix is block diagonal over total-photon sectors and exactly
    unitary. The array is cached and read-only.
    """
    if not 0.0 < tau <= 1.0:
        raise ValueError(
            f"transmissivity must lie in (0, 1], got {tau}; a zero-transmissivity "
            f"beam splitter is a swap, so evaluate at 1 - tau and relabel outputs"
        )
    _check_dim(d)
    theta = math.atan(math.sqrt((1.0 - tau) / tau))
    sectors = []
    for s in range(2 * d - 1):
        # photon count in the first mode within the total-photon-s sector
        ks = np.arange(max(0, s - d + 1), min(s, d - 1) + 1)
        w = theta * np.sqrt((ks[:-1] + 1.0) * (s - ks[:-1]))
        sectors.append((ks * d + (s - ks), _ladder_generator(w)))
    return _sector_unitary(d, sectors)


@lru_cache(maxsize=6)
def tms_unitary(kappa: float, d: int, kappa_max: float = DEFAULT_KAPPA_MAX) -> np.ndarray:
    """Two-mode squeezer exp[r (a^dag e^dag - a e)] on C^d x C^d.

    r = arctanh sqrt((kappa-1)/kappa); acting on |0,0> this creates the
    standard two-mode squeezed vacuum with per-mode mean photon number
    kappa - 1. The generator conserves the photon-number difference, so the
    matrix is block diagonal over difference sectors and exactly unitary.
    Gains above ``kappa_max`` are rejected: photon number grows exponentially
    with r and truncation would silently dominate.
    """
    if not 1.0 <= kappa <= kappa_max:
        raise ValueError(
            f"gain must lie in [1, {kappa_max}], got {kappa}; pass a larger "
            f"kappa_max only with a truncation budget to match"
        )
    _check_dim(d)
    r = math.atanh(math.sqrt((kappa - 1.0) / kappa))
    sectors = []
    for delta in range(-(d - 1), d):
        m = d - abs(delta)
        na = np.arange(m) + max(delta, 0)
        ne = np.arange(m) + max(-delta, 0)
        w = r * np.sqrt((na[:-1] + 1.0) * (ne[:-1] + 1.0))
        sectors.append((na * d + ne, _ladder_generator(w)))
    return _sector_unitary(d, sectors)


def _subspace_unitarity_defect(u: np.ndarray, d: int) -> float:
    """max |(U^dag U - I)| restricted to total photons <= d/2.

    The full Gram matrix never leaves the span of the columns used, so
    restricting columns is exact for the reported subspace block.
    """
    a, e = np.divmod(np.arange(d * d), d)
    cols = np.flatnonzero(a + e <= d // 2)
    sub = u[:, cols]
    gram = sub.T @ sub  # generators are real, so u is real orthogonal
    gram[np.arange(cols.size), np.arange(cols.size)] -= 1.0
    return float(np.abs(gram).max())


def _geometric_suggested_dim(q: float, tail_threshold: float) -> int:
    # smallest d with q^(d-2) (1 - q^2) below threshold, plus one for margin
    need = math.log(tail_threshold / (1.0 - q * q)) / math.log(q)
    return int(math.ceil(need)) + 3


def _thermal_probs(n_mean: float, d: int, tail_threshold: float | None) -> np.ndarray:
    """Geometric photon-number distribution, renormalized on d levels."""
    if n_mean == 0.0:
        w = np.zeros(d)
        w[0] = 1.0
        return w
    q = n_mean / (n_mean + 1.0)
    w = q ** np.arange(d)
    w /= w.sum()
    if tail_threshold is not None:
        tail = float(w[-2:].sum())
        if tail > tail_threshold:
            raise TruncationError(
                f"thermal occupation {n_mean:g} leaves tail mass {tail:.3g} "
                f"above {tail_threshold:g} at dimension {d}",
                suggested_dim=_geometric_suggested_dim(q, tail_threshold),
            )
    return w


def env_density_matrix(
    env: EnvironmentModel, d: int, tail_threshold: float = DEFAULT_TAIL_THRESHOLD
) -> np.ndarray:
    """Density matrix of an environment model on d Fock levels.

    Thermal states are diagonal geometric distributions; Fock states are
    projectors; squeezed thermal states conjugate the thermal diagonal by the
    squeeze unitary exp[(r/2)(a^dag^2 - a^2)] (x-quadrature anti-squeezed,
    matching the covariance convention). Generic environments carry only the
    (mean photon, entropy) pair and have no state to build.
    """
    _check_dim(d)
    if isinstance(env, Generic):
        raise UnsupportedOracleError(
            "generic environments fix only (mean photon, entropy) and have no "
            "canonical density matrix; simulate a concrete model instead"
        )
    if isinstance(env, Fock):
        if env.n > d - 3:
            raise TruncationError(
                f"Fock level {env.n} needs headroom above the top level at "
                f"dimension {d}",
                suggested_dim=env.n + 3,
            )
        rho = np.zeros((d, d))
        rho[env.n, env.n] = 1.0
        return rho
    if isinstance(env, Thermal):
        return np.diag(_thermal_probs(env.n_th, d, tail_threshold))
    if isinstance(env, SqueezedThermal):
        # diagnose the tail after squeezing: that is what the channel sees
        w = _thermal_probs(env.n_th, d, None)
        a = annihilation(d)
        squeeze = matrix_exp(0.5 * env.r * (a.T @ a.T - a @ a))
        rho = (squeeze * w[None, :]) @ squeeze.T
        rho = 0.5 * (rho + rho.T)
        tail = float(np.trace(rho[-2:, -2:]))
        if tail > tail_threshold:
            raise TruncationError(
                f"squeezed thermal environment leaves tail mass {tail:.3g} "
                f"above {tail_threshold:g} at dimension {d}",
                suggested_dim=min(2 * d, MAX_SAFE_DIM),
            )
        return rho
    raise TypeError(f"unknown environment type {type(env).__name__}")


def _thermal_schmidt(n_mean: float, d: int, tail_threshold: float | None) -> np.ndarray:
    return np.sqrt(_thermal_probs(n_mean, d, tail_threshold))


def tmsv_vector(n_photon: float, d: int, tail_threshold: float = DEFAULT_TAIL_THRESHOLD) -> np.ndarray:
    """Two-mode squeezed vacuum purifying a thermal state of mean n_photon.

    Returns the length-d^2 amplitude vector of sum_n c_n |n>|n> with
    c_n proportional to sqrt((n/(n+1))^n), renormalized on the window.
    """
    if not (math.isfinite(n_photon) and n_photon >= 0.0):
        raise ValueError(f"mean photon number must be finite and >= 0, got {n_photon}")
    c = _thermal_schmidt(n_photon, d, tail_threshold)
    vec = np.zeros(d * d)
    vec[np.arange(d) * (d + 1)] = c
    return vec


def _entropy_from_probs(w: np.ndarray) -> float:
    w = w[w > _ENTROPY_EIG_FLOOR]
    if w.size == 0:
        return 0.0
    return float(-(w * np.log(w)).sum())


def entropy_dm(rho: np.ndarray) -> float:
    """Von Neumann entropy in nats of a Hermitian density matrix."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > _HERMITICITY_TOL:
        raise ValueError("density matrix is not Hermitian")
    return _entropy_from_probs(np.linalg.eigvalsh(rho))


@dataclass(frozen=True)
class OracleResult:
    """Coherent information of one simulated point, with diagnostics.

    ``i_c = s_output - s_exchange`` (all nats). ``tail_mass`` is the largest
    probability weight on the top two Fock levels across the reference,
    output, and environment-output modes; ``unitarity_defect`` is the
    max-norm deviation of U^dag U from identity on the subspace with total
    photons <= d/2.
    """

    i_c: float
    s_output: float
    s_exchange: float
    tail_mass: float
    unitarity_defect: float
    dim_used: int


def _structured_entropies(u, c, probs, d, is_bs):
    """Entropies for number-diagonal environments via difference blocks.

    For an environment eigenstate |k>, the amplitude on (r, b, f) is nonzero
    only at f = k - delta (beam splitter) or f = k + delta (squeezer), with
    delta = b - r. Hence rho_{R B} is exactly block diagonal in delta and
    rho_B is exactly diagonal; each block is a sum of rank-one terms, one per
    environment level.
    """
    keep = np.flatnonzero(probs > _PROB_CUTOFF)
    p_b = np.zeros(d)
    p_f = np.zeros(d)
    joint_eigs = []
    for delta in range(-(d - 1), d):
        r = np.arange(max(0, -delta), d - max(0, delta))
        cols = []
        for k in keep:
            f = int(k) - delta if is_bs else int(k) + delta
            if f < 0 or f >= d:
                continue
            amp = u[(r + delta) * d + f, r * d + int(k)]
            v = math.sqrt(probs[k]) * c[r] * amp
            cols.append((f, v))
        if not cols:
            continue
        block_vecs = np.column_stack([v for _, v in cols])
        for f, v in cols:
            vv = v * v
            p_b[r + delta] += vv
            p_f[f] += vv.sum()
        block = block_vecs @ block_vecs.T
        joint_eigs.append(np.linalg.eigvalsh(block))
    s_exchange = _entropy_from_probs(np.concatenate(joint_eigs))
    s_output = _entropy_from_probs(p_b)
    return s_output, s_exchange, p_b, p_f


def _dense_entropies(u, c, weights, vectors, d):
    """Entropies for a general (non-number-diagonal) environment mixture."""
    u3 = u.reshape(d * d, d, d)
    rho_b = np.zeros((d, d))
    p_f = np.zeros(d)
    blocks = []
    for k in np.flatnonzero(weights > _PROB_CUTOFF):
        # amplitude tensor t[r, b, f] for environment eigenvector k
        m = u3 @ vectors[:, k]
        t = (m * c[None, :]).T.reshape(d, d, d)
        blocks.append(math.sqrt(weights[k]) * t.reshape(d * d, d))
        rho_b += weights[k] * np.einsum("rbf,rcf->bc", t, t)
        p_f += weights[k] * (t * t).sum(axis=(0, 1))
    stacked = np.hstack(blocks)
    rho_rb = stacked @ stacked.T
    s_exchange = _entropy_from_probs(np.linalg.eigvalsh(rho_rb))
    rho_b = 0.5 * (rho_b + rho_b.T)
    s_output = _entropy_from_probs(np.linalg.eigvalsh(rho_b))
    return s_output, s_exchange, np.diag(rho_b).copy(), p_f


def _evaluate_point(channel, env, input_photon, d, tail_threshold, kappa_max):
    _check_dim(d)
    c = _thermal_schmidt(input_photon, d, tail_threshold)
    rho_e = env_density_matrix(env, d, tail_threshold)
    if isinstance(channel, Attenuator):
        u = bs_unitary(channel.tau, d)
        is_bs = True
    else:
        u = tms_unitary(channel.kappa, d, kappa_max=kappa_max)
        is_bs = False
    defect = _subspace_unitarity_defect(u, d)

    if isinstance(env, (Thermal, Fock)):
        probs = np.diag(rho_e).copy()
        s_out, s_exch, p_b, p_f = _structured_entropies(u, c, probs, d, is_bs)
    else:
        weights, vectors = np.linalg.eigh(rho_e)
        weights = np.clip(weights, 0.0, None)
        s_out, s_exch, p_b, p_f = _dense_entropies(u, c, weights, vectors, d)

    p_r = c * c
    tail = max(float(p_r[-2:].sum()), float(p_b[-2:].sum()), float(p_f[-2:].sum()))
    return OracleResult(
        i_c=s_out - s_exch,
        s_output=s_out,
        s_exchange=s_exch,
        tail_mass=tail,
        unitarity_defect=defect,
        dim_used=d,
    )


def coherent_information_fock(
    channel: ChannelSpec,
    env: EnvironmentModel,
    input_photon: float,
    dim: int | None = None,
    *,
    tail_threshold: float = DEFAULT_TAIL_THRESHOLD,
    max_dim: int = DIM_CAP,
    kappa_max: float = DEFAULT_KAPPA_MAX,
    input_photon_max: float = DEFAULT_INPUT_PHOTON_MAX,
) -> OracleResult:
    """Coherent information of the channel on a thermal input, by simulation.

    Builds the purified input on (R, A), tensors the environment on E,
    applies the dilation unitary on (A, E), and returns
    S(rho_B) - S(rho_{R B}) with truncation diagnostics. When ``dim`` is
    None the truncation follows a doubling ladder from the channel-family
    default up to ``max_dim``, stopping at the first rung whose tail mass is
    below ``tail_threshold``; otherwise exactly ``dim`` is used. A pinned or
    exhausted ladder with excessive tail mass raises :class:`TruncationError`
    carrying the partial result and a suggested dimension.
    """
    if not (math.isfinite(input_photon) and input_photon >= 0.0):
        raise ValueError(f"input photon number must be finite and >= 0, got {input_photon}")
    if isinstance(env, Generic):
        raise UnsupportedOracleError(
            "generic environments have no state-level realization to simulate"
        )
    if isinstance(channel, Amplifier):
        if channel.kappa > kappa_max:
            raise ValueError(
                f"gain {channel.kappa} exceeds the safety limit {kappa_max}; "
                f"raise kappa_max only with a matching truncation budget"
            )
        if input_photon > input_photon_max:
            raise ValueError(
                f"input photon number {input_photon} exceeds the amplifier safety "
                f"limit {input_photon_max}"
            )
        base = DEFAULT_DIM_AMPLIFIER
    elif isinstance(channel, Attenuator):
        if channel.tau == 0.0:
            raise ValueError(
                "zero transmissivity swaps input and environment; evaluate the "
                "complementary channel at transmissivity 1 instead"
            )
        base = DEFAULT_DIM_ATTENUATOR
    else:
        raise TypeError(f"unknown channel type {type(channel).__name__}")

    cap = min(max_dim, MAX_SAFE_DIM)
    if dim is not None:
        ladder = [int(dim)]
    else:
        ladder = [min(base, cap)]
        while ladder[-1] < cap:
            ladder.append(min(2 * ladder[-1], cap))

    failure = None
    for d in ladder:
        try:
            result = _evaluate_point(channel, env, input_photon, d, tail_threshold, kappa_max)
        except TruncationError as err:
            failure = err
            continue
        if result.tail_mass <= tail_threshold:
            return result
        failure = TruncationError(
            f"tail mass {result.tail_mass:.3g} above threshold "
            f"{tail_threshold:g} at dimension {d}",
            suggested_dim=min(2 * d, MAX_SAFE_DIM) if d < MAX_SAFE_DIM else None,
            result=result,
        )
    raise failure
