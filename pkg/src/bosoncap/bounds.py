"""Capacity-bound formulas and per-point report assembly.

Each bound is a closed-form function of the channel parameter, the input mean
photon number N, and the environment summary (N_E, S_E, N_th). Upper bounds
come in a linear and an exponential variant; the lower bound uses the
Gaussian-optimizer output-entropy estimate. All formulas evaluate in nats;
reports convert to the requested units at the end.
"""

import math
from dataclasses import dataclass, field

from .entropy import g_nats, g_inv, nats_to, LN2
from .errors import UnsupportedOracleError, TruncationError
from .models import (
    Attenuator,
    Amplifier,
    ChannelSpec,
    EnvironmentModel,
    Fock,
    Generic,
)

#: Sandwich tolerance (bits) for the exact Gaussian oracle.
GAUSSIAN_SANDWICH_TOL_BITS = 1e-3
#: Sandwich tolerance (bits) for the truncation-limited Fock oracle.
FOCK_SANDWICH_TOL_BITS = 0.02
#: Slack (nats) when flagging a lower bound above an upper bound.
BOUND_ORDER_TOL = 1e-9

# Machine-readable row/report flag tokens.
FLAG_LOWER_EXCEEDS_UPPER = "lower_exceeds_upper"
FLAG_GAUSSIAN_ORACLE_OUTSIDE_BOUNDS = "gaussian_oracle_outside_bounds"
FLAG_FOCK_ORACLE_OUTSIDE_BOUNDS = "fock_oracle_outside_bounds"
FLAG_ORACLE_UNAVAILABLE_GAUSSIAN = "oracle_unavailable_gaussian"
FLAG_ORACLE_UNAVAILABLE_FOCK = "oracle_unavailable_fock"
FLAG_TRUNCATION_FAILURE = "truncation_failure"
FLAG_ORACLE_ENV_SUBSTITUTED = "oracle_env_substituted"

FLAG_TOKENS = frozenset(
    {
        FLAG_LOWER_EXCEEDS_UPPER,
        FLAG_GAUSSIAN_ORACLE_OUTSIDE_BOUNDS,
        FLAG_FOCK_ORACLE_OUTSIDE_BOUNDS,
        FLAG_ORACLE_UNAVAILABLE_GAUSSIAN,
        FLAG_ORACLE_UNAVAILABLE_FOCK,
        FLAG_TRUNCATION_FAILURE,
        FLAG_ORACLE_ENV_SUBSTITUTED,
    }
)


def env_summary(env: EnvironmentModel) -> tuple[float, float, float]:
    """(N_E, S_E in nats, N_th) for an environment model.

    N_th is the thermal occupation with the same entropy, g^{-1}(S_E).
    """
    n_e = env.mean_photon
    s_e = env.entropy_nats
    if s_e > g_nats(n_e) + 1e-12:
        raise ValueError(
            f"environment entropy {s_e} exceeds the maximum g(N_E)={g_nats(n_e)}"
        )
    return n_e, s_e, g_inv(s_e)


def _check_input_photon(n: float):
    if not (math.isfinite(n) and n >= 0.0):
        raise ValueError(f"input photon number must be finite and >= 0, got {n}")


def attenuator_q_u1(tau: float, n: float, env: EnvironmentModel) -> float:
    """Linear-form upper bound for the attenuator (nats)."""
    _check_input_photon(n)
    n_e, s_e, _ = env_summary(env)
    Attenuator(tau)
    return g_nats(tau * n + (1.0 - tau) * n_e) - (1.0 - tau) * s_e


def attenuator_q_u2(tau: float, n: float, env: EnvironmentModel) -> float:
    """Exponential-form upper bound for the attenuator (nats)."""
    _check_input_photon(n)
    n_e, s_e, _ = env_summary(env)
    Attenuator(tau)
    return (
        g_nats(tau * n + (1.0 - tau) * n_e)
        - math.log((1.0 - tau) + tau * math.exp(-s_e))
        - s_e
    )


def attenuator_q_l(tau: float, n: float, env: EnvironmentModel) -> float:
    """Gaussian-optimizer lower bound for the attenuator (nats).

    May be negative; callers wanting an achievable rate clamp at zero.
    """
    _check_input_photon(n)
    n_e, s_e, n_th = env_summary(env)
    Attenuator(tau)
    return (
        g_nats((1.0 - tau) * n_th + tau * n)
        - g_nats((1.0 - tau) * n + tau * n_e)
        - s_e
    )


def amplifier_q_u1(kappa: float, n: float, env: EnvironmentModel) -> float:
    """Linear-form upper bound for the amplifier (nats)."""
    _check_input_photon(n)
    n_e, s_e, _ = env_summary(env)
    Amplifier(kappa)
    return (
        g_nats(kappa * n + (kappa - 1.0) * (n_e + 1.0))
        - (kappa - 1.0) / (2.0 * kappa - 1.0) * s_e
        - math.log(2.0 * kappa - 1.0)
    )


def amplifier_q_u2(kappa: float, n: float, env: EnvironmentModel) -> float:
    """Exponential-form upper bound for the amplifier (nats)."""
    _check_input_photon(n)
    n_e, s_e, _ = env_summary(env)
    Amplifier(kappa)
    return (
        g_nats(kappa * n + (kappa - 1.0) * (n_e + 1.0))
        - math.log(kappa - 1.0 + kappa * math.exp(-s_e))
        - s_e
    )


def amplifier_q_l(kappa: float, n: float, env: EnvironmentModel) -> float:
    """Gaussian-optimizer lower bound for the amplifier (nats).

    Implemented verbatim; the photon-number arguments carry a one-photon
    offset relative to direct two-mode-squeezer bookkeeping, which the
    consistency report quantifies rather than resolves.
    """
    _check_input_photon(n)
    n_e, s_e, n_th = env_summary(env)
    Amplifier(kappa)
    return (
        g_nats((kappa - 1.0) * n_th + kappa * (n + 1.0))
        - g_nats((kappa - 1.0) * n + kappa * (n_e + 1.0))
        - s_e
    )


def channel_bounds(channel: ChannelSpec, n: float, env: EnvironmentModel):
    """(q_u1, q_u2, q_l) in nats for either channel family."""
    if isinstance(channel, Attenuator):
        return (
            attenuator_q_u1(channel.tau, n, env),
            attenuator_q_u2(channel.tau, n, env),
            attenuator_q_l(channel.tau, n, env),
        )
    if isinstance(channel, Amplifier):
        return (
            amplifier_q_u1(channel.kappa, n, env),
            amplifier_q_u2(channel.kappa, n, env),
            amplifier_q_l(channel.kappa, n, env),
        )
    raise TypeError(f"unknown channel type {type(channel).__name__}")


def gaussian_oracle_available(env: EnvironmentModel) -> bool:
    return env.is_gaussian


def fock_oracle_available(env: EnvironmentModel) -> bool:
    return env.is_gaussian or isinstance(env, Fock)


@dataclass
class BoundsReport:
    """Evaluated bounds plus optional oracle values for one (channel, env, N).

    All capacity-valued fields are in ``units``. ``q_l`` keeps the raw
    (possibly negative) value; ``q_l_clamped`` is max(0, q_l). ``fock_diag``
    carries the Fock-oracle diagnostics when that oracle ran.
    """

    channel: ChannelSpec
    env: EnvironmentModel
    input_photon: float
    units: str
    q_u1: float
    q_u2: float
    q_l: float
    q_l_clamped: float
    oracle_gaussian: float | None = None
    oracle_fock: float | None = None
    fock_diag: object | None = None
    oracle_env: EnvironmentModel | None = None
    flags: tuple[str, ...] = field(default_factory=tuple)

    @property
    def min_upper(self) -> float:
        return min(self.q_u1, self.q_u2)


def _normalize_oracles(with_oracles) -> frozenset:
    if with_oracles is None:
        return frozenset()
    if isinstance(with_oracles, str):
        if with_oracles == "none":
            return frozenset()
        if with_oracles == "both":
            return frozenset({"gaussian", "fock"})
        with_oracles = {with_oracles}
    names = frozenset(with_oracles)
    unknown = names - {"gaussian", "fock"}
    if unknown:
        raise ValueError(f"unknown oracle names {sorted(unknown)}")
    return names


def bounds_report(
    channel: ChannelSpec,
    env: EnvironmentModel,
    n: float,
    units: str = "bits",
    with_oracles=(),
    fock_env: EnvironmentModel | None = None,
    fock_dim: int | None = None,
    tail_threshold: float | None = None,
) -> BoundsReport:
    """Evaluate the three bounds and the requested oracles at one point.

    ``fock_env`` substitutes a representable environment for the Fock oracle
    when the nominal one has no state-level realization; the oracle is then
    sandwich-checked against bounds evaluated on the substitute. Raises
    UnsupportedOracleError when a requested oracle cannot run at all, and
    propagates TruncationError from the Fock oracle.
    """
    oracles = _normalize_oracles(with_oracles)
    q_u1, q_u2, q_l = channel_bounds(channel, n, env)
    flags = []
    min_upper = min(q_u1, q_u2)
    if q_l > min_upper + BOUND_ORDER_TOL:
        flags.append(FLAG_LOWER_EXCEEDS_UPPER)

    oracle_gaussian = None
    oracle_fock = None
    fock_diag = None
    oracle_env = None

    if "gaussian" in oracles:
        if not gaussian_oracle_available(env):
            raise UnsupportedOracleError(
                f"Gaussian oracle is undefined for environment {env}; use the Fock oracle"
            )
        from .gaussian import GaussianChannelPoint, env_covariance, gaussian_coherent_information

        oracle_gaussian = gaussian_coherent_information(
            GaussianChannelPoint(channel, env_covariance(env), n)
        )
        tol = GAUSSIAN_SANDWICH_TOL_BITS * LN2
        if not (q_l - tol <= oracle_gaussian <= min_upper + tol):
            flags.append(FLAG_GAUSSIAN_ORACLE_OUTSIDE_BOUNDS)

    if "fock" in oracles:
        target_env = env
        if fock_env is not None and fock_env != env:
            target_env = fock_env
            flags.append(FLAG_ORACLE_ENV_SUBSTITUTED)
            oracle_env = fock_env
        if not fock_oracle_available(target_env):
            raise UnsupportedOracleError(
                f"Fock oracle cannot represent environment {target_env}"
            )
        from .fock import coherent_information_fock

        kwargs = {}
        if tail_threshold is not None:
            kwargs["tail_threshold"] = tail_threshold
        result = coherent_information_fock(channel, target_env, n, fock_dim, **kwargs)
        oracle_fock = result.i_c
        fock_diag = result
        if target_env is env:
            ref_l, ref_u = q_l, min_upper
        else:
            t_u1, t_u2, t_l = channel_bounds(channel, n, target_env)
            ref_l, ref_u = t_l, min(t_u1, t_u2)
        tol = FOCK_SANDWICH_TOL_BITS * LN2
        if not (ref_l - tol <= oracle_fock <= ref_u + tol):
            flags.append(FLAG_FOCK_ORACLE_OUTSIDE_BOUNDS)

    conv = lambda v: None if v is None else nats_to(v, units)
    return BoundsReport(
        channel=channel,
        env=env,
        input_photon=n,
        units=units,
        q_u1=nats_to(q_u1, units),
        q_u2=nats_to(q_u2, units),
        q_l=nats_to(q_l, units),
        q_l_clamped=nats_to(max(0.0, q_l), units),
        oracle_gaussian=conv(oracle_gaussian),
        oracle_fock=conv(oracle_fock),
        fock_diag=fock_diag,
        oracle_env=oracle_env,
        flags=tuple(flags),
    )
