"""Channel and environment models.

A channel is an attenuator (beam splitter, transmissivity tau) or an amplifier
(two-mode squeezer, gain kappa). An environment is the single-mode state fed
into the idle port; the capacity bounds depend on it only through its mean
photon number N_E and von Neumann entropy S_E (nats).
"""

import math
from dataclasses import dataclass

from .entropy import g_nats, g_inv

#: Slack allowed when checking S_E <= g(N_E) (Gaussian states maximize entropy
#: at fixed energy, so larger S_E is unphysical).
ENTROPY_BOUND_TOL = 1e-12


def _check_finite(name, value):
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")


@dataclass(frozen=True)
class Attenuator:
    """Beam-splitter channel with transmissivity tau in [0, 1]."""

    tau: float

    def __post_init__(self):
        _check_finite("tau", self.tau)
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"transmissivity must lie in [0, 1], got {self.tau}")

    def __str__(self):
        return f"attenuator(tau={self.tau:g})"


@dataclass(frozen=True)
class Amplifier:
    """Two-mode-squeezer channel with gain kappa >= 1."""

    kappa: float

    def __post_init__(self):
        _check_finite("kappa", self.kappa)
        if self.kappa < 1.0:
            raise ValueError(f"gain must be >= 1, got {self.kappa}")

    def __str__(self):
        return f"amplifier(kappa={self.kappa:g})"


ChannelSpec = Attenuator | Amplifier


class EnvironmentModel:
    """Base for environment variants.

    Subclasses provide ``mean_photon`` (N_E) and ``entropy_nats`` (S_E).
    ``thermal_photon`` is the equivalent thermal occupation g^{-1}(S_E).
    """

    @property
    def mean_photon(self) -> float:
        raise NotImplementedError

    @property
    def entropy_nats(self) -> float:
        raise NotImplementedError

    @property
    def thermal_photon(self) -> float:
        return g_inv(self.entropy_nats)

    @property
    def is_gaussian(self) -> bool:
        return False


@dataclass(frozen=True)
class Thermal(EnvironmentModel):
    """Thermal state with mean photon number n_th."""

    n_th: float

    def __post_init__(self):
        _check_finite("n_th", self.n_th)
        if self.n_th < 0.0:
            raise ValueError(f"thermal photon number must be >= 0, got {self.n_th}")

    @property
    def mean_photon(self):
        return self.n_th

    @property
    def entropy_nats(self):
        return g_nats(self.n_th)

    @property
    def is_gaussian(self):
        return True

    def __str__(self):
        return f"thermal(nth={self.n_th:g})"


@dataclass(frozen=True)
class SqueezedThermal(EnvironmentModel):
    """Thermal state squeezed by parameter r (x quadrature anti-squeezed).

    Covariance (2*n_th+1)*diag(e^{2r}, e^{-2r}); squeezing raises the energy
    but not the entropy.
    """

    n_th: float
    r: float

    def __post_init__(self):
        _check_finite("n_th", self.n_th)
        _check_finite("r", self.r)
        if self.n_th < 0.0:
            raise ValueError(f"thermal photon number must be >= 0, got {self.n_th}")
        if self.r < 0.0:
            raise ValueError(f"squeezing parameter must be >= 0, got {self.r}")

    @property
    def mean_photon(self):
        return 0.5 * ((2.0 * self.n_th + 1.0) * math.cosh(2.0 * self.r) - 1.0)

    @property
    def entropy_nats(self):
        return g_nats(self.n_th)

    @property
    def is_gaussian(self):
        return True

    def __str__(self):
        return f"squeezed_thermal(nth={self.n_th:g},r={self.r:g})"


@dataclass(frozen=True)
class Fock(EnvironmentModel):
    """Photon-number eigenstate |n>; pure and non-Gaussian for n >= 1."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"Fock level must be a non-negative integer, got {self.n}")

    @property
    def mean_photon(self):
        return float(self.n)

    @property
    def entropy_nats(self):
        return 0.0

    def __str__(self):
        return f"fock(n={self.n})"


@dataclass(frozen=True)
class Generic(EnvironmentModel):
    """Environment known only through its energy and entropy.

    No state-level representation exists, so neither oracle applies; the bound
    formulas need nothing more than (N_E, S_E in nats).
    """

    n_e: float
    s_e: float

    def __post_init__(self):
        _check_finite("n_e", self.n_e)
        _check_finite("s_e", self.s_e)
        if self.n_e < 0.0:
            raise ValueError(f"mean photon number must be >= 0, got {self.n_e}")
        if self.s_e < 0.0:
            raise ValueError(f"entropy must be >= 0, got {self.s_e}")
        if self.s_e > g_nats(self.n_e) + ENTROPY_BOUND_TOL:
            raise ValueError(
                f"entropy {self.s_e} exceeds the maximum g(N_E)={g_nats(self.n_e)} "
                f"attainable at mean photon number {self.n_e}"
            )

    @property
    def mean_photon(self):
        return self.n_e

    @property
    def entropy_nats(self):
        return self.s_e

    def __str__(self):
        return f"generic(ne={self.n_e:g},se={self.s_e:g})"
