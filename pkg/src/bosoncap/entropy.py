"""Thermal-state entropy function g and its inverse.

All entropies in this package are natural-log (nats) internally; bits are a
display conversion (divide by ln 2). g(x) is the von Neumann entropy of a
thermal state with mean photon number x.
"""

import math

LN2 = math.log(2.0)

# Below this, x*ln(x) underflows; the limit value is 0 anyway.
_XLOGX_FLOOR = 1e-300


def g_nats(x: float) -> float:
    """Entropy (nats) of a thermal state with mean photon number ``x``.

    g(x) = (1+x) ln(1+x) - x ln x, with g(0) = 0. Strictly increasing and
    concave on x >= 0.
    """
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"mean photon number must be finite and >= 0, got {x}")
    if x < _XLOGX_FLOOR:
        return 0.0
    return (1.0 + x) * math.log1p(x) - x * math.log(x)


def g_bits(x: float) -> float:
    """Entropy of a thermal state in bits."""
    return g_nats(x) / LN2


def g_inv(s: float, tol: float = 1e-12) -> float:
    """Mean photon number whose thermal entropy (nats) equals ``s``.

    Bisection on the monotone g: bracket [0, hi] with hi doubled until
    g(hi) >= s, then bisect until |g(x) - s| < tol.
    """
    s = float(s)
    if not math.isfinite(s) or s < 0.0:
        raise ValueError(f"entropy must be finite and >= 0, got {s}")
    if s == 0.0:
        return 0.0
    hi = 1.0
    while g_nats(hi) < s:
        hi *= 2.0
        if hi > 1e300:
            raise ValueError(f"entropy {s} out of representable range")
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        gm = g_nats(mid)
        if abs(gm - s) < tol:
            return mid
        if gm < s:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def nats_to(value: float, units: str) -> float:
    """Convert a nats-valued quantity to the requested units ('nats' or 'bits')."""
    if units == "nats":
        return value
    if units == "bits":
        return value / LN2
    raise ValueError(f"unknown units {units!r}, expected 'bits' or 'nats'")
