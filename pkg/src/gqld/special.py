"""Self-contained special-function kernel.

Everything the distribution formulas consume: log-gamma, gamma of a complex
argument, digamma/trigamma, the Gauss hypergeometric series 2F1, and the
regularized incomplete beta function with its inverse.  Implemented locally
(stdlib + numpy only) so the rest of the package can be checked against
genuinely independent routes.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

__all__ = [
    "ConvergenceError",
    "ln_gamma",
    "ln_gamma_ratio",
    "gamma_complex",
    "digamma",
    "trigamma",
    "hyp2f1",
    "reg_inc_beta",
    "inv_reg_inc_beta",
]


class ConvergenceError(ArithmeticError):
    """A series, continued fraction, or quadrature exhausted its budget."""


def _require_finite(name: str, x: float) -> None:
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x!r}")


# --------------------------------------------------------------------------
# gamma family
# --------------------------------------------------------------------------

def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    _require_finite("x", x)
    if x <= 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def ln_gamma_ratio(x: float, d: float) -> float:
    """ln Gamma(x) - ln Gamma(x - d), stable when x is huge.

    Direct subtraction loses ~|ln Gamma(x)| * 1e-16 absolute accuracy; for
    large x a Stirling expansion of the difference is used instead, which
    matters when x = beta/(q-1) blows up as q -> 1.
    """
    if x <= 0.0 or x - d <= 0.0:
        raise ValueError("ln_gamma_ratio requires x > 0 and x - d > 0")
    if x < 1e5 or x - d < 0.5 * x:
        return math.lgamma(x) - math.lgamma(x - d)
    r = -math.log1p(-d / x)  # ln(x / (x - d)) without cancellation
    return (x - d - 0.5) * r + d * math.log(x) - d \
        + (1.0 / (12.0 * x) - 1.0 / (12.0 * (x - d)))


# Lanczos approximation, g = 7 with 9 coefficients.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_complex(z: complex) -> complex:
    """Gamma(z) for Re(z) > 0 via the Lanczos sum.

    The characteristic-function formulas only ever need the right half
    plane; arguments with Re(z) <= 0 are rejected.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"gamma_complex requires a finite argument, got {z!r}")
    if z.real <= 0.0:
        raise ValueError(f"gamma_complex requires Re(z) > 0, got {z!r}")
    if z.real < 0.5:
        # reflection keeps the Lanczos sum where it is accurate
        return math.pi / (cmath.sin(math.pi * z) * gamma_complex(1.0 - z))
    w = z - 1.0
    acc = complex(_LANCZOS[0], 0.0)
    for k in range(1, 9):
        acc += _LANCZOS[k] / (w + k)
    t = w + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * cmath.exp((w + 0.5) * cmath.log(t) - t) * acc


_DIGAMMA_SWITCH = 8.0


def digamma(x: float) -> float:
    """psi(x) = d/dx ln Gamma(x) for x > 0."""
    _require_finite("x", x)
    if x <= 0.0:
        raise ValueError(f"digamma requires x > 0, got {x}")
    acc = 0.0
    while x < _DIGAMMA_SWITCH:
        acc -= 1.0 / x
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    # asymptotic tail: ln x - 1/(2x) - sum B_2k / (2k x^(2k))
    tail = 1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (
        1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12)))))
    return acc + math.log(x) - 0.5 * inv - inv2 * tail


def trigamma(x: float) -> float:
    """psi'(x), the derivative of digamma, for x > 0."""
    _require_finite("x", x)
    if x <= 0.0:
        raise ValueError(f"trigamma requires x > 0, got {x}")
    acc = 0.0
    while x < _DIGAMMA_SWITCH:
        acc += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    tail = 1.0 / 6 - inv2 * (1.0 / 30 - inv2 * (1.0 / 42 - inv2 * (
        1.0 / 30 - inv2 * (5.0 / 66 - inv2 * (691.0 / 2730 - inv2 * 7.0 / 6)))))
    return acc + inv + 0.5 * inv2 + inv * inv2 * tail


# --------------------------------------------------------------------------
# Gauss hypergeometric 2F1
# --------------------------------------------------------------------------

_SERIES_TOL = 1e-15
_SERIES_MAX_TERMS = 10 ** 6


def _hyp2f1_series(a: float, b: float, c: float, z: float) -> float:
    term = 1.0
    total = 1.0
    small = 0
    for k in range(_SERIES_MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
        if abs(term) <= _SERIES_TOL * abs(total):
            small += 1
            if small >= 2 or term == 0.0:  # a terminating series stops exactly
                return total
        else:
            small = 0
    raise ConvergenceError(
        f"2F1 series failed to converge in {_SERIES_MAX_TERMS} terms "
        f"(a={a}, b={b}, c={c}, z={z})")


def hyp2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric 2F1(a, b; c; z) for real z <= 1.

    Direct series for 0 <= z < 1; every negative argument goes through the
    Pfaff transformation (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), which maps
    z < 0 into (0, 1) -- the alternating direct series loses all precision
    on (-1, 0) once b is large, so the transformed series is used there
    too.  At z = 1 the gamma-ratio evaluation applies when c - a - b > 0.
    """
    for name, v in (("a", a), ("b", b), ("c", c), ("z", z)):
        _require_finite(name, v)
    if c <= 0.0 and c == math.floor(c):
        raise ValueError(f"2F1 pole: c must not be a non-positive integer, got c={c}")
    if z > 1.0:
        raise ValueError(f"2F1 argument must satisfy z <= 1, got z={z}")
    if z == 1.0:
        if c - a - b <= 0.0:
            raise ConvergenceError(f"2F1 diverges at z=1 for c-a-b={c - a - b}")
        return math.exp(ln_gamma(c) + ln_gamma(c - a - b)
                        - ln_gamma(c - a) - ln_gamma(c - b))
    if z < 0.0:
        return (1.0 - z) ** (-a) * _hyp2f1_series(a, c - b, c, z / (z - 1.0))
    return _hyp2f1_series(a, b, c, z)


# --------------------------------------------------------------------------
# regularized incomplete beta
# --------------------------------------------------------------------------

_CF_TINY = 1e-300
_CF_TOL = 1e-15
_CF_MAX_ITER = 1000


def _beta_cf(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the standard continued fraction
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_TOL:
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction stalled (a={a}, b={b}, x={x})")


def _ln_beta(p: float, q: float) -> float:
    return math.lgamma(p) + math.lgamma(q) - math.lgamma(p + q)


def reg_inc_beta(x: float, p: float, q: float) -> float:
    """Regularized incomplete beta I_x(p, q) for x in [0, 1], p, q > 0.

    Continued fraction with the (p+1)/(p+q+2) switch; the mirrored branch
    uses I_x(p, q) = 1 - I_{1-x}(q, p) so both sides converge.
    """
    for name, v in (("x", x), ("p", p), ("q", q)):
        _require_finite(name, v)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"reg_inc_beta requires 0 <= x <= 1, got x={x}")
    if p <= 0.0 or q <= 0.0:
        raise ValueError(f"reg_inc_beta requires p, q > 0, got p={p}, q={q}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = p * math.log(x) + q * math.log1p(-x) - _ln_beta(p, q)
    if x < (p + 1.0) / (p + q + 2.0):
        return math.exp(ln_front) * _beta_cf(p, q, x) / p
    return 1.0 - math.exp(ln_front) * _beta_cf(q, p, 1.0 - x) / q


def _beta_cf_vec(a: float, b: float, x: np.ndarray) -> np.ndarray:
    # vector Lentz; all lanes iterate until the slowest converges (the
    # fraction is stable under extra iterations)
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    np.copyto(d, _CF_TINY, where=np.abs(d) < _CF_TINY)
    d = 1.0 / d
    h = d.copy()
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        np.copyto(d, _CF_TINY, where=np.abs(d) < _CF_TINY)
        c = 1.0 + aa / c
        np.copyto(c, _CF_TINY, where=np.abs(c) < _CF_TINY)
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        np.copyto(d, _CF_TINY, where=np.abs(d) < _CF_TINY)
        c = 1.0 + aa / c
        np.copyto(c, _CF_TINY, where=np.abs(c) < _CF_TINY)
        d = 1.0 / d
        delta = d * c
        h *= delta
        if np.max(np.abs(delta - 1.0)) < _CF_TOL:
            return h
    raise ConvergenceError(
        f"vector incomplete beta continued fraction stalled (a={a}, b={b})")


def _reg_inc_beta_vec(x: np.ndarray, p: float, q: float) -> np.ndarray:
    """Array version of reg_inc_beta for fixed shapes (internal fast path)."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    zero = x == 0.0
    one = x == 1.0
    out[zero] = 0.0
    out[one] = 1.0
    interior = ~(zero | one)
    xi = x[interior]
    ln_front = p * np.log(xi) + q * np.log1p(-xi) - _ln_beta(p, q)
    lower = xi < (p + 1.0) / (p + q + 2.0)
    vals = np.empty_like(xi)
    if np.any(lower):
        xl = xi[lower]
        vals[lower] = np.exp(ln_front[lower]) * _beta_cf_vec(p, q, xl) / p
    if np.any(~lower):
        xu = xi[~lower]
        vals[~lower] = 1.0 - np.exp(ln_front[~lower]) * _beta_cf_vec(q, p, 1.0 - xu) / q
    out[interior] = vals
    return out


def inv_reg_inc_beta(prob: float, p: float, q: float) -> float:
    """Solve I_x(p, q) = prob for x, by bisection plus Newton polishing.

    Works on the smaller tail (mirrored via the symmetry identity) so the
    root is never squeezed against 1; roots below linear-bisection
    resolution are bracketed in log space first.  Newton with the exact
    beta density then converges to 1e-12 in probability space.
    """
    x, mirrored = _inv_reg_inc_beta_tail(prob, p, q)
    return 1.0 - x if mirrored else x


def _inv_reg_inc_beta_tail(prob: float, p: float, q: float) -> tuple[float, bool]:
    """Root of I_x(p, q) = prob as a small-tail coordinate.

    Returns (u, mirrored): the root is u itself, or 1 - u when mirrored.
    Keeping u separate matters when the root hugs 1 closer than double
    spacing allows; callers needing ln(x) and ln(1-x) stay exact.
    """
    _require_finite("prob", prob)
    if not 0.0 < prob < 1.0:
        raise ValueError(f"inv_reg_inc_beta requires 0 < prob < 1, got {prob}")
    if p <= 0.0 or q <= 0.0:
        raise ValueError(f"inv_reg_inc_beta requires p, q > 0, got p={p}, q={q}")
    if prob > 0.5:
        u, _ = _inv_reg_inc_beta_tail(1.0 - prob, q, p)
        return u, True
    lo, hi = 0.0, 1.0
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if reg_inc_beta(mid, p, q) < prob:
            lo = mid
        else:
            hi = mid
    if lo == 0.0:
        # the root sits below linear resolution: bracket its logarithm
        llo, lhi = math.log(1e-320), math.log(hi)
        for _ in range(80):
            mid = 0.5 * (llo + lhi)
            if reg_inc_beta(math.exp(mid), p, q) < prob:
                llo = mid
            else:
                lhi = mid
        lo, hi = math.exp(llo), math.exp(lhi)
    x = 0.5 * (lo + hi)
    ln_b = _ln_beta(p, q)
    for _ in range(100):
        f = reg_inc_beta(x, p, q) - prob
        if abs(f) <= 1e-12:
            return x, False
        if f > 0.0:
            hi = x
        else:
            lo = x
        dens = math.exp((p - 1.0) * math.log(x) + (q - 1.0) * math.log1p(-x) - ln_b)
        if dens > 0.0:
            step = x - f / dens
        else:
            step = 0.5 * (lo + hi)
        if not lo < step < hi:
            step = 0.5 * (lo + hi)
        if step == x:
            return x, False
        x = step
    return x, False
