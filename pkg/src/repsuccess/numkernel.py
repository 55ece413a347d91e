"""Scalar numerics: normal distribution, adaptive quadrature, root finding.

Everything here works on plain Python floats. The normal CDF is built on
:func:`math.erfc`, which keeps full relative precision in both tails; the
quantile uses Wichura's AS 241 rational approximation followed by one Newton
step against that CDF.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Tuple

from .errors import BracketError, ConvergenceError, DomainError, NoRealRootError

__all__ = [
    "QuadratureResult",
    "normal_cdf",
    "normal_sf",
    "normal_pdf",
    "normal_quantile",
    "normal_isf",
    "integrate",
    "find_root",
    "solve_quadratic_stable",
]

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _check_finite(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


def normal_cdf(x: float) -> float:
    """Standard normal CDF Phi(x)."""
    x = _check_finite(x)
    return 0.5 * math.erfc(-x / _SQRT2)


def normal_sf(x: float) -> float:
    """Upper tail 1 - Phi(x), accurate for large positive ``x``."""
    x = _check_finite(x)
    return 0.5 * math.erfc(x / _SQRT2)


def normal_pdf(x: float) -> float:
    x = _check_finite(x)
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


# AS 241 (PPND16) coefficients.
_A = (3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3)
_C = (1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _poly(coefs, x):
    acc = 0.0
    for c in reversed(coefs):
        acc = acc * x + c
    return acc


def _ppnd16(p: float, tail: float) -> float:
    """AS 241 for lower-tail ``p``; ``tail`` is min(p, 1 - p) computed exactly."""
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        return q * _poly(_A, r) / _poly(_B, r)
    r = math.sqrt(-math.log(tail))
    if r <= 5.0:
        r -= 1.6
        val = _poly(_C, r) / _poly(_D, r)
    else:
        r -= 5.0
        val = _poly(_E, r) / _poly(_F, r)
    return -val if q < 0 else val


def _check_open_unit(p: float) -> float:
    p = float(p)
    if not (0.0 < p < 1.0):
        raise DomainError(f"probability must lie strictly inside (0, 1), got {p!r}")
    return p


def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF, Phi^{-1}(p)."""
    p = _check_open_unit(p)
    if p == 0.5:
        return 0.0
    if p < 0.5:
        x = _ppnd16(p, p)
        pdf = normal_pdf(x)
        if pdf > 0.0:
            x -= (normal_cdf(x) - p) / pdf
        return x
    return normal_isf(1.0 - p)


def normal_isf(p: float) -> float:
    """Inverse survival function: the z with 1 - Phi(z) = p.

    Preferred over ``normal_quantile(1 - p)`` for small ``p`` because the
    subtraction ``1 - p`` loses digits.
    """
    p = _check_open_unit(p)
    if p == 0.5:
        return 0.0
    if p < 0.5:
        x = -_ppnd16(p, p)
        pdf = normal_pdf(x)
        if pdf > 0.0:
            x += (normal_sf(x) - p) / pdf
        return x
    return -normal_isf(1.0 - p)


# Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK qk15).
_XGK = (0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0)
_WGK = (0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714)
_WG = (0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
       0.381830050505118944950369775488975, 0.417959183673469387755102040816327)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int


def _gk15(f: Callable[[float], float], a: float, b: float) -> Tuple[float, float]:
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    kronrod = fc * _WGK[7]
    gauss = fc * _WG[3]
    for j in range(7):
        dx = half * _XGK[j]
        pair = f(center - dx) + f(center + dx)
        kronrod += _WGK[j] * pair
        if j % 2 == 1:
            gauss += _WG[j // 2] * pair
    kronrod *= half
    gauss *= half
    return kronrod, abs(kronrod - gauss)


def integrate(
    f: Callable[[float], float],
    lower: float,
    upper: float,
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-9,
    max_evaluations: int = 1_000_000,
) -> QuadratureResult:
    """Globally adaptive Gauss-Kronrod (7, 15) quadrature on ``[lower, upper]``.

    The panel with the largest error estimate is bisected until the summed
    error estimate drops below ``max(abs_tol, rel_tol * |value|)``.

    Raises
    ------
    ConvergenceError
        If the evaluation budget is exhausted first. The exception carries the
        best estimate and its error estimate.
    """
    lower = _check_finite(lower, "lower")
    upper = _check_finite(upper, "upper")
    if not lower < upper:
        raise DomainError(f"need lower < upper, got [{lower}, {upper}]")
    if abs_tol <= 0 or rel_tol <= 0:
        raise DomainError("tolerances must be positive")

    value, err = _gk15(f, lower, upper)
    evaluations = 15
    # max-heap on error via negated keys; the counter breaks ties deterministically
    heap = [(-err, 0, lower, upper, value)]
    counter = 1
    total_err = err
    while total_err > max(abs_tol, rel_tol * abs(value)):
        if evaluations + 30 > max_evaluations:
            raise ConvergenceError(
                f"quadrature did not converge within {max_evaluations} evaluations "
                f"(estimate {value!r}, error {total_err:.3g})",
                best_estimate=value,
                abs_error_estimate=total_err,
            )
        neg_err, _, a, b, panel_value = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not a < mid < b:
            # panel cannot be split in floating point; accept what we have
            heapq.heappush(heap, (neg_err, counter, a, b, panel_value))
            break
        left, left_err = _gk15(f, a, mid)
        right, right_err = _gk15(f, mid, b)
        evaluations += 30
        value += left + right - panel_value
        total_err += left_err + right_err + neg_err
        heapq.heappush(heap, (-left_err, counter, a, mid, left))
        heapq.heappush(heap, (-right_err, counter + 1, mid, b, right))
        counter += 2
        if counter % 128 == 1:
            # re-sum to stop drift from repeated incremental updates
            value = math.fsum(item[4] for item in heap)
            total_err = math.fsum(-item[0] for item in heap)
    value = math.fsum(item[4] for item in heap)
    total_err = math.fsum(-item[0] for item in heap)
    return QuadratureResult(value=value, abs_error_estimate=total_err, evaluations=evaluations)


def find_root(
    f: Callable[[float], float],
    bracket_low: float,
    bracket_high: float,
    x_tol: float = 1e-10,
    max_iter: int = 200,
) -> float:
    """Brent's method: inverse quadratic / secant steps safeguarded by bisection.

    ``f(bracket_low)`` and ``f(bracket_high)`` must not have the same sign.
    """
    a, b = float(bracket_low), float(bracket_high)
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise BracketError(
            f"f has the same sign at both ends of [{a}, {b}] (f={fa:.3g}, {fb:.3g})"
        )
    c, fc = a, fa
    d = e = b - a
    eps = 2.0 * 2.220446049250313e-16
    for _ in range(max_iter):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = eps * abs(b) + 0.5 * x_tol
        m = 0.5 * (c - b)
        if abs(m) <= tol or fb == 0.0:
            return b
        if abs(e) >= tol and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = m
        else:
            d = e = m
        a, fa = b, fb
        b += d if abs(d) > tol else math.copysign(tol, m)
        fb = f(b)
    raise ConvergenceError(f"root finding did not converge in {max_iter} iterations", best_estimate=b)


def solve_quadratic_stable(a: float, b: float, c_coef: float) -> Tuple[float, float]:
    """Real roots of ``a x^2 + b x + c_coef``, ascending.

    The larger-magnitude root comes from ``q = -(b + sign(b) sqrt(disc)) / 2``
    and the other from the product ``c_coef / q``, which avoids cancellation.
    ``a == 0`` falls back to the linear root, returned twice.
    """
    a, b, c_coef = float(a), float(b), float(c_coef)
    if a == 0.0:
        if b == 0.0:
            raise NoRealRootError("degenerate equation: a = b = 0")
        x = -c_coef / b
        return x, x
    disc = b * b - 4.0 * a * c_coef
    if disc < 0.0:
        raise NoRealRootError(f"negative discriminant {disc!r}")
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    if q == 0.0:
        return 0.0, 0.0
    r1, r2 = q / a, c_coef / q
    return (r1, r2) if r1 <= r2 else (r2, r1)
