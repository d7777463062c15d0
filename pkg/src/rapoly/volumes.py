"""Lobachevskii function and closed-form Lobell volumes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from rapoly.config import verify_enabled
from rapoly.errors import InternalConsistencyError, NonFinite, NTooSmall
from rapoly.kernels import CLAUSEN_COEFFS, lobachevsky_array

# sum_{k>=1} 1/k^2
_ZETA2 = math.pi**2 / 6
_EPS = np.finfo(float).eps

CROSS_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class Volume:
    value: float
    error_bound: float

    def __add__(self, other: "Volume") -> "Volume":
        return Volume(self.value + other.value, self.error_bound + other.error_bound)


def _reduce(theta: float) -> float:
    """Representative of ``theta`` modulo pi in [-pi/2, pi/2)."""
    t = math.fmod(theta, math.pi)
    if t < 0:
        t += math.pi
    if t >= 0.5 * math.pi:
        t -= math.pi
    return t


def lobachevsky_series(theta: float) -> tuple[float, float]:
    """Series evaluation with a rigorous truncation bound.

    Uses ``Lambda(theta) = Cl_2(2 theta) / 2`` and the Bernoulli expansion
    ``Cl_2(x) = x - x log|x| + sum_n |B_2n| x^(2n+1) / (2n (2n+1)!)`` after
    reducing ``2 theta`` into [-pi, pi).  Since
    ``|B_2n| <= 2 zeta(2) (2n)! / (2 pi)^(2n)`` the neglected terms are bounded
    by a geometric series of ratio ``(x / 2 pi)^2 <= 1/4``.
    """
    if not math.isfinite(theta):
        raise NonFinite(f"Lobachevskii function needs a finite angle, got {theta}")
    x = 2.0 * _reduce(theta)
    if x == 0.0:
        return 0.0, 0.0
    x2 = x * x
    total = 0.0
    comp = 0.0
    power = x
    for c in CLAUSEN_COEFFS:
        power *= x2
        y = c * power - comp
        tmp = total + y
        comp = (tmp - total) - y
        total = tmp
    n = len(CLAUSEN_COEFFS) + 1
    ratio = x2 / (4 * math.pi**2)
    tail = 2 * _ZETA2 * abs(x) * ratio**n / ((2 * n) * (2 * n + 1)) / (1 - ratio)
    head = x - x * math.log(abs(x))
    rounding = 8 * _EPS * (abs(head) + abs(total) + 1.0)
    return 0.5 * (head + total), 0.5 * (tail + rounding)


def _smooth_part(u: float) -> float:
    # log(2 sin u / u), analytic on [0, pi/2]
    return math.log(2.0 * math.sin(u) / u)


def _g_integral(a: float, b: float) -> float:
    if b <= a:
        return 0.0
    val, _ = integrate.quad(_smooth_part, a, b, epsabs=1e-14, epsrel=1e-13, limit=200)
    return val


def _xlogx_minus_x(u: float) -> float:
    return u * math.log(u) - u if u > 0 else 0.0


def lobachevsky_quad(theta: float) -> float:
    """Adaptive quadrature of ``-int_0^theta log|2 sin t| dt``.

    The logarithmic singularities at multiples of pi are split off and
    integrated exactly; only the smooth factor ``log(2 sin u / u)`` goes
    through Gauss-Kronrod.  The range is cut at pi/2.
    """
    if not math.isfinite(theta):
        raise NonFinite(f"Lobachevskii function needs a finite angle, got {theta}")
    t = math.fmod(theta, math.pi)
    if t < 0:
        t += math.pi
    half = 0.5 * math.pi
    if t <= half:
        return -(_xlogx_minus_x(t) + _g_integral(0.0, t))
    # int_{pi/2}^{t} log(2 sin s) ds, substituting u = pi - s
    u = math.pi - t
    first = _xlogx_minus_x(half) + _g_integral(0.0, half)
    second = (_xlogx_minus_x(half) - _xlogx_minus_x(u)) + _g_integral(u, half)
    return -(first + second)


def lobachevsky(theta: float, *, verify: bool | None = None) -> float:
    """Lobachevskii function ``Lambda(theta) = -int_0^theta log|2 sin t| dt``.

    Returns the series value.  With ``verify`` (default: ``RAP_VERIFY``) the
    quadrature value is computed too and must agree within 1e-9.
    """
    value, _ = lobachevsky_series(theta)
    if verify if verify is not None else verify_enabled():
        other = lobachevsky_quad(theta)
        if abs(other - value) > CROSS_CHECK_TOL:
            raise InternalConsistencyError(
                f"Lobachevskii cross-check failed at {theta!r}: series {value!r}, quadrature {other!r}"
            )
    return value


def lobachevsky_vec(theta) -> np.ndarray:
    """Series evaluation over an array (numba kernel or numpy fallback)."""
    arr = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise NonFinite("Lobachevskii function needs finite angles")
    return lobachevsky_array(arr.ravel()).reshape(arr.shape)


def theta_n(n: float) -> float:
    """``pi/2 - arccos(1 / (2 cos(pi/n)))``, defined for ``n >= 5``."""
    if not n >= 5:
        raise NTooSmall(f"n must be at least 5, got {n}")
    return 0.5 * math.pi - math.acos(1.0 / (2.0 * math.cos(math.pi / n)))


def lobell_volume(n: int) -> Volume:
    """Closed-form hyperbolic volume of the Lobell polyhedron L(n)."""
    if not n >= 5:
        raise NTooSmall(f"Lobell polyhedra need n >= 5, got {n}")
    th = theta_n(n)
    step = math.pi / n
    args = (th, th, th + step, th - step, 2 * th - 0.5 * math.pi)
    signs = (1, 1, 1, 1, -1)
    total = 0.0
    bound = 0.0
    for s, a in zip(signs, args):
        val, err = lobachevsky_series(a)
        if verify_enabled():
            lobachevsky(a, verify=True)
        total += s * val
        bound += err
    value = 0.5 * n * total
    bound = 0.5 * n * (bound + 8 * _EPS * sum(abs(lobachevsky_series(a)[0]) for a in args))
    bound += 4 * _EPS * abs(value)
    return Volume(float(value), float(bound))
