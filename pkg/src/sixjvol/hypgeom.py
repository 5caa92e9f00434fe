"""Hyperbolic volumes of truncated tetrahedra.

Two independent routes are provided:

* ``volume_lob``: the saddle-point value F(z0) plus four triangle terms,
  written entirely with the Lobachevsky function;
* ``volume_my``: the Murakami-Yano/Ushijima dilogarithm formula
  Im(U(z+, T) + Delta_hat(T)).

For a hyperbolic-type theta they must agree via
volume_lob(theta) = 2 * volume_my(T(|2 pi (theta - 1/2)|)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from scipy.special import zeta

from sixjvol.errors import (
    ClassificationError,
    DegeneracyError,
    DomainError,
    TetraExistenceError,
    ValidationError,
)
from sixjvol.sixj import TRIPLES, ThetaSix, classify_theta

_NTERMS = 30
# zeta(2k) / (k (2k+1) (2 pi)^2k): Clausen series coefficients, |theta| <= pi
_CL2 = [float(zeta(2 * k)) / (k * (2 * k + 1) * (2 * math.pi) ** (2 * k)) for k in range(1, _NTERMS + 1)]
# B_n / (n+1)! for n = 0, 1, 2, ...; odd n > 1 vanish
_BERN = [1.0, -0.25]
for _k in range(1, _NTERMS + 1):
    _BERN.append((-1) ** (_k + 1) * 2 * float(zeta(2 * _k)) / ((2 * _k + 1) * (2 * math.pi) ** (2 * _k)))
    _BERN.append(0.0)

PI2_6 = math.pi**2 / 6


def clausen(theta: float) -> float:
    """Clausen function Cl2(theta) = sum sin(k theta) / k^2."""
    t = math.remainder(theta, 2 * math.pi)
    if t == 0.0:
        return 0.0
    t2 = t * t
    acc = 0.0
    p = t
    for c in _CL2:
        p *= t2
        acc += c * p
    return t - t * math.log(abs(t)) + acc


def lobachevsky(x: float) -> float:
    """Lobachevsky function -int_0^x log|2 sin s| ds.

    Evaluated as (1/2) Cl2(2x) after reducing x modulo pi, with the
    Fourier series summed through its zeta-accelerated power expansion.
    """
    return 0.5 * clausen(2.0 * math.remainder(x, math.pi))


def vol_oct() -> float:
    """Volume of the regular ideal octahedron, 8 Lambda(pi/4)."""
    return 8.0 * lobachevsky(math.pi / 4)


def dilog(z: complex) -> complex:
    """Principal dilogarithm Li2(z) on the closed unit disc."""
    z = complex(z)
    if abs(z) > 1 + 1e-12:
        raise DomainError(f"dilog argument {z} outside the unit disc")
    if z == 0:
        return 0j
    if z == 1:
        return complex(PI2_6)
    if z.real > 0.5:
        # reflection; |1 - z| < 1 and Re(1 - z) < 1/2 here
        return PI2_6 - cmath.log(z) * cmath.log(1 - z) - _dilog_bernoulli(1 - z)
    return _dilog_bernoulli(z)


def _dilog_bernoulli(z: complex) -> complex:
    # Li2(z) = sum_n B_n w^(n+1) / (n+1)!, w = -log(1 - z), |w| < 2 pi
    w = -cmath.log(1 - z)
    w2 = w * w
    out = w - 0.25 * w2
    p = w
    for c in _BERN[2::2]:
        p *= w2
        term = c * p
        out += term
        if abs(term) < 1e-18 * abs(out):
            break
    return out


def v_triangle(t0: float, t1: float, t2: float) -> float:
    lob = lobachevsky
    pi = math.pi
    return (
        lob(pi * (t0 + t1 + t2))
        - lob(pi * (t0 + t1 - t2))
        - lob(pi * (t0 + t2 - t1))
        - lob(pi * (t1 + t2 - t0))
    )


# --- saddle point ----------------------------------------------------------


@dataclass(frozen=True)
class SaddleData:
    theta: ThetaSix
    z0: float
    F_at_z0: float
    v_sum: float

    @property
    def volume(self) -> float:
        return self.F_at_z0 + self.v_sum


def _as_hyperbolic(theta) -> ThetaSix:
    th = theta if isinstance(theta, ThetaSix) else classify_theta(theta)
    if not th.is_hyperbolic:
        raise ClassificationError(f"theta {th.theta} is {th.cls.value}, not hyperbolic-type")
    return th


def saddle_interval(th: ThetaSix) -> tuple[float, float]:
    return th.T, min(2 * math.pi, th.Q_min)


def log_g(x: float, th: ThetaSix) -> float:
    """log of g(x) = sin(2pi - x) prod sin(Q_j - x) / prod sin(x - T_i)."""
    num = math.log(math.sin(2 * math.pi - x)) + sum(math.log(math.sin(q - x)) for q in th.Q_j)
    den = sum(math.log(math.sin(x - t)) for t in th.T_i)
    return num - den


def F_saddle(x: float, th: ThetaSix) -> float:
    lob = lobachevsky
    return 2.0 * (
        lob(2 * math.pi - x)
        + sum(lob(q - x) for q in th.Q_j)
        + sum(lob(x - t) for t in th.T_i)
    )


def solve_z0(theta, tol: float = 1e-12, max_iter: int = 200) -> SaddleData:
    """Unique root of g = 1 on (T, min(2 pi, Q_min)), by bisection on log g.

    log g decreases strictly from +inf to -inf on the interval, so
    bisection cannot fail.
    """
    th = _as_hyperbolic(theta)
    lo, hi = saddle_interval(th)
    lo += 1e-9
    hi -= 1e-9
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if log_g(mid, th) > 0:
            lo = mid
        else:
            hi = mid
    z0 = 0.5 * (lo + hi)
    v_sum = sum(v_triangle(*(th.theta[i] for i in tri)) for tri in TRIPLES)
    return SaddleData(th, z0, F_saddle(z0, th), v_sum)


def volume_lob(theta) -> float:
    """F(z0) + sum of the four v terms; equals 2 Vol(T(|2 pi (theta - 1/2)|))."""
    return solve_z0(theta).volume


# --- Murakami-Yano ----------------------------------------------------------


@dataclass(frozen=True)
class TruncTetra:
    """Dihedral angles alpha_0..alpha_5; (alpha_i, alpha_{i+3}) are opposite edges."""

    alpha: tuple[float, ...]

    def __post_init__(self):
        a = tuple(float(x) for x in self.alpha)
        object.__setattr__(self, "alpha", a)
        if len(a) != 6:
            raise ValidationError(f"need six dihedral angles, got {len(a)}")
        if any(not (0.0 <= x < math.pi) for x in a):
            raise ValidationError(f"dihedral angles must lie in [0, pi): {a}")

    @property
    def A(self) -> tuple[complex, ...]:
        return tuple(cmath.exp(1j * x) for x in self.alpha)

    @property
    def exists(self) -> bool:
        return all(sum(self.alpha[i] for i in tri) < math.pi for tri in TRIPLES)

    def four_products(self) -> tuple[complex, ...]:
        A = self.A
        return (1 + 0j, A[0] * A[1] * A[3] * A[4], A[0] * A[2] * A[3] * A[5], A[2] * A[1] * A[5] * A[4])

    def vertex_products(self) -> tuple[complex, ...]:
        A = self.A
        return tuple(A[i] * A[j] * A[k] for i, j, k in TRIPLES)


def tetra_exists(alpha: Sequence[float]) -> bool:
    return TruncTetra(tuple(alpha)).exists


def U_of_z(z: complex, T: TruncTetra) -> complex:
    plus = sum(dilog(z * e) for e in T.four_products())
    minus = sum(dilog(-z * f) for f in T.vertex_products())
    return 0.5 * (plus - minus)


def _delta_hat_face(a: complex, b: complex, c: complex) -> complex:
    la, lb, lc = cmath.log(a), cmath.log(b), cmath.log(c)
    return -0.25 * (
        dilog(-a * b / c)
        + dilog(-b * c / a)
        + dilog(-a * c / b)
        + dilog(-1 / (a * b * c))
        + la * la
        + lb * lb
        + lc * lc
    )


def delta_hat(T: TruncTetra) -> complex:
    A = T.A
    L = [cmath.log(x) for x in A]
    faces = sum(_delta_hat_face(*(A[i] for i in tri)) for tri in TRIPLES)
    return faces + 0.5 * (L[0] * L[3] + L[1] * L[4] + L[2] * L[5])


def _esym(xs: Sequence[complex]) -> tuple[complex, complex, complex]:
    e1 = sum(xs)
    e2 = sum(xs[i] * xs[j] for i in range(4) for j in range(i + 1, 4))
    e3 = sum(xs[i] * xs[j] * xs[k] for i in range(4) for j in range(i + 1, 4) for k in range(j + 1, 4))
    return e1, e2, e3


def critical_points(T: TruncTetra) -> tuple[complex, complex]:
    """The two non-trivial critical points of U(z, T), unordered.

    prod(1 - z e_i) = prod(1 + z f_j) loses its constant and quartic
    terms; dividing by z leaves a quadratic.
    """
    s1, s2, s3 = _esym(T.four_products())
    t1, t2, t3 = _esym(T.vertex_products())
    a = s3 + t3
    b = -(s2 - t2)
    c = s1 + t1
    scale = max(abs(a), abs(b), abs(c))
    disc = b * b - 4 * a * c
    if abs(a) < 1e-12 * scale or abs(disc) < 1e-20 * scale * scale:
        raise DegeneracyError(f"degenerate critical-point quadratic for alpha={T.alpha}")
    root = cmath.sqrt(disc)
    # pick the sign avoiding cancellation, then Vieta
    qq = -0.5 * (b + root if (b.conjugate() * root).real >= 0 else b - root)
    return qq / a, c / qq


def solve_z_pm(T: TruncTetra) -> tuple[complex, complex]:
    """Critical points (z_plus, z_minus) of U(z, T).

    Both roots lie on the unit circle but need not be complex conjugate;
    for larger angles both can sit in the upper half plane.  z_plus is the
    root continuing z = i from the ideal octahedron, recognised by
    Im(U(z, T) + Delta_hat(T)) > 0.
    """
    r1, r2 = critical_points(T)
    return _order_roots(r1, r2, T, delta_hat(T))


def _order_roots(r1: complex, r2: complex, T: TruncTetra, dh: complex) -> tuple[complex, complex]:
    if (U_of_z(r1, T) + dh).imag >= (U_of_z(r2, T) + dh).imag:
        return r1, r2
    return r2, r1


@dataclass(frozen=True)
class MYVolume:
    volume: float
    volume_minus: float
    z_plus: complex
    z_minus: complex


def volume_my_detail(T: TruncTetra, agree_tol: float = 1e-9) -> MYVolume:
    if not T.exists:
        raise TetraExistenceError(f"no truncated tetrahedron with angles {T.alpha}")
    dh = delta_hat(T)
    zp, zm = _order_roots(*critical_points(T), T, dh)
    vp = (U_of_z(zp, T) + dh).imag
    vm = -(U_of_z(zm, T) + dh).imag
    if abs(vp - vm) > agree_tol:
        raise DomainError(f"z+ and z- volumes disagree: {vp} vs {vm}")
    return MYVolume(vp, vm, zp, zm)


def volume_my(T) -> float:
    """Volume of the truncated tetrahedron, Im(U(z+, T) + Delta_hat(T))."""
    if not isinstance(T, TruncTetra):
        T = TruncTetra(tuple(T))
    return volume_my_detail(T).volume


def dblock_volume(u: Sequence[float]) -> float:
    """Volume of the D-block D(u): two copies of T(u/2) glued along their faces."""
    u = tuple(float(x) for x in u)
    if len(u) != 6 or any(x < 0 for x in u):
        raise ValidationError(f"need six nonnegative cone angles, got {u}")
    if any(x >= 2 * math.pi for x in u):
        raise TetraExistenceError(f"cone angles must be below 2 pi: {u}")
    T = TruncTetra(tuple(x / 2 for x in u))
    if not T.exists:
        raise TetraExistenceError(f"no truncated tetrahedron with angles u/2 = {T.alpha}")
    return 2.0 * volume_my(T)


def tetra_from_theta(theta) -> TruncTetra:
    th = theta if isinstance(theta, ThetaSix) else classify_theta(theta)
    return TruncTetra(th.angles())
