"""Admissibility, classification of real 6-tuples, and 6j-symbols at q_n.

Half-integers are stored doubled, as plain ints, so parity checks stay exact.
Entries are ordered (b0, b1, b2, b3, b4, b5) with opposite pairs (b0, b3),
(b1, b4), (b2, b5).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sixjvol.errors import AdmissibilityError, ClassificationError, DomainError, TableRangeError
from sixjvol.rootval import (
    INDETERMINATE,
    LaurentLead,
    SineTable,
    lead_add,
    lead_div,
    lead_mul,
    lead_prod,
    lead_sqrt_mag,
    qfact_lead,
    qint_lead,
)

TRIPLES = ((0, 1, 2), (0, 4, 5), (3, 1, 5), (3, 4, 2))
SQUARES = ((0, 3, 1, 4), (0, 3, 2, 5), (1, 4, 2, 5))

BOUNDARY_TOL = 1e-9


def doubled(x) -> int:
    """2x as an int; x must be a nonnegative half-integer."""
    d = Fraction(x) * 2
    if d.denominator != 1:
        raise AdmissibilityError(f"{x} is not a half-integer")
    if d < 0:
        raise AdmissibilityError(f"{x} is negative")
    return int(d)


def _admissible_doubled(B0: int, B1: int, B2: int) -> bool:
    return (
        B0 + B1 >= B2
        and B0 + B2 >= B1
        and B1 + B2 >= B0
        and (B0 + B1 + B2) % 2 == 0
    )


def admissible_triple(b0, b1, b2) -> bool:
    return _admissible_doubled(doubled(b0), doubled(b1), doubled(b2))


@dataclass(frozen=True)
class AdmissibleSix:
    """An admissible 6-tuple of half-integers, stored as doubled integers ``b2``."""

    b2: tuple[int, ...]

    def __post_init__(self):
        b2 = tuple(int(x) for x in self.b2)
        object.__setattr__(self, "b2", b2)
        if len(b2) != 6:
            raise AdmissibilityError(f"need six entries, got {len(b2)}")
        if any(x < 0 for x in b2):
            raise AdmissibilityError(f"negative entry in {self.b}")
        for tri in TRIPLES:
            if not _admissible_doubled(*(b2[i] for i in tri)):
                vals = tuple(str(self.b[i]) for i in tri)
                raise AdmissibilityError(f"triple {tri} = ({', '.join(vals)}) is not admissible")

    @classmethod
    def from_halves(cls, b: Sequence) -> AdmissibleSix:
        return cls(tuple(doubled(x) for x in b))

    @property
    def b(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.b2)

    @property
    def triangles(self) -> tuple[int, ...]:
        return tuple(sum(self.b2[i] for i in tri) // 2 for tri in TRIPLES)

    @property
    def squares(self) -> tuple[int, ...]:
        return tuple(sum(self.b2[i] for i in sq) // 2 for sq in SQUARES)

    @property
    def max_factorial_arg(self) -> int:
        return max(min(self.squares), max(self.triangles)) + 1


def is_admissible_six(b2: Sequence[int]) -> bool:
    if len(b2) != 6 or any(x < 0 for x in b2):
        return False
    return all(_admissible_doubled(*(b2[i] for i in tri)) for tri in TRIPLES)


class ThetaClass(enum.Enum):
    NOT_R_ADMISSIBLE = "not-R-admissible"
    RT = "RT-type"
    HYPERBOLIC = "hyperbolic-type"
    OTHER = "R-admissible-other"


@dataclass(frozen=True)
class ThetaSix:
    theta: tuple[float, ...]
    cls: ThetaClass
    T_i: tuple[float, ...] = field(init=False)
    Q_j: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        th = self.theta
        object.__setattr__(self, "T_i", tuple(math.pi * sum(th[i] for i in t) for t in TRIPLES))
        object.__setattr__(self, "Q_j", tuple(math.pi * sum(th[i] for i in s) for s in SQUARES))

    @property
    def T(self) -> float:
        return max(self.T_i)

    @property
    def Q_min(self) -> float:
        return min(self.Q_j)

    @property
    def is_hyperbolic(self) -> bool:
        return self.cls is ThetaClass.HYPERBOLIC

    def angles(self) -> tuple[float, ...]:
        """Dihedral angles |2 pi (theta_i - 1/2)| of the associated truncated tetrahedron."""
        return tuple(abs(2 * math.pi * (t - 0.5)) for t in self.theta)


def classify_theta(theta: Sequence[float]) -> ThetaSix:
    th = tuple(float(t) for t in theta)
    if len(th) != 6:
        raise ClassificationError(f"need six entries, got {len(th)}")
    if any(not (0.0 <= t <= 1.0) for t in th):
        raise ClassificationError(f"entries must lie in [0, 1]: {th}")
    triples = [tuple(th[i] for i in tri) for tri in TRIPLES]

    def diffs(x, y, z):
        return (x + y - z, x + z - y, y + z - x)

    if not all(min(diffs(*t)) > 0 for t in triples):
        return ThetaSix(th, ThetaClass.NOT_R_ADMISSIBLE)
    eps = BOUNDARY_TOL
    if all(1 + eps < sum(t) < 2 - eps and all(eps < d < 1 - eps for d in diffs(*t)) for t in triples):
        return ThetaSix(th, ThetaClass.HYPERBOLIC)
    if all(x < 0.5 for x in th) and all(sum(t) < 1 for t in triples):
        return ThetaSix(th, ThetaClass.RT)
    return ThetaSix(th, ThetaClass.OTHER)


def _check_range(table: SineTable, needed: int) -> None:
    if needed > table.max_arg:
        raise TableRangeError(
            f"factorial argument {needed} exceeds table range {table.max_arg} for n={table.n}"
        )


def _delta_sq_doubled(B0: int, B1: int, B2: int, table: SineTable) -> LaurentLead:
    if not _admissible_doubled(B0, B1, B2):
        raise AdmissibilityError(f"triple ({B0}/2, {B1}/2, {B2}/2) is not admissible")
    s = (B0 + B1 + B2) // 2
    _check_range(table, s + 1)
    # [a]![b]![c]!/[s+1]! = {1} {a}!{b}!{c}!/{s+1}! since a + b + c = s
    num = lead_prod(
        (
            qint_lead(1, table.n),
            qfact_lead((B0 + B1 - B2) // 2, table),
            qfact_lead((B0 + B2 - B1) // 2, table),
            qfact_lead((B1 + B2 - B0) // 2, table),
        )
    )
    return lead_div(num, qfact_lead(s + 1, table))


def delta_sq_lead(b0, b1, b2, table: SineTable) -> LaurentLead:
    """Leading term of Delta(b0, b1, b2)^2 at q_n."""
    return _delta_sq_doubled(doubled(b0), doubled(b1), doubled(b2), table)


@dataclass(frozen=True)
class SixjEvaluation:
    """The pieces of one 6j evaluation: four Delta^2 values, the z-sum terms and the result."""

    b: AdmissibleSix
    delta_sq: tuple[LaurentLead, ...]
    terms: tuple[LaurentLead, ...]
    sigma: LaurentLead
    value: LaurentLead

    @property
    def summand_signs(self) -> set[int]:
        """Signs of the z-sum terms of minimal order."""
        live = [t for t in self.terms if not t.is_zero]
        if not live:
            return set()
        low = min(t.order for t in live)
        return {t.sign for t in live if t.order == low}


def _global_unit_sign(total_doubled: int) -> int:
    # (sqrt(-1))^(-2 sum b); an odd exponent leaves a factor +-i outside the real bookkeeping
    r = (-total_doubled) % 4
    return {0: 1, 2: -1}.get(r, INDETERMINATE)


def sixj_evaluate(b: AdmissibleSix, table: SineTable) -> SixjEvaluation:
    _check_range(table, b.max_factorial_arg)
    deltas = tuple(_delta_sq_doubled(*(b.b2[i] for i in tri), table) for tri in TRIPLES)
    U = b.triangles
    R = b.squares
    lo, hi = max(U), min(R)
    n = table.n
    fact = qfact_lead
    terms = []
    for z in range(lo, hi + 1):
        num = fact(z + 1, table)
        if z % 2:
            num = LaurentLead(num.order, num.log_mag, -num.sign, num.phase_units)
        den = lead_prod(
            [fact(z - u, table) for u in U] + [fact(r - z, table) for r in R]
        )
        terms.append(lead_div(num, den))
    s = lead_add(terms)
    if s.is_zero:
        return SixjEvaluation(b, deltas, tuple(terms), s, s)
    glob = LaurentLead(0, 0.0, _global_unit_sign(sum(b.b2)), 0)
    sigma = lead_div(lead_mul(glob, s), qint_lead(1, n))
    value = lead_mul(lead_sqrt_mag(lead_prod(deltas)), sigma)
    return SixjEvaluation(b, deltas, tuple(terms), sigma, value)


def sixj_lead(b: AdmissibleSix, table: SineTable) -> LaurentLead:
    """Leading Laurent term of the 6j-symbol with entries ``b`` at q_n."""
    return sixj_evaluate(b, table).value


def table_for(b: AdmissibleSix, n: int) -> SineTable:
    """A table for q_n large enough for ``b`` (at least the default size)."""
    default = math.ceil(2.6 * n)
    return SineTable(n, max(default, b.max_factorial_arg))


def sixj_generic_eval(b: AdmissibleSix, q: complex) -> complex:
    """The 6j-symbol evaluated directly at a point q of the unit circle.

    Plain complex arithmetic, term by term; q^(1/2) is taken as
    exp(i arg(q) / 2), so that {m} = 2 sin(m arg(q) / 2).  Raises
    DomainError if a quantum factorial in a denominator vanishes at q.
    """
    if abs(abs(q) - 1) > 1e-12:
        raise DomainError("q must lie on the unit circle")
    phi = cmath.phase(q)

    def qint(m: int) -> complex:
        # -i (q^{m/2} - q^{-m/2}) = 2 sin(m phi / 2) on the unit circle; snap roots to exact zero
        x = m * phi / (2 * math.pi)
        if abs(x - round(x)) < 1e-12:
            return 0j
        return complex(2 * math.sin(m * phi / 2))

    one = qint(1)
    if one == 0:
        raise DomainError("{1} vanishes at q")

    def qfact(m: int) -> complex:
        out = 1 + 0j
        for i in range(1, m + 1):
            out *= qint(i) / one
        return out

    def nonzero(x: complex) -> complex:
        if x == 0:
            raise DomainError("vanishing denominator at q")
        return x

    B = b.b2
    delta = 1 + 0j
    for tri in TRIPLES:
        B0, B1, B2 = (B[i] for i in tri)
        s = (B0 + B1 + B2) // 2
        d2 = (
            qfact((B0 + B1 - B2) // 2)
            * qfact((B0 + B2 - B1) // 2)
            * qfact((B1 + B2 - B0) // 2)
            / nonzero(qfact(s + 1))
        )
        delta *= cmath.sqrt(d2)
    U, R = b.triangles, b.squares
    total = 0j
    for z in range(max(U), min(R) + 1):
        den = 1 + 0j
        for u in U:
            den *= qfact(z - u)
        for r in R:
            den *= qfact(r - z)
        total += (-1) ** z * qfact(z + 1) / nonzero(den)
    return delta * 1j ** (-sum(B)) * total
