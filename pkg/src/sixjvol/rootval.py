"""Leading Laurent coefficients of quantum integers and factorials at q_n = exp(2 pi i / n).

Everything is kept in the log domain.  A singular quantum integer {kn} has a
simple zero at q_n whose leading coefficient is (-1)^k * kn * u with the unit
u = -i / q_n; the unit is never multiplied in, only counted
(``phase_units``), so that sums of leading terms stay real-reducible.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from sixjvol.errors import DomainError, ParityError, PhaseMismatchError, TableRangeError

INDETERMINATE = 0
EPS_CANCEL = 1e-9
TABLE_FACTOR = 2.6


@dataclass(frozen=True)
class LaurentLead:
    """Leading term ``sign * exp(log_mag) * u**phase_units * (q - q_n)**order``.

    ``sign`` is +1, -1 or :data:`INDETERMINATE` (0).  The zero function is
    encoded with ``log_mag = -inf`` and ``order = +inf``; use :data:`ZERO`.
    ``cancelled`` marks a value produced by a sum that lost most of its
    magnitude to cancellation.
    """

    order: int | float
    log_mag: float
    sign: int = 1
    phase_units: int = 0
    cancelled: bool = False

    @property
    def is_zero(self) -> bool:
        return self.log_mag == -math.inf

    @property
    def magnitude(self) -> float:
        return math.exp(self.log_mag)

    def coefficient(self, n: int) -> complex:
        """The leading coefficient as a complex number (sign taken as +1 if indeterminate)."""
        if self.is_zero:
            return 0j
        unit = -1j * cmath.exp(-2j * math.pi / n)
        s = -1.0 if self.sign == -1 else 1.0
        return s * math.exp(self.log_mag) * unit**self.phase_units

    def __mul__(self, other: LaurentLead) -> LaurentLead:
        return lead_mul(self, other)

    def __truediv__(self, other: LaurentLead) -> LaurentLead:
        return lead_div(self, other)


ONE = LaurentLead(0, 0.0, 1, 0)
ZERO = LaurentLead(math.inf, -math.inf, 1, 0)


def _sign_product(a: int, b: int) -> int:
    if a == INDETERMINATE or b == INDETERMINATE:
        return INDETERMINATE
    return a * b


def lead_mul(a: LaurentLead, b: LaurentLead) -> LaurentLead:
    if a.is_zero or b.is_zero:
        return ZERO
    return LaurentLead(
        a.order + b.order,
        a.log_mag + b.log_mag,
        _sign_product(a.sign, b.sign),
        a.phase_units + b.phase_units,
        a.cancelled or b.cancelled,
    )


def lead_div(a: LaurentLead, b: LaurentLead) -> LaurentLead:
    if b.is_zero:
        raise ZeroDivisionError("division by the zero function")
    if a.is_zero:
        return ZERO
    return LaurentLead(
        a.order - b.order,
        a.log_mag - b.log_mag,
        _sign_product(a.sign, b.sign),
        a.phase_units - b.phase_units,
        a.cancelled or b.cancelled,
    )


def lead_prod(factors: Iterable[LaurentLead]) -> LaurentLead:
    out = ONE
    for f in factors:
        out = lead_mul(out, f)
    return out


def lead_sqrt_mag(a: LaurentLead) -> LaurentLead:
    """Square root of a leading term; the magnitude is exact, the sign only if the radicand is positive."""
    if a.is_zero:
        return ZERO
    if a.order % 2 or a.phase_units % 2:
        raise ParityError(
            f"square root needs even order and phase, got order={a.order} phase={a.phase_units}"
        )
    return LaurentLead(
        a.order // 2,
        a.log_mag / 2,
        1 if a.sign == 1 else INDETERMINATE,
        a.phase_units // 2,
        a.cancelled,
    )


def lead_add(terms: Iterable[LaurentLead], eps_cancel: float = EPS_CANCEL) -> LaurentLead:
    """Leading term of a sum.

    Only the terms of minimal order survive.  Their real reduced
    coefficients are accumulated as a signed log-sum-exp relative to the
    running maximum (with Neumaier compensation), so nothing overflows.
    """
    best = math.inf
    phase = 0
    mismatch = False
    top = -math.inf
    acc = 0.0
    comp = 0.0
    flagged = False
    for t in terms:
        if t.is_zero or t.order > best:
            continue
        if t.order < best:
            best, phase, mismatch = t.order, t.phase_units, False
            top, acc, comp, flagged = -math.inf, 0.0, 0.0, False
        elif t.phase_units != phase:
            mismatch = True
        if t.sign == INDETERMINATE:
            raise DomainError("cannot add a term of indeterminate sign")
        flagged = flagged or t.cancelled
        if t.log_mag > top:
            scale = math.exp(top - t.log_mag)
            acc *= scale
            comp *= scale
            top = t.log_mag
        x = t.sign * math.exp(t.log_mag - top)
        s = acc + x
        if abs(acc) >= abs(x):
            comp += (acc - s) + x
        else:
            comp += (x - s) + acc
        acc = s
    if best == math.inf:
        return ZERO
    if mismatch:
        raise PhaseMismatchError(f"terms of leading order {best} carry different phase units")
    total = acc + comp
    if total == 0.0:
        return LaurentLead(math.inf, -math.inf, 1, 0, True)
    return LaurentLead(
        best,
        top + math.log(abs(total)),
        1 if total > 0 else -1,
        phase,
        flagged or abs(total) < eps_cancel,
    )


def _sin_pi_frac(m: int, n: int) -> tuple[float, int]:
    """|2 sin(pi m / n)| and its sign for n not dividing m, reduced for relative accuracy."""
    r = m % (2 * n)
    sign = -1 if r > n else 1
    d = r % n
    d = min(d, n - d)
    return 2.0 * math.sin(math.pi * d / n), sign


def qint_lead(m: int, n: int) -> LaurentLead:
    """Leading term of {m} = -i (q^{m/2} - q^{-m/2}) at q_n."""
    if n < 3:
        raise ValueError("root order n must be at least 3")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return ZERO
    k, rem = divmod(m, n)
    if rem:
        mag, sign = _sin_pi_frac(m, n)
        return LaurentLead(0, math.log(mag), sign, 0)
    # d/dq of -i(q^{m/2} - q^{-m/2}) at q_n is (-1)^k * m * (-i / q_n)
    return LaurentLead(1, math.log(m), -1 if k % 2 else 1, 1)


class SineTable:
    """Prefix data for O(1) evaluation of {m}! at q_n for 0 <= m <= max_arg.

    Arrays are indexed by m; entry 0 is the empty product.
    """

    def __init__(self, n: int, max_arg: int | None = None):
        if n < 3:
            raise ValueError("root order n must be at least 3")
        if max_arg is None:
            max_arg = math.ceil(TABLE_FACTOR * n)
        if max_arg < 1:
            raise ValueError("max_arg must be positive")
        self.n = n
        self.max_arg = max_arg
        size = max_arg + 1
        prefix = np.zeros(size)
        zeros = np.zeros(size, dtype=np.int64)
        neg = np.zeros(size, dtype=np.int8)
        sing = np.zeros(size)
        sing_par = np.zeros(size, dtype=np.int8)

        acc = comp = 0.0
        s_acc = s_comp = 0.0
        z = p = sp = 0
        for m in range(1, size):
            k, rem = divmod(m, n)
            if rem:
                mag, sign = _sin_pi_frac(m, n)
                acc, comp = _neumaier(acc, comp, math.log(mag))
                if sign < 0:
                    p ^= 1
            else:
                z += 1
                s_acc, s_comp = _neumaier(s_acc, s_comp, math.log(m))
                if k % 2:
                    sp ^= 1
            prefix[m] = acc + comp
            zeros[m] = z
            neg[m] = p
            sing[m] = s_acc + s_comp
            sing_par[m] = sp
        for arr in (prefix, zeros, neg, sing, sing_par):
            arr.setflags(write=False)
        self.prefix_log = prefix
        self.zero_count = zeros
        self.neg_parity = neg
        self.sing_mag = sing
        self.sing_sign_parity = sing_par

    def __repr__(self) -> str:
        return f"SineTable(n={self.n}, max_arg={self.max_arg})"

    def fact(self, m: int) -> LaurentLead:
        return qfact_lead(m, self)


def _neumaier(acc: float, comp: float, x: float) -> tuple[float, float]:
    s = acc + x
    if abs(acc) >= abs(x):
        comp += (acc - s) + x
    else:
        comp += (x - s) + acc
    return s, comp


def qfact_lead(m: int, table: SineTable) -> LaurentLead:
    """Leading term of {m}! = {1}{2}...{m} at q_n, read off the table."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > table.max_arg:
        raise TableRangeError(f"{{{m}}}! exceeds table range {table.max_arg} for n={table.n}")
    z = int(table.zero_count[m])
    parity = int(table.neg_parity[m]) ^ int(table.sing_sign_parity[m])
    return LaurentLead(
        z,
        float(table.prefix_log[m] + table.sing_mag[m]),
        -1 if parity else 1,
        z,
    )


def qnum_lead(n: int) -> LaurentLead:
    """Leading term of the normalized quantum integer [n] = {n}/{1} at q_n."""
    return lead_div(qint_lead(n, n), qint_lead(1, n))
