"""Independent reference implementations used only by the tests."""

import math

import mpmath
from scipy.integrate import quad

from sixjvol.sixj import TRIPLES


def lob_quad(x: float) -> float:
    """-int_0^x log|2 sin s| ds by numerical quadrature, split at the log singularities."""
    if x == 0:
        return 0.0
    sgn = 1.0 if x > 0 else -1.0
    x = abs(x)
    pts = [0.0]
    k = 1
    while k * math.pi < x:
        pts.append(k * math.pi)
        k += 1
    pts.append(x)
    # tanh-sinh copes with the log singularities sitting at the segment ends
    with mpmath.workdps(25):
        total = mpmath.quad(lambda s: mpmath.log(abs(2 * mpmath.sin(s))), pts)
    return -sgn * float(total)


def lob_quad_scipy(x: float) -> float:
    """Same integral with scipy's QUADPACK, for points away from multiples of pi."""
    val, _ = quad(lambda s: math.log(abs(2 * math.sin(s))), 0.0, x, limit=200)
    return -val


def dilog_mp(z: complex) -> complex:
    with mpmath.workdps(30):
        return complex(mpmath.polylog(2, mpmath.mpc(z.real, z.imag)))


def naive_qfact(m: int, n: int, eps: float = 0.0) -> complex:
    """{m}! evaluated at q = exp(i (2 pi / n + eps)) as a plain product."""
    phi = 2 * math.pi / n + eps
    out = 1 + 0j
    for j in range(1, m + 1):
        out *= 2 * math.sin(j * phi / 2)
    return out


def factorial_order(m: int, n: int) -> int:
    return sum(1 for j in range(1, m + 1) if j % n == 0)


def sixj_order_symbolic(B: tuple, n: int) -> int:
    """Laurent order of the 6j-symbol at q_n by counting vanishing factors one by one.

    Assumes no cancellation among the minimal-order summands.  Returns None
    when the Delta^2 product has odd order, i.e. the symbol is branched at q_n.
    """
    delta_order = 0
    for tri in TRIPLES:
        B0, B1, B2 = (B[i] for i in tri)
        s = (B0 + B1 + B2) // 2
        delta_order += (
            factorial_order((B0 + B1 - B2) // 2, n)
            + factorial_order((B0 + B2 - B1) // 2, n)
            + factorial_order((B1 + B2 - B0) // 2, n)
            - factorial_order(s + 1, n)
        )
    U = [sum(B[i] for i in tri) // 2 for tri in TRIPLES]
    R = [(B[0] + B[3] + B[1] + B[4]) // 2, (B[0] + B[3] + B[2] + B[5]) // 2, (B[1] + B[4] + B[2] + B[5]) // 2]
    orders = []
    for z in range(max(U), min(R) + 1):
        o = factorial_order(z + 1, n)
        o -= sum(factorial_order(z - u, n) for u in U)
        o -= sum(factorial_order(r - z, n) for r in R)
        orders.append(o)
    if delta_order % 2:
        return None
    return delta_order // 2 + min(orders)


def sixj_reversed(B: tuple, q: complex) -> complex:
    """The 6j formula summed from the top of the z-range down, with mpmath at 30 digits."""
    with mpmath.workdps(30):
        qh = mpmath.exp(0.5j * mpmath.arg(mpmath.mpc(q.real, q.imag)))

        def qi(m):
            return -1j * (qh**m - qh ** (-m))

        def qf(m):
            out = mpmath.mpc(1)
            for j in range(1, m + 1):
                out *= qi(j) / qi(1)
            return out

        delta = mpmath.mpc(1)
        for tri in TRIPLES:
            B0, B1, B2 = (B[i] for i in tri)
            s = (B0 + B1 + B2) // 2
            delta *= mpmath.sqrt(
                qf((B0 + B1 - B2) // 2) * qf((B0 + B2 - B1) // 2) * qf((B1 + B2 - B0) // 2) / qf(s + 1)
            )
        U = [sum(B[i] for i in tri) // 2 for tri in TRIPLES]
        R = [(B[0] + B[3] + B[1] + B[4]) // 2, (B[0] + B[3] + B[2] + B[5]) // 2, (B[1] + B[4] + B[2] + B[5]) // 2]
        total = mpmath.mpc(0)
        for z in range(min(R), max(U) - 1, -1):
            den = mpmath.mpc(1)
            for u in U:
                den *= qf(z - u)
            for r in R:
                den *= qf(r - z)
            total += (-1) ** z * qf(z + 1) / den
        return complex(delta * mpmath.mpc(0, 1) ** (-sum(B)) * total)
