"""Convergence runs: (2 pi / n) log|ev_n| against hyperbolic volumes."""

from __future__ import annotations

import io
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from sixjvol.errors import ClassificationError, NTooSmallError, ValidationError
from sixjvol.hypgeom import volume_lob
from sixjvol.rootval import SineTable, lead_mul, qnum_lead
from sixjvol.shadow import HolonomyParams, ShadowLink, colored_jones_evaluate, complement_volume
from sixjvol.sixj import TRIPLES, AdmissibleSix, classify_theta, is_admissible_six, sixj_evaluate

CSV_HEADER = "n,value,target,error,order,runtime_ms"
THREADS_ENV = "SIXJVOL_THREADS"


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    value: float
    target: float
    error: float
    order_observed: int
    runtime_ms: float
    sign_constant: bool = True
    cancelled: bool = False


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def color_sequence(theta: Sequence[float], n: int) -> AdmissibleSix:
    """Admissible half-integer colors b with b/n close to theta.

    Start from b_i = round(2 n theta_i)/2.  While some triple sum is not an
    integer, add 1/2 to the entry lying in the most violated triples
    (lowest index on ties).  Violated triples come in pairs and any two
    triples share exactly one entry, so at most two steps are needed.
    """
    th = classify_theta(theta)
    if not th.is_hyperbolic:
        raise ClassificationError(f"theta {th.theta} is {th.cls.value}, not hyperbolic-type")
    B = [_round_half_up(2 * n * t) for t in th.theta]
    for _ in range(12):
        bad = [tri for tri in TRIPLES if sum(B[i] for i in tri) % 2]
        if not bad:
            break
        hits = [sum(i in tri for tri in bad) for i in range(6)]
        B[hits.index(max(hits))] += 1
    else:
        raise AssertionError("parity repair did not terminate")
    if not is_admissible_six(B):
        raise NTooSmallError(f"n={n} too small: colors {[x / 2 for x in B]} violate a triangle inequality")
    return AdmissibleSix(tuple(B))


def gcv_colors(a: Sequence[float], n: int) -> list[int]:
    """Integer colors round(n (1 + a_i) / 2)."""
    return [_round_half_up(n * (1 + x) / 2) for x in a]


def _workers(workers: int | None) -> int:
    if workers is None:
        raw = os.environ.get(THREADS_ENV, "1")
        try:
            workers = int(raw)
        except ValueError:
            raise ValidationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if workers < 0:
        raise ValidationError("worker count must be nonnegative")
    if workers == 0:
        workers = os.cpu_count() or 1
    return workers


def _map_rows(fn: Callable, args: list[tuple], workers: int | None) -> list[ConvergenceRow]:
    w = _workers(workers)
    if w <= 1 or len(args) <= 1:
        rows = [fn(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=min(w, len(args))) as pool:
            rows = list(pool.map(fn, *zip(*args)))
    return sorted(rows, key=lambda r: r.n)


def _sixj_row(theta: tuple[float, ...], n: int, target: float) -> ConvergenceRow:
    t0 = time.perf_counter()
    b = color_sequence(theta, n)
    table = SineTable(n, max(math.ceil(2.6 * n), b.max_factorial_arg))
    ev = sixj_evaluate(b, table)
    value = 2 * math.pi / n * lead_mul(qnum_lead(n), ev.value).log_mag
    ms = (time.perf_counter() - t0) * 1e3
    return ConvergenceRow(
        n, value, target, value - target, int(ev.value.order), ms,
        len(ev.summand_signs) == 1, ev.value.cancelled,
    )


def converge_sixj(theta: Sequence[float], ns: Iterable[int], workers: int | None = None) -> list[ConvergenceRow]:
    """(2 pi / n) log|ev_n([n] 6j(b^n))| for the canonical color sequence, against volume_lob(theta)."""
    th = classify_theta(theta)
    if not th.is_hyperbolic:
        raise ClassificationError(f"theta {th.theta} is {th.cls.value}, not hyperbolic-type")
    target = volume_lob(th)
    return _map_rows(_sixj_row, [(th.theta, int(n), target) for n in ns], workers)


def _gcv_row(link: ShadowLink, a: tuple[float, ...], n: int, target: float, normalized: bool) -> ConvergenceRow:
    t0 = time.perf_counter()
    colors = gcv_colors(a, n)
    need = 0
    for row in link.vertex_colors([2 * c for c in colors]):
        if is_admissible_six(row):
            need = max(need, AdmissibleSix(row).max_factorial_arg)
    table = SineTable(n, max(math.ceil(2.6 * n), need))
    ev = colored_jones_evaluate(link, colors, table)
    lead = ev.value
    if normalized:
        for _ in range(link.g):
            lead = lead_mul(qnum_lead(n), lead)
    value = 2 * math.pi / n * lead.log_mag
    ms = (time.perf_counter() - t0) * 1e3
    signs_ok = all(v is not None and len(v.summand_signs) == 1 for v in ev.vertices)
    return ConvergenceRow(
        n, value, target, value - target, ev.value.order, ms, signs_ok, ev.value.cancelled,
    )


def converge_gcv(
    link: ShadowLink,
    a: HolonomyParams | Sequence[float],
    ns: Iterable[int],
    workers: int | None = None,
    normalized: bool = False,
) -> list[ConvergenceRow]:
    """(2 pi / n) log|ev_n(J_{b^n})| against the complement volume Vol((N - L)_a).

    With ``normalized`` the invariant is first multiplied by [n]^g, which
    leaves the limit unchanged but removes the O(log n / n) offset of the
    pole order.
    """
    if not isinstance(a, HolonomyParams):
        a = HolonomyParams(tuple(a))
    target = complement_volume(link, a)
    args = []
    for n in ns:
        if int(n) % 2:
            raise ValidationError(f"n must be even for the Jones run, got {n}")
        args.append((link, a.a, int(n), target, normalized))
    return _map_rows(_gcv_row, args, workers)


def richardson(rows: Sequence[ConvergenceRow]) -> list[float | None]:
    """First-order (1/n) Richardson estimates from consecutive rows; None for the first row."""
    out: list[float | None] = [None]
    for prev, cur in zip(rows, rows[1:]):
        out.append((cur.n * cur.value - prev.n * prev.value) / (cur.n - prev.n))
    return out


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def rows_to_csv(rows: Sequence[ConvergenceRow], timing: bool = True, with_richardson: bool = False) -> str:
    """CSV text with LF line endings; runtime_ms is left empty when ``timing`` is off."""
    buf = io.StringIO()
    header = CSV_HEADER + (",richardson" if with_richardson else "")
    buf.write(header + "\n")
    extra = richardson(rows) if with_richardson else [None] * len(rows)
    for row, rich in zip(rows, extra):
        fields = [
            str(row.n),
            _fmt(row.value),
            _fmt(row.target),
            _fmt(row.error),
            str(row.order_observed),
            _fmt(row.runtime_ms) if timing else "",
        ]
        if with_richardson:
            fields.append("" if rich is None else _fmt(rich))
        buf.write(",".join(fields) + "\n")
    return buf.getvalue()
