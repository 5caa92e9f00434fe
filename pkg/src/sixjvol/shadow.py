"""Fundamental shadow links, modelled by vertex/slot incidence.

A link with ``g`` vertices carries six strands through each vertex; slot j
at vertex i belongs to component ``slots[i][j]``, and slots (0, 3), (1, 4),
(2, 5) are opposite.  The colored Jones invariant is the product of one
6j-symbol per vertex, and the complement splits into one D-block per vertex.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from sixjvol.errors import DeformationRangeError, LinkFormatError, TableRangeError
from sixjvol.hypgeom import TruncTetra, dblock_volume, vol_oct
from sixjvol.rootval import ZERO, LaurentLead, SineTable, lead_prod
from sixjvol.sixj import AdmissibleSix, SixjEvaluation, doubled, is_admissible_six, sixj_evaluate


@dataclass(frozen=True)
class ShadowLink:
    g: int
    r: int
    slots: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(tuple(row) for row in self.slots))

    @property
    def k(self) -> int:
        """Number of S^2 x S^1 summands of the ambient manifold."""
        return self.g + 1

    def vertex_colors(self, colors: Sequence) -> list[tuple]:
        return [tuple(colors[c] for c in row) for row in self.slots]


def validate_link(link: ShadowLink) -> list[str]:
    out = []
    if not isinstance(link.g, int) or link.g < 1:
        out.append(f"g: must be a positive integer, got {link.g!r}")
    if not isinstance(link.r, int) or link.r < 1:
        out.append(f"r: must be a positive integer, got {link.r!r}")
    if len(link.slots) != link.g:
        out.append(f"slots: expected {link.g} vertices, got {len(link.slots)}")
    used = set()
    for i, row in enumerate(link.slots):
        if len(row) != 6:
            out.append(f"slots[{i}]: vertex {i} needs 6 slots, got {len(row)}")
        for j, c in enumerate(row):
            if not isinstance(c, int) or isinstance(c, bool) or not (0 <= c < link.r):
                out.append(f"slots[{i}][{j}]: component {c!r} not in [0, {link.r})")
            else:
                used.add(c)
    if isinstance(link.r, int):
        for c in range(link.r):
            if c not in used:
                out.append(f"component {c} occupies no slot")
    return out


def _require_valid(link: ShadowLink) -> None:
    problems = validate_link(link)
    if problems:
        raise LinkFormatError("; ".join(problems))


def _expect_int(value, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise LinkFormatError(f"{path}: expected an integer, got {json.dumps(value)}")
    return value


def parse_link(text: str, source: str = "<string>") -> ShadowLink:
    """Parse the JSON link format ``{"g": int, "r": int, "slots": [[int x 6] x g]}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LinkFormatError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise LinkFormatError(f"{source}: top level must be an object")
    extra = sorted(set(doc) - {"g", "r", "slots"})
    if extra:
        raise LinkFormatError(f"{source}: unknown field(s) {', '.join(extra)}")
    for key in ("g", "r", "slots"):
        if key not in doc:
            raise LinkFormatError(f"{source}: missing field '{key}'")
    g = _expect_int(doc["g"], f"{source}: g")
    r = _expect_int(doc["r"], f"{source}: r")
    slots = doc["slots"]
    if not isinstance(slots, list):
        raise LinkFormatError(f"{source}: slots: expected a list")
    rows = []
    for i, row in enumerate(slots):
        if not isinstance(row, list):
            raise LinkFormatError(f"{source}: slots[{i}]: expected a list of 6 integers")
        rows.append(tuple(_expect_int(c, f"{source}: slots[{i}][{j}]") for j, c in enumerate(row)))
    link = ShadowLink(g, r, tuple(rows))
    problems = validate_link(link)
    if problems:
        raise LinkFormatError(f"{source}: " + "; ".join(problems))
    return link


def load_link(path: str | Path) -> ShadowLink:
    path = Path(path)
    return parse_link(path.read_text(encoding="utf-8"), str(path))


def dump_link(link: ShadowLink) -> str:
    return json.dumps({"g": link.g, "r": link.r, "slots": [list(row) for row in link.slots]})


# --- colored Jones ------------------------------------------------------------


@dataclass(frozen=True)
class JonesEvaluation:
    vertices: tuple[SixjEvaluation | None, ...]
    value: LaurentLead


def colored_jones_evaluate(link: ShadowLink, b: Sequence, table: SineTable) -> JonesEvaluation:
    _require_valid(link)
    if len(b) != link.r:
        raise LinkFormatError(f"need {link.r} colors, got {len(b)}")
    b2 = [doubled(x) for x in b]
    per_vertex = []
    for row in link.vertex_colors(b2):
        if not is_admissible_six(row):
            # a non-admissible 6j-symbol is zero, and so is the product
            return JonesEvaluation(tuple(per_vertex) + (None,), ZERO)
        six = AdmissibleSix(row)
        if six.max_factorial_arg > table.max_arg:
            raise TableRangeError(
                f"vertex colors {row} need table range {six.max_factorial_arg} > {table.max_arg}"
            )
        per_vertex.append(sixj_evaluate(six, table))
    return JonesEvaluation(tuple(per_vertex), lead_prod(ev.value for ev in per_vertex))


def colored_jones_lead(link: ShadowLink, b: Sequence, table: SineTable) -> LaurentLead:
    """Leading Laurent term at q_n of the colored Jones invariant: one 6j-symbol per vertex."""
    return colored_jones_evaluate(link, b, table).value


# --- volumes ------------------------------------------------------------------


@dataclass(frozen=True)
class HolonomyParams:
    """Meridian deformation parameters, one per component; zero is the complete structure."""

    a: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(x) for x in self.a))

    def cone_angles(self, link: ShadowLink) -> list[tuple[float, ...]]:
        if len(self.a) != link.r:
            raise LinkFormatError(f"need {link.r} deformation parameters, got {len(self.a)}")
        return [tuple(2 * math.pi * abs(self.a[c]) for c in row) for row in link.slots]


def complement_volume(link: ShadowLink, a: HolonomyParams | Sequence[float]) -> float:
    """Volume of (N - L)_a as the sum of the per-vertex D-block volumes."""
    _require_valid(link)
    if not isinstance(a, HolonomyParams):
        a = HolonomyParams(tuple(a))
    total = 0.0
    for i, u in enumerate(a.cone_angles(link)):
        if any(x >= 2 * math.pi for x in u) or not TruncTetra(tuple(x / 2 for x in u)).exists:
            raise DeformationRangeError(
                f"vertex {i}: cone angles {u} leave the region where the D-block exists"
            )
        total += dblock_volume(u)
    return total


def complete_volume(link: ShadowLink) -> float:
    return 2 * link.g * vol_oct()
