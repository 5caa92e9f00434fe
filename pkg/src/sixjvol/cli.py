"""Command-line front end: ``sixjvol <subcommand> [flags]``.

Single results are printed as JSON, experiment tables as CSV.  Exit code 0
on success, 2 on invalid input, 3 on numeric/domain failures; errors go to
stderr as ``{"error": <code>, "message": <text>}``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Sequence

from sixjvol import experiments, hypgeom, shadow, sixj
from sixjvol.errors import DomainError, SixjvolError, ValidationError
from sixjvol.rootval import LaurentLead, SineTable

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DOMAIN = 3


class CliInputError(ValidationError):
    code = "bad-argument"


def _floats(text: str, count: int | None = None, name: str = "value") -> list[float]:
    try:
        out = [float(x) for x in text.split(",")]
    except ValueError:
        raise CliInputError(f"--{name}: expected comma-separated reals, got {text!r}") from None
    if count is not None and len(out) != count:
        raise CliInputError(f"--{name}: expected {count} entries, got {len(out)}")
    if not all(math.isfinite(x) for x in out):
        raise CliInputError(f"--{name}: entries must be finite")
    return out


def _ints(text: str, name: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise CliInputError(f"--{name}: expected comma-separated integers, got {text!r}") from None


def _colors_doubled(args, count: int | None) -> list[int]:
    """Doubled colors from --b (half-integers like 1.5 or 3/2) or --b2 (doubled ints)."""
    if (args.b is None) == (args.b2 is None):
        raise CliInputError("give exactly one of --b and --b2")
    if args.b2 is not None:
        B = _ints(args.b2, "b2")
    else:
        B = []
        for tok in args.b.split(","):
            try:
                B.append(sixj.doubled(tok.strip()))
            except (ValueError, ZeroDivisionError):
                raise CliInputError(f"--b: {tok!r} is not a half-integer") from None
    if count is not None and len(B) != count:
        raise CliInputError(f"expected {count} colors, got {len(B)}")
    if any(x < 0 for x in B):
        raise CliInputError("colors must be nonnegative")
    return B


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _lead_dict(lead: LaurentLead) -> dict:
    return {
        "order": None if lead.is_zero else int(lead.order),
        "log_mag": lead.log_mag,
        "sign": lead.sign,
        "phase_units": lead.phase_units,
        "cancelled": lead.cancelled,
        "zero": lead.is_zero,
    }


def _check_n(n: int) -> int:
    if n < 3:
        raise CliInputError("--n must be at least 3")
    return n


# --- subcommands ----------------------------------------------------------------


def cmd_lob(args) -> dict:
    return {"x": args.x, "lambda": hypgeom.lobachevsky(args.x)}


def cmd_dilog(args) -> dict:
    try:
        z = complex(args.z.replace(" ", ""))
    except ValueError:
        raise CliInputError(f"--z: cannot parse {args.z!r} as a complex number") from None
    w = hypgeom.dilog(z)
    return {"re": w.real, "im": w.imag}


def cmd_classify(args) -> dict:
    th = sixj.classify_theta(_floats(args.theta, 6, "theta"))
    return {"theta": list(th.theta), "class": th.cls.value}


def cmd_sixj(args) -> dict:
    n = _check_n(args.n)
    b = sixj.AdmissibleSix(tuple(_colors_doubled(args, 6)))
    ev = sixj.sixj_evaluate(b, sixj.table_for(b, n))
    out = {"b": [str(x) for x in b.b], "n": n}
    out.update(_lead_dict(ev.value))
    return out


def cmd_tetra_vol(args) -> dict:
    T = hypgeom.TruncTetra(tuple(_floats(args.alpha, 6, "alpha")))
    d = hypgeom.volume_my_detail(T)
    return {"volume": d.volume, "z_plus": [d.z_plus.real, d.z_plus.imag]}


def cmd_dblock_vol(args) -> dict:
    return {"volume": hypgeom.dblock_volume(_floats(args.u, 6, "u"))}


def _load(args) -> shadow.ShadowLink:
    try:
        return shadow.load_link(args.link)
    except OSError as exc:
        raise CliInputError(f"--link: cannot read {args.link}: {exc.strerror}") from None


def cmd_jones(args) -> dict:
    n = _check_n(args.n)
    link = _load(args)
    B = _colors_doubled(args, link.r)
    need = 0
    for row in link.vertex_colors(B):
        if sixj.is_admissible_six(row):
            need = max(need, sixj.AdmissibleSix(row).max_factorial_arg)
    table = SineTable(n, max(math.ceil(2.6 * n), need))
    lead = shadow.colored_jones_lead(link, [x / 2 for x in B], table)
    out = {"n": n, "g": link.g}
    out.update(_lead_dict(lead))
    return out


def cmd_link_vol(args) -> dict:
    link = _load(args)
    a = args.a if args.a is not None else ",".join(["0"] * link.r)
    vol = shadow.complement_volume(link, _floats(a, link.r, "a"))
    return {"volume": vol, "complete_volume": shadow.complete_volume(link)}


def _ns(args) -> list[int]:
    ns = _ints(args.ns, "ns")
    if any(n < 3 for n in ns):
        raise CliInputError("--ns: every n must be at least 3")
    if len(set(ns)) != len(ns):
        raise CliInputError("--ns: duplicate values")
    return ns


def cmd_converge_sixj(args):
    return experiments.converge_sixj(_floats(args.theta, 6, "theta"), _ns(args))


def cmd_converge_gcv(args):
    link = _load(args)
    a = _floats(args.a, link.r, "a")
    return experiments.converge_gcv(link, a, _ns(args), normalized=args.normalized)


# --- output ------------------------------------------------------------------


def _render_rows(rows, args) -> str:
    if args.format == "json":
        recs = []
        rich = experiments.richardson(rows) if args.richardson else None
        for i, row in enumerate(rows):
            d = asdict(row)
            if not args.timing:
                d["runtime_ms"] = None
            if rich is not None:
                d["richardson"] = rich[i]
            recs.append(d)
        return json.dumps(_jsonable(recs), indent=2) + "\n"
    return experiments.rows_to_csv(rows, timing=args.timing, with_richardson=args.richardson)


def _render_single(result: dict, args) -> str:
    if args.format == "csv":
        flat = {k: v for k, v in result.items() if not isinstance(v, (list, tuple, dict))}
        vals = ["" if v is None or (isinstance(v, float) and not math.isfinite(v)) else
                (f"{v:.12g}" if isinstance(v, float) else str(v)) for v in flat.values()]
        return ",".join(flat) + "\n" + ",".join(vals) + "\n"
    return json.dumps(_jsonable(result), allow_nan=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sixjvol",
        description="6j-symbols at roots of unity, truncated tetrahedron volumes, and their asymptotics.",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    def add(name, fn, help_text, table=False):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(func=fn, table=table)
        sp.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
        sp.add_argument(
            "--format",
            choices=("json", "csv"),
            default="csv" if table else "json",
            help="output format (default: %(default)s)",
        )
        return sp

    def colors(sp):
        sp.add_argument("--b", help="comma-separated half-integer colors, e.g. 1,1/2,3/2")
        sp.add_argument("--b2", help="comma-separated doubled colors (2,1,3 means 1,1/2,3/2)")

    sp = add("lob", cmd_lob, "Lobachevsky function at x (radians).")
    sp.add_argument("--x", type=float, required=True, help="argument in radians")

    sp = add("dilog", cmd_dilog, "Dilogarithm Li2(z) for |z| <= 1.")
    sp.add_argument("--z", required=True, help="complex argument in Python syntax, e.g. 0.3+0.4j")

    sp = add("classify", cmd_classify, "Classify a real 6-tuple theta.")
    sp.add_argument("--theta", required=True, help="t0,...,t5 in [0, 1]")

    sp = add("sixj", cmd_sixj, "Leading Laurent term of a 6j-symbol at q_n = exp(2 pi i / n).")
    colors(sp)
    sp.add_argument("--n", type=int, required=True, help="root order, at least 3")

    sp = add("tetra-vol", cmd_tetra_vol, "Volume of the truncated tetrahedron with dihedral angles alpha.")
    sp.add_argument("--alpha", required=True, help="a0,...,a5 in radians")

    sp = add("dblock-vol", cmd_dblock_vol, "Volume of the D-block with cone angles u.")
    sp.add_argument("--u", required=True, help="u0,...,u5 in radians")

    sp = add("jones", cmd_jones, "Leading term of the colored Jones invariant of a shadow link at q_n.")
    sp.add_argument("--link", required=True, help="link JSON file")
    colors(sp)
    sp.add_argument("--n", type=int, required=True, help="root order, at least 3")

    sp = add("link-vol", cmd_link_vol, "Volume of the (deformed) shadow link complement.")
    sp.add_argument("--link", required=True, help="link JSON file")
    sp.add_argument("--a", help="a1,...,ar deformation parameters (default: all zero)")

    def table_flags(sp):
        sp.add_argument("--ns", required=True, help="comma-separated root orders")
        sp.add_argument("--timing", action="store_true", help="fill the runtime_ms column")
        sp.add_argument("--richardson", action="store_true", help="append a 1/n Richardson column")

    sp = add("converge-sixj", cmd_converge_sixj, "(2 pi/n) log|[n] 6j| against volume_lob(theta).", True)
    sp.add_argument("--theta", required=True, help="t0,...,t5 of hyperbolic type")
    table_flags(sp)

    sp = add("converge-gcv", cmd_converge_gcv, "(2 pi/n) log|J| against the complement volume.", True)
    sp.add_argument("--link", required=True, help="link JSON file")
    sp.add_argument("--a", required=True, help="a1,...,ar deformation parameters")
    sp.add_argument("--normalized", action="store_true", help="multiply by [n]^g before taking logs")
    table_flags(sp)
    return p


def _emit_error(exc: BaseException, code: str) -> None:
    sys.stderr.write(json.dumps({"error": code, "message": str(exc)}) + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
        text = _render_rows(result, args) if args.table else _render_single(result, args)
    except ValidationError as exc:
        _emit_error(exc, exc.code)
        return EXIT_VALIDATION
    except (DomainError, ZeroDivisionError, OverflowError) as exc:
        _emit_error(exc, getattr(exc, "code", "domain"))
        return EXIT_DOMAIN
    except SixjvolError as exc:
        _emit_error(exc, exc.code)
        return EXIT_DOMAIN
    if args.out:
        try:
            with open(Path(args.out), "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            _emit_error(exc, "io")
            return EXIT_VALIDATION
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
