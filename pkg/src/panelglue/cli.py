"""Command-line interface.

    panelglue validate COMPLEX
    panelglue glue COMPLEX COLORING [--components --euler --betti --orient --free --isotropy]
    panelglue classify COMPLEX M [--gl] [--aut FILE] [--burnside] [--invariants]
    panelglue monodromy COMPLEX COLORING PATH [--lift]

``COMPLEX`` is a complex file or ``catalog:<id>``.  ``COLORING`` is a file
or inline text such as ``P1:10,P2:01``.  Reports are ``key: value`` text or
JSON (``--format json``); both are deterministic.

Exit codes: 0 ok, 1 validation or mathematical precondition failure,
2 I/O or parse error, 3 guard exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Optional, Sequence

from . import catalog
from .classify import ColoringSpace, double_cosets, orbits_under_gl
from .complex import CornerComplex
from .errors import (ColoringError, ComplexError, DisconnectedBaseError, GuardExceeded,
                     NotPseudomanifoldError)
from .gf2 import DimensionMismatch, GroupElement, solve_affine_all_ones
from .glueback import (Coloring, CompositeColoring, component_count_formula, components, formula_applies,
                       glue, is_free, isotropy_check_locally_standard, lift_path, monodromy)
from .homology import orientable_by_coloring, orientable_combinatorial, z2_betti
from .io import ParseError, load_complex, parse_automorphisms, parse_coloring, parse_complex

EXIT_OK, EXIT_MATH, EXIT_IO, EXIT_GUARD = 0, 1, 2, 3


class CommandFailed(Exception):
    def __init__(self, code: int, message: str, report: Optional[dict] = None):
        super().__init__(message)
        self.code = code
        self.report = report


# -- inputs ---------------------------------------------------------------------


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def read_complex(source: str) -> tuple[CornerComplex, str]:
    if source.startswith("catalog:"):
        name = f"{source[len('catalog:'):]}.complex.json"
        try:
            raw = catalog.data_file(name).read_bytes()
        except (FileNotFoundError, OSError):
            raise ParseError(f"unknown catalog entry {source!r}") from None
        return parse_complex(raw.decode(), source), _digest(raw)
    path = Path(source)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, source) from None
    try:
        text = raw.decode()
    except UnicodeDecodeError:
        raise ParseError("file is not UTF-8 text", None, source) from None
    return parse_complex(text, source), _digest(raw)


def read_coloring_text(source: str) -> tuple[dict[str, GroupElement], str, str]:
    path = Path(source)
    if ":" not in source or path.is_file():
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise ParseError(f"cannot read coloring file: {exc.strerror}", None, source) from None
        return parse_coloring(raw.decode(), source), _digest(raw), source
    return parse_coloring(source, "<inline>"), _digest(source.encode()), "<inline>"


def build_coloring(c: CornerComplex, values: dict[str, GroupElement], partial: bool, warnings: list[str]):
    if not values:
        raise ColoringError("coloring is empty; the group rank cannot be inferred")
    m = next(iter(values.values())).m
    known = {p.id: p for p in c.panels}
    unknown = sorted(set(values) - set(known))
    if unknown:
        raise ColoringError(f"coloring names unknown panel(s) {unknown}")
    lam = {k: v for k, v in values.items() if known[k].is_principal}
    mu = {k: v for k, v in values.items() if known[k].is_reflexive}
    if c.reflexive_panels and not partial:
        return CompositeColoring(m, lam, mu)
    if mu:
        warnings.append(f"boundary mode: colors of reflexive panels {sorted(mu)} are ignored")
    return Coloring(m, lam)


# -- report rendering ---------------------------------------------------------------


def _render_text(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, val in obj.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines += _render_text(val, indent + 1)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                sub = _render_text(item, indent + 2)
                sub[0] = pad + "  - " + sub[0].lstrip()
                lines += sub
        elif isinstance(val, list):
            if val and all(isinstance(x, str) for x in val) and any(len(x) > 20 for x in val):
                lines.append(f"{pad}{key}:")
                lines += [f"{pad}  - {x}" for x in val]
            else:
                lines.append(f"{pad}{key}: [{', '.join(_scalar(x) for x in val)}]")
        else:
            lines.append(f"{pad}{key}: {_scalar(val)}")
    return lines


def _scalar(x: Any) -> str:
    if x is None:
        return "n/a"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    return "\n".join(_render_text(report)) + "\n"


# -- commands ---------------------------------------------------------------------


def cmd_validate(args) -> dict:
    c, digest = read_complex(args.complex)
    rep = c.validation
    report = {
        "command": "validate",
        "input": {"complex": args.complex, "digest": digest},
        "complex": c.name,
        "dim": c.dim,
        "cells": [c.n_simplices(d) for d in range(c.dim + 1)],
        "panels": {"principal": len(c.principal_panels), "reflexive": len(c.reflexive_panels)},
        "valid": rep.ok,
        "violations": [{"condition": v.condition, "message": str(v)} for v in rep.violations],
    }
    if not rep.ok:
        raise CommandFailed(EXIT_MATH, f"{c.name}: {len(rep.violations)} violation(s)", report)
    return report


def _orient_block(c: CornerComplex, gc, col) -> dict:
    from .catalog import base_of

    out: dict[str, Any] = {}
    closed = True
    try:
        out["combinatorial"] = orientable_combinatorial(gc)
    except NotPseudomanifoldError:
        closed = False
        out["combinatorial"] = orientable_combinatorial(gc, allow_boundary=True)
    out["closed"] = closed
    base_orientable = orientable_combinatorial(base_of(c), allow_boundary=True)
    out["base_orientable"] = base_orientable
    if base_orientable:
        mu = list(col.mu.values())
        crit = orientable_by_coloring(mu, True, col.group_rank)
        out["coloring_criterion"] = crit
        if mu:
            c_vec = solve_affine_all_ones(mu, col.group_rank)
            out["functional"] = str(c_vec) if c_vec is not None else None
        if closed and crit != out["combinatorial"]:
            out["warning"] = "coloring criterion disagrees with sign propagation"
    else:
        out["coloring_criterion"] = None
    return out


def cmd_glue(args) -> dict:
    c, cdigest = read_complex(args.complex)
    values, kdigest, ksrc = read_coloring_text(args.coloring)
    warnings: list[str] = []
    col = build_coloring(c, values, args.partial, warnings)
    gc = glue(c, col, simplicial=not args.no_subdivide)
    comps = components(gc)
    report: dict[str, Any] = {
        "command": "glue",
        "input": {"complex": args.complex, "complex_digest": cdigest, "coloring": ksrc, "coloring_digest": kdigest},
        "complex": c.name,
        "coloring": str(col),
        "group_rank": col.group_rank,
        "mode": "composite" if isinstance(col, CompositeColoring) else ("boundary" if c.reflexive_panels else "principal"),
        "subdivisions": gc.subdivisions,
        "simplicial": gc.simplicial,
        "cells": gc.cell_counts,
        "components": {"count": len(comps)},
    }
    comp = report["components"]
    if formula_applies(c):
        expected = component_count_formula(c, col)
        comp["formula"] = expected
        comp["formula_matches"] = expected == len(comps)
        if expected != len(comps):
            raise CommandFailed(EXIT_MATH, f"internal error: union-find gives {len(comps)} components, "
                                           f"formula 2^(m-rank) gives {expected}", report)
    else:
        comp["formula"] = None
        warnings.append("complex is disconnected; the 2^(m-rank) count needs the intersection matrix")
    if args.components:
        comp["list"] = [{"index": ci.index, "cells": list(ci.cell_counts), "euler": ci.euler} for ci in comps]
    if args.euler:
        report["euler"] = gc.euler()
        report["euler_per_component"] = [ci.euler for ci in comps]
    if args.betti:
        report["betti"] = z2_betti(gc)
    if args.orient:
        report["orientable"] = _orient_block(c, gc, col)
    if args.free:
        fr = is_free(gc)
        report["free"] = fr.free
        report["fixed_cells"] = [str(e) for e in fr.fixed]
    if args.isotropy:
        iso = isotropy_check_locally_standard(gc)
        report["locally_standard"] = iso.ok
        report["isotropy_mismatches"] = [str(e) for e in iso.mismatches]
    if args.action_table:
        report["action_table"] = {k: v for k, v in gc.action_table().items()}
    report["warnings"] = warnings
    return report


def _invariants(payload) -> dict:
    complex_text, m, item = payload
    c = parse_complex(complex_text)
    space = ColoringSpace(c, m)
    col = space.coloring(item)
    gc = glue(c, col, simplicial=False)
    try:
        orient: Optional[bool] = orientable_combinatorial(gc)
    except NotPseudomanifoldError:
        orient = None
    return {"coloring": space.format(item), "components": gc.n_components, "euler": gc.euler(),
            "betti": z2_betti(gc), "orientable": orient}


def cmd_classify(args) -> dict:
    c, digest = read_complex(args.complex)
    space = ColoringSpace(c, args.m)
    n = len(space)
    report: dict[str, Any] = {
        "command": "classify",
        "input": {"complex": args.complex, "digest": digest},
        "complex": c.name,
        "group_rank": args.m,
        "principal_panels": list(space.principal),
        "reflexive_panels": list(space.reflexive),
        "colorings": n,
    }
    if space.diagnostic:
        report["diagnostic"] = space.diagnostic
    result = None
    if args.aut:
        try:
            text = Path(args.aut).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read generator file: {exc.strerror}", None, args.aut) from None
        gens = parse_automorphisms(text, args.aut)
        result = double_cosets(space, gens, use_gl=args.gl)
        report["classes"] = "GL x Aut double cosets" if args.gl else "Aut orbits"
    elif args.gl:
        result = orbits_under_gl(space)
        report["classes"] = "GL orbits"
    if result is not None:
        report["group_order"] = result.group_order
        report["orbits"] = {"direct": result.count, "burnside": result.burnside, "agree": result.agree}
        reps = result.representatives
    else:
        reps = tuple(space.items())
    shown = reps[: args.max_reps]
    block: dict[str, Any] = {"shown": len(shown), "total": len(reps)}
    if args.burnside and result is not None:
        block["orbit_sizes"] = list(result.orbit_sizes[: args.max_reps])
    block["list"] = [space.format(r) for r in shown]
    report["representatives"] = block
    if args.invariants and shown:
        from .io import dump_complex

        text = dump_complex(c)
        payloads = [(text, args.m, r) for r in shown]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                inv = list(pool.map(_invariants, payloads))
        else:
            inv = [_invariants(p) for p in payloads]
        report["invariants"] = inv
    return report


def cmd_monodromy(args) -> dict:
    c, cdigest = read_complex(args.complex)
    values, kdigest, ksrc = read_coloring_text(args.coloring)
    warnings: list[str] = []
    col = build_coloring(c, values, True, warnings)
    path = [p.strip() for p in args.path.split(",") if p.strip()]
    unknown = [p for p in path if p not in c.panel_by_id]
    if unknown:
        raise ColoringError(f"path names unknown panel(s) {unknown}")
    col.check(c)
    h = monodromy(c, col, path)
    report: dict[str, Any] = {
        "command": "monodromy",
        "input": {"complex": args.complex, "complex_digest": cdigest, "coloring": ksrc, "coloring_digest": kdigest},
        "complex": c.name,
        "path": path,
        "monodromy": str(h),
    }
    if args.lift:
        gc = glue(c, col, simplicial=False)
        lifted = lift_path(gc, path)
        report["lifted"] = str(lifted)
        report["agree"] = lifted == h
        if lifted != h:
            raise CommandFailed(EXIT_MATH, "lifted path disagrees with the sum of crossed colors", report)
    report["warnings"] = warnings
    return report


# -- entry point --------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="report format")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (output does not depend on it)")

    p = argparse.ArgumentParser(prog="panelglue", description="Glue-back construction of (Z_2)^m-manifolds.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", parents=[common], help="check the panel structure axioms")
    v.add_argument("complex")
    v.set_defaults(func=cmd_validate)

    g = sub.add_parser("glue", parents=[common], help="build M(V, coloring) and report invariants")
    g.add_argument("complex")
    g.add_argument("coloring", help="coloring file, or inline 'P1:10,P2:01'")
    for flag in ("components", "euler", "betti", "orient", "free", "isotropy"):
        g.add_argument(f"--{flag}", action="store_true")
    g.add_argument("--all", action="store_true", help="every analysis above")
    g.add_argument("--partial", action="store_true", help="leave reflexive panels unglued (boundary mode)")
    g.add_argument("--action-table", action="store_true", help="top-cell permutation of each g (m <= 3)")
    g.add_argument("--no-subdivide", action="store_true", help="allow a non-simplicial quotient")
    g.set_defaults(func=cmd_glue)

    k = sub.add_parser("classify", parents=[common], help="count colorings and their orbits")
    k.add_argument("complex")
    k.add_argument("m", type=int)
    k.add_argument("--gl", action="store_true", help="quotient by GL(m, Z_2)")
    k.add_argument("--aut", metavar="GENFILE", help="automorphism generators (JSON)")
    k.add_argument("--burnside", action="store_true", help="also list orbit sizes")
    k.add_argument("--invariants", action="store_true", help="glue each listed representative")
    k.add_argument("--max-reps", type=int, default=50, help="representatives to list")
    k.set_defaults(func=cmd_classify)

    mo = sub.add_parser("monodromy", parents=[common], help="monodromy of a panel crossing sequence")
    mo.add_argument("complex")
    mo.add_argument("coloring")
    mo.add_argument("path", help="comma-separated panel ids, may be empty")
    mo.add_argument("--lift", action="store_true", help="also lift the path through the glued complex")
    mo.set_defaults(func=cmd_monodromy)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    if getattr(args, "all", False):
        for flag in ("components", "euler", "betti", "orient", "free", "isotropy"):
            setattr(args, flag, True)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_IO
    try:
        report = args.func(args)
    except CommandFailed as exc:
        if exc.report is not None:
            sys.stdout.write(render(exc.report, args.format))
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except GuardExceeded as exc:
        print(f"error: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ComplexError, ColoringError, DisconnectedBaseError, NotPseudomanifoldError,
            DimensionMismatch, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_MATH
    sys.stdout.write(render(report, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
