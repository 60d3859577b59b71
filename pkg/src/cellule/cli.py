"""``cellule`` command line: products, KL polynomials, cells, c0, verification
suites and rank-2 plots. Every command builds a JSON report; exit code 0 means
no violations, 1 means violations, 2 means a usage or configuration error."""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from .coxeter import Element, GroupDescriptor, parse_type, parse_weights, parse_word
from .errors import CelluleError, StabilizationUnknown
from .laurent import LaurentPoly
from .svg import render_svg
from .verify import SUITES, Session, run_suite

MAX_LENGTH_CAP = 16
TYPES = ("A~1", "A~2", "C~2", "G~2", "B~3")


class UsageError(Exception):
    pass


def poly_json(p: LaurentPoly) -> dict[str, Any]:
    return {"str": str(p), "exp": p.to_json()}


def elem_json(S: Session, w: Element) -> dict[str, Any]:
    return {"word": S.word(w), "key": list(w.key)}


def parse_weight_arg(text: str | None, rank: int) -> dict[str, int] | list[int] | None:
    """Accepts ``s1=2,s2=1`` or a bare list ``2,1``; a single number applies to every generator."""
    if not text:
        return None
    if "=" in text:
        return parse_weights(text)
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse weights {text!r}") from exc
    if len(vals) == 1:
        return vals * (rank + 1)
    return vals


def build_session(args: argparse.Namespace) -> Session:
    fam, rank = parse_type(args.type)
    if f"{fam}~{rank}" not in TYPES:
        raise UsageError(f"type must be one of {', '.join(TYPES)}")
    weights = parse_weight_arg(args.weights, rank)
    from .coxeter import CoxeterSystem

    return Session(CoxeterSystem(GroupDescriptor.make(fam, rank, weights)))


def _max_length(args: argparse.Namespace, default: int | None) -> int | None:
    N = args.max_length if args.max_length is not None else default
    if N is not None and not 0 <= N <= MAX_LENGTH_CAP:
        raise UsageError(f"--max-length must be between 0 and {MAX_LENGTH_CAP}")
    return N


# -- commands ---------------------------------------------------------------


def cmd_mult(S: Session, args) -> tuple[list, list, list]:
    W, G, H = S.W, S.geometry, S.hecke
    x = W.word_to_element(parse_word(args.x))
    y = W.word_to_element(parse_word(args.y))
    prod = H.t_multiply(x, y)
    c = G.c_total(y, W.multiply(x, y))
    deg = prod.max_degree()
    ok = deg <= c and deg <= W.nu_tilde
    terms = [{"z": elem_json(S, z), "f": poly_json(p), "deg": p.deg} for z, p in prod]
    res = {"x": elem_json(S, x), "y": elem_json(S, y), "terms": terms, "c_xy": c, "nu_tilde": W.nu_tilde, "max_deg": deg, "ok": ok}
    viol = [] if ok else [{"x": S.word(x), "y": S.word(y), "max_deg": deg, "c_xy": c}]
    return [res], viol, []


def cmd_klpoly(S: Session, args) -> tuple[list, list, list]:
    W, H = S.W, S.hecke
    y = W.word_to_element(parse_word(args.y))
    w = W.word_to_element(parse_word(args.w))
    return [{"y": elem_json(S, y), "w": elem_json(S, w), "P": poly_json(H.kl_poly(y, w))}], [], []


def cmd_cells(S: Session, args) -> tuple[list, list, list]:
    N = _max_length(args, 6)
    part = S.cells.cell_partition(S.cells.left_preorder_graph(N))
    res = [
        {"block": i, "open": op, "size": len(b), "elements": [elem_json(S, w) for w in b]}
        for i, (b, op) in enumerate(zip(part.blocks, part.open))
    ]
    caveats = [f"cells computed inside ball({N}); blocks marked open touch the boundary"]
    return res, [], caveats


def cmd_c0(S: Session, args) -> tuple[list, list, list]:
    N = _max_length(args, 10)
    LC = S.cells
    members = [w for w in S.W.ball(N) if LC.c0_contains(w, check=True)]
    if not args.decompose:
        return [{"max_length": N, "size": len(members), "elements": [elem_json(S, w) for w in members]}], [], []
    blocks: dict[tuple, dict] = {}
    for lam in LC.R:
        for z in LC.M(lam):
            blocks[(lam.vertex_type, z.key)] = {"lambda": lam.name, "z": elem_json(S, z), "elements": []}
    for w in members:
        a = LC.assign_N(w)
        blocks[a.label]["elements"].append(elem_json(S, w))
    res = list(blocks.values())
    caveats = [f"blocks truncated to ball({N})"]
    return res, [], caveats


def cmd_verify(S: Session, args) -> tuple[list, list, list]:
    N = _max_length(args, None)
    try:
        rep = run_suite(S, args.suite, N)
    except StabilizationUnknown as exc:
        return [], [{"check": "stabilization", "error": str(exc)}], [str(exc)]
    viol = rep.pop("violations")
    caveats = rep.pop("caveats")
    rep.pop("seconds", None)
    return [rep], viol, caveats


def cmd_plot(S: Session, args) -> tuple[list, list, list]:
    svg = render_svg(S.cells, args.window)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return [{"out": args.out, "window": args.window, "alcoves": svg.count("<polygon"), "special_points": svg.count('class="special"')}], [], []


COMMANDS = {
    "mult": cmd_mult,
    "klpoly": cmd_klpoly,
    "cells": cmd_cells,
    "c0": cmd_c0,
    "verify": cmd_verify,
    "plot": cmd_plot,
}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-length", type=int, default=None)
    common.add_argument("--json", metavar="FILE", help="write the report here ('-' for stdout)")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    p = argparse.ArgumentParser(prog="cellule", description=__doc__)
    p.add_argument("--type", required=True, help="one of " + ", ".join(TYPES))
    p.add_argument("--weights", default=None, help="'s1=2,s2=1,...' or '2,1,...'")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mult", parents=[common], help="T_x T_y with the degree bound")
    m.add_argument("x")
    m.add_argument("y")
    k = sub.add_parser("klpoly", parents=[common], help="P_{y,w}")
    k.add_argument("y")
    k.add_argument("w")
    sub.add_parser("cells", parents=[common], help="left cells inside a ball")
    c = sub.add_parser("c0", parents=[common], help="the lowest two-sided cell inside a ball")
    c.add_argument("--decompose", action="store_true")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    pl = sub.add_parser("plot", parents=[common], help="SVG of a rank-2 window")
    pl.add_argument("--out", required=True)
    pl.add_argument("--window", type=int, default=2)
    return p


def _print_human(report: dict) -> None:
    cmd = report["command"]
    for res in report["results"]:
        if cmd == "mult":
            for t in res["terms"]:
                print(f"{t['z']['word']:>24}  {t['f']['str']:<20} deg {t['deg']}")
            status = "ok" if res["ok"] else "VIOLATION"
            print(f"max deg {res['max_deg']}  c_xy {res['c_xy']}  nu_tilde {res['nu_tilde']}  {status}")
        elif cmd == "klpoly":
            print(res["P"]["str"])
        elif cmd == "cells":
            flag = " (open)" if res["open"] else ""
            print(f"block {res['block']}{flag}: " + ", ".join(e["word"] for e in res["elements"]))
        elif cmd == "c0" and "lambda" in res:
            words = ", ".join(e["word"] for e in res["elements"])
            print(f"N(lambda={res['lambda']}, z={res['z']['word']}): {words}")
        elif cmd == "c0":
            print(f"{res['size']} elements of c0 up to length {res['max_length']}")
        elif cmd == "verify":
            print(f"{res['suite']} {res['type']} {json.dumps(res['weights'], sort_keys=True)}: checked {res['checked']}")
        elif cmd == "plot":
            print(f"wrote {res['out']} ({res['alcoves']} alcoves)")
    for c in report["caveats"]:
        print(f"caveat: {c}")
    print(f"violations: {len(report['violations'])}")


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        S = build_session(args)
        results, violations, caveats = COMMANDS[args.command](S, args)
    except (UsageError, CelluleError, ValueError) as exc:
        print(f"cellule: error: {exc}", file=sys.stderr)
        return 2
    config = {"type": S.W.descriptor.label, "weights": dict(zip(S.W.generators, S.W.weights))}
    config.update({k: v for k, v in vars(args).items() if k not in ("type", "weights", "json", "timing")})
    report = {
        "command": args.command,
        "config": config,
        "results": results,
        "violations": violations,
        "timing": {"seconds": round(time.perf_counter() - t0, 3)} if args.timing else {},
        "caveats": caveats,
    }
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if args.json == "-":
        print(text)
    else:
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        _print_human(report)
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
