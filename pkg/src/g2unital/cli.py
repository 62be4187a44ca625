"""Command-line driver: ``g2unital <command> [--q Q] ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__

COMMANDS = ("verify", "counts", "onan", "iso", "group", "gamma", "pencil", "export")


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="g2unital", description="Split octonions over small fields and the G2(2) unital.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=2, help="field order (default 2)")
    common.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH")
    common.add_argument("--format", choices=("text", "json", "csv", "dot"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run the verification suite")
    v.add_argument("--deep", action="store_true", help="add the factorized group-order check at q = 3")
    v.add_argument("--no-timing", action="store_true", help="omit runtimes so reports are byte-identical")
    v.add_argument("--only", action="append", metavar="PREFIX", help="run only checks whose id starts with PREFIX")
    sub.add_parser("counts", parents=[common], help="family sizes and incidence numbers")
    sub.add_parser("onan", parents=[common], help="exhaustive O'Nan configuration search on U")
    sub.add_parser("iso", parents=[common], help="isomorphism between U and the hermitian unital H(3)")
    sub.add_parser("group", parents=[common], help="Aut O as a permutation group on D")
    sub.add_parser("gamma", parents=[common], help="graph on the nonisotropic points")
    pe = sub.add_parser("pencil", parents=[common], help="affine plane on the blocks through a point")
    pe.add_argument("--point", type=int, default=0)
    ex = sub.add_parser("export", parents=[common], help="write a structure in a line-based format")
    ex.add_argument("what", choices=("unital", "hermitian", "group", "gamma", "families"))
    return p


def _require_q(args, allowed):
    if args.q not in allowed:
        raise UsageError(f"{args.command} supports --q in {tuple(allowed)}, got {args.q}")


def _write_json(args, payload):
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _emit(args, payload: dict, text: str):
    """Print ``payload`` as JSON or ``text`` as text, and honour ``--json``."""
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif args.format == "text":
        sys.stdout.write(text)
    else:
        raise UsageError(f"{args.command} does not support --format {args.format}")
    _write_json(args, payload)


# commands ------------------------------------------------------------------------------------


def cmd_verify(args) -> int:
    from .report import emit_report, to_json
    from .verify import VERIFY_Q, run_checks

    _require_q(args, VERIFY_Q)
    if args.format == "dot":
        raise UsageError("verify does not support --format dot")
    rep = run_checks(args.q, seed=args.seed, deep=args.deep, timing=not args.no_timing, only=args.only)
    sys.stdout.buffer.write(emit_report(rep, args.format))
    sys.stdout.flush()
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(to_json(rep))
    if rep.failures:
        sys.stderr.write("failing checks: " + ", ".join(c.id for c in rep.failures) + "\n")
        return 1
    return 0


def cmd_counts(args) -> int:
    from .subalg import families
    from .verify import count_formulas, incidence_formulas

    _require_q(args, (2, 3))
    fam = families(args.q)
    counts = {"D": len(fam.D), "X": len(fam.X), "H": len(fam.H)}
    if args.q == 2:
        counts["L"] = len(fam.L)
    inc = {
        "X_D": len(fam.X_D[0]),
        "D_X": len(fam.D_X[0]),
        "H_D": len(fam.H_D[0]),
        "D_H": len(fam.D_H[0]),
    }
    expect = count_formulas(args.q)
    ok = all(counts[k] == expect[k] for k in expect) and inc == incidence_formulas(args.q)
    payload = {"q": args.q, "counts": counts, "incidence": inc, "match_formulas": ok}
    if args.format == "csv":
        rows = ["name,value"] + [f"{k},{v}" for k, v in {**counts, **inc}.items()]
        sys.stdout.write("\n".join(rows) + "\n")
        _write_json(args, payload)
    else:
        text = "".join(f"|{k}| = {v}\n" for k, v in counts.items())
        text += "".join(f"|{k}| = {v}\n" for k, v in inc.items())
        _emit(args, payload, text)
    return 0 if ok else 1


def cmd_onan(args) -> int:
    from .geometry import build_U, onan_search

    _require_q(args, (2,))
    r = onan_search(build_U(args.q))
    payload = {"configurations": [list(c) for c in r.configurations], "examined": r.examined}
    _emit(args, payload, r.summary() + "\n")
    return 0 if not r.configurations else 1


def cmd_iso(args) -> int:
    from .geometry import build_U, is_isomorphism, iso_search
    from .hermitian import build_hermitian_unital
    from .permgroup import perm_word

    _require_q(args, (2,))
    U, H = build_U(2), build_hermitian_unital(3)
    phi = iso_search(U, H)
    ok = phi is not None and is_isomorphism(U, H, phi)
    payload = {"isomorphic": ok, "map": list(phi) if phi else None}
    text = ("U ~ H(3): " + perm_word(phi) + "\n") if ok else "no isomorphism U -> H(3)\n"
    _emit(args, payload, text)
    return 0 if ok else 1


def _group_summary():
    from .autgrp import full_group

    G = full_group(2)
    P = G.points
    return {
        "order": P.order,
        "faithful": G.faithful,
        "orbit_sizes": [len(o) for o in P.orbits()],
        "transitive": P.is_transitive(),
        "doubly_transitive": P.is_2_transitive(),
        "derived_order": P.derived_subgroup().order,
    }


def cmd_group(args) -> int:
    _require_q(args, (2,))
    s = _group_summary()
    text = "".join(f"{k}: {v}\n" for k, v in s.items())
    _emit(args, s, text)
    return 0 if s["order"] == 12096 and s["faithful"] else 1


def cmd_gamma(args) -> int:
    from .geometry import gamma_graph, graph_to_dot

    _require_q(args, (2, 3, 4))
    g = gamma_graph(args.q)
    comps = g.components()
    payload = {"q": args.q, "vertices": len(g.vertices), "edges": len(g.edges), "components": [list(c) for c in comps]}
    if args.format == "dot":
        sys.stdout.write(graph_to_dot(g))
        _write_json(args, payload)
    else:
        text = f"{len(g.vertices)} vertices, {len(g.edges)} edges, {len(comps)} components of sizes {[len(c) for c in comps]}\n"
        _emit(args, payload, text)
    return 0


def cmd_pencil(args) -> int:
    from .geometry import affine_plane_3, design_to_text, iso_search, pencil_plane

    _require_q(args, (2,))
    if not 0 <= args.point < 28:
        raise UsageError("--point must lie in 0..27")
    P = pencil_plane(args.point)
    phi = iso_search(P, affine_plane_3())
    payload = {"point": args.point, "blocks": [list(b) for b in P.blocks], "labels": list(P.labels), "affine_plane": phi is not None}
    text = design_to_text(P) + f"isomorphic to AG(2,3): {phi is not None}\n"
    _emit(args, payload, text)
    return 0 if phi is not None else 1


def cmd_export(args) -> int:
    from .geometry import build_U, design_to_text, gamma_graph, graph_to_dot

    if args.what == "unital":
        _require_q(args, (2,))
        sys.stdout.write(design_to_text(build_U(2)))
    elif args.what == "hermitian":
        from .hermitian import build_hermitian_unital

        _require_q(args, (2, 3))
        sys.stdout.write(design_to_text(build_hermitian_unital(args.q)))
    elif args.what == "group":
        from .autgrp import full_group
        from .permgroup import perm_word

        _require_q(args, (2,))
        for row in full_group(2).points.elements:
            sys.stdout.write(perm_word(row) + "\n")
    elif args.what == "gamma":
        _require_q(args, (2, 3, 4))
        sys.stdout.write(graph_to_dot(gamma_graph(args.q)))
    elif args.what == "families":
        from .subalg import families, to_csv

        _require_q(args, (2, 3))
        fam = families(args.q)
        sys.stdout.write(to_csv(fam.D + fam.X + fam.H, args.q))
    return 0


HANDLERS = {
    "verify": cmd_verify,
    "counts": cmd_counts,
    "onan": cmd_onan,
    "iso": cmd_iso,
    "group": cmd_group,
    "gamma": cmd_gamma,
    "pencil": cmd_pencil,
    "export": cmd_export,
}


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse reports usage errors with status 2
        return int(e.code or 0)
    try:
        return HANDLERS[args.command](args)
    except UsageError as e:
        sys.stderr.write(f"g2unital {args.command}: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
