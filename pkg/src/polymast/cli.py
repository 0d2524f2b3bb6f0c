"""Command-line interface.

Exit status: 0 on success, 1 when the input is well formed but rejected
(not a polygonal 2-tree, oracle guard exceeded, oracle disagreement), 2 when
the input cannot be read or parsed.  Results go to stdout, diagnostics to
stderr.  ``--json`` prints the same fields as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import bench as bench_mod
from .cycles import basis_size, induced_cycles
from .decomposition import NotPolygonalError, recognize
from .generator import BIASES, GenSpec, generate, generate_kgonal
from .io import FormatError, format_edge_list, parse_edge_list
from .mast import run_mast
from .oracle import MAX_CYCLES, MAX_TREE_EDGES, OracleGuardError, brute_force_mast, horton_mcb
from .stretch import fundamental_cycles

EXIT_OK, EXIT_REJECT, EXIT_MALFORMED = 0, 1, 2


class _Malformed(Exception):
    pass


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _load(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise _Malformed(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return parse_edge_list(text)
    except FormatError as exc:
        raise _Malformed(f"{path}: {exc}") from exc


def _emit(args, fields: dict, lines: List[str]) -> None:
    if args.json:
        sys.stdout.write(json.dumps(fields) + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in lines))


def _ids(xs) -> str:
    return " ".join(map(str, xs))


def _decompose(g):
    out = recognize(g)
    return out.unwrap()


def cmd_recognize(args) -> int:
    g = _load(args.file)
    out = recognize(g)
    if not out.accepted:
        print(f"rejected: {out.reason}: {out.detail}", file=sys.stderr)
        _emit(args, {"accepted": False, "reason": out.reason, "detail": out.detail},
              [f"rejected {out.reason}"])
        return EXIT_REJECT
    d = out.decomposition
    fields = {"accepted": True, "ears": len(d)}
    lines = [f"accepted {len(d)}"]
    if args.emit_ears:
        ears = [list(ear.vertices) for ear in d]
        fields["ear_list"] = ears
        lines = [_ids(vs) for vs in ears]
    _emit(args, fields, lines)
    return EXIT_OK


def cmd_mast(args) -> int:
    g = _load(args.file)
    res = run_mast(g, _decompose(g))
    _emit(
        args,
        {
            "tree": list(res.tree),
            "removed": list(res.removal_order),
            "total_stretch": res.total_stretch,
            "avg_stretch": _frac(res.average_stretch),
            "fcb_size": res.fcb_size,
        },
        [
            f"tree {_ids(res.tree)}",
            f"removed {_ids(res.removal_order)}",
            f"total_stretch {res.total_stretch}",
            f"avg_stretch {_frac(res.average_stretch)}",
            f"fcb_size {res.fcb_size}",
        ],
    )
    return EXIT_OK


def cmd_mfcb(args) -> int:
    g = _load(args.file)
    res = run_mast(g, _decompose(g))
    cycles = fundamental_cycles(g, res.tree)
    size = sum(len(c) for c in cycles)
    _emit(
        args,
        {"cycles": [list(c.edges) for c in cycles], "fcb_size": size},
        [f"{len(c)} {_ids(c.edges)}" for c in cycles] + [f"fcb_size {size}"],
    )
    return EXIT_OK


def cmd_mcb(args) -> int:
    g = _load(args.file)
    s = induced_cycles(g, _decompose(g))
    cycles = s.cycles
    size = basis_size(s)
    _emit(
        args,
        {"cycles": [list(c.edges) for c in cycles], "size": size},
        [f"{len(c)} {_ids(c.edges)}" for c in cycles] + [f"size {size}"],
    )
    return EXIT_OK


def cmd_distortion(args) -> int:
    g = _load(args.file)
    value = run_mast(g, _decompose(g)).average_stretch
    _emit(args, {"distortion": _frac(value)}, [f"distortion {_frac(value)}"])
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        if args.kgonal is not None:
            g = generate_kgonal(args.kgonal, args.polygons or 1, seed=args.seed, bias=args.bias)
        else:
            if args.n is None:
                raise ValueError("--n is required unless --kgonal is given")
            spec = GenSpec(target_n=args.n, seed=args.seed, ear_max=args.ear_max, bias=args.bias)
            g, _ = generate(spec)
    except ValueError as exc:
        raise _Malformed(str(exc)) from exc
    if args.json:
        _emit(args, {"n": g.n, "m": g.m, "edges": [list(e) for e in g.edges]}, [])
    else:
        sys.stdout.write(format_edge_list(g))
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    g = _load(args.file)
    rep = brute_force_mast(g)
    out = recognize(g)
    checks = [("recognizer_agrees", out.accepted == rep.is_polygonal)]
    if out.accepted:
        res = run_mast(g, out.decomposition)
        s = induced_cycles(g, out.decomposition)
        _, horton = horton_mcb(g)
        fast_set = {frozenset(c.edges) for c in s}
        checks += [
            ("total_stretch", res.total_stretch == rep.min_total_stretch),
            ("tree_is_optimal", tuple(res.tree) in rep.optimal_trees),
            ("mcb_size", basis_size(s) == rep.mcb_size),
            ("mcb_set", fast_set == {frozenset(c.edges) for c in horton}),
        ]
    fields = {
        "min_total_stretch": rep.min_total_stretch,
        "optimal_tree_count": rep.optimal_tree_count,
        "optimal_tree": list(rep.optimal_tree),
        "mcb_size": rep.mcb_size,
        "is_polygonal": rep.is_polygonal,
        "checks": {name: ok for name, ok in checks},
    }
    lines = [
        f"min_total_stretch {rep.min_total_stretch}",
        f"optimal_tree_count {rep.optimal_tree_count}",
        f"optimal_tree {_ids(rep.optimal_tree)}",
        f"mcb_size {rep.mcb_size}",
        f"is_polygonal {str(rep.is_polygonal).lower()}",
    ] + [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in checks]
    _emit(args, fields, lines)
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_REJECT


def cmd_bench(args) -> int:
    sizes = args.sizes or list(bench_mod.DEFAULT_SIZES)
    if any(s < 3 for s in sizes) or args.seeds < 1 or args.repeats < 1:
        raise _Malformed("sizes must be >= 3, --seeds and --repeats >= 1")
    records = bench_mod.run_bench(
        sizes, args.seeds, bias=args.bias, ear_max=args.ear_max, repeats=args.repeats
    )
    summary = bench_mod.summarize(records, sizes)
    if args.json:
        _emit(args, {"records": [r.as_dict() for r in records], **summary}, [])
    else:
        sys.stdout.write(bench_mod.format_table(records, sizes))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="polymast",
        description="Polygonal 2-trees: recognition, minimum average stretch trees, cycle bases.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, helptext, func):
        sp = sub.add_parser(name, help=helptext, description=helptext)
        sp.add_argument("file", help="edge-list file, or - for stdin")
        sp.add_argument("--json", action="store_true", help="print one JSON object")
        sp.set_defaults(func=func)
        return sp

    sp = with_file("recognize", "accept or reject a polygonal 2-tree", cmd_recognize)
    sp.add_argument("--emit-ears", action="store_true", help="print one line of vertices per ear")
    with_file("mast", "minimum average stretch spanning tree", cmd_mast)
    with_file("mfcb", "minimum fundamental cycle basis (of the MAST)", cmd_mfcb)
    with_file("mcb", "minimum cycle basis (the induced cycles)", cmd_mcb)
    with_file("distortion", "least distortion of a tree embedding", cmd_distortion)
    with_file(
        "oracle-check",
        f"compare against exhaustive oracles (m <= {MAX_TREE_EDGES}, "
        f"at most {MAX_CYCLES} candidate cycles; larger inputs are refused)",
        cmd_oracle_check,
    )

    sp = sub.add_parser("gen", help="generate a polygonal 2-tree edge list")
    sp.add_argument("--n", type=int, help="stop once at least this many vertices exist")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--kgonal", type=int, metavar="K", help="every ear has K-1 edges")
    sp.add_argument("--polygons", type=int, metavar="R", help="number of K-gons (with --kgonal)")
    sp.add_argument("--ear-max", type=int, default=3, metavar="L", help="ear edges uniform in [2, L]")
    sp.add_argument("--bias", choices=BIASES, default="uniform", help="host edge choice")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="time the solve phase over growing generated instances")
    sp.add_argument("--sizes", type=int, nargs="+", help="target vertex counts (default 2^17..2^21)")
    sp.add_argument("--seeds", type=int, default=3, help="instances per size")
    sp.add_argument("--repeats", type=int, default=3, help="solves per instance; the fastest counts")
    sp.add_argument("--ear-max", type=int, default=3, metavar="L")
    sp.add_argument("--bias", choices=BIASES, default="uniform")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _Malformed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except NotPolygonalError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECT
    except OracleGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REJECT


if __name__ == "__main__":
    sys.exit(main())
