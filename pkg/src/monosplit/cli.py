"""Command-line front end.

JSON goes to stdout with sorted keys; diagnostics go to stderr.  Exit codes:
0 success, 1 a verification failed, 2 bad usage or input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import braids as br
from . import flux
from . import groupoid as gp
from . import polygon as pg
from . import quiver as qv
from . import surface as sf
from .automorphism import graph_automorphisms
from .errors import MonosplitError, NotMatchingError
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _load_json(arg: str):
    """Inline JSON, or a path to a JSON file."""
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {arg}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from exc


def _graph_out(graph, fmt: str) -> None:
    if fmt == "dot":
        sys.stdout.write(graph.to_dot())
    else:
        _emit(graph.to_json())


# ---------------------------------------------------------------------------
# polygon


def cmd_polygon(a) -> int:
    if a.action == "d-param":
        _emit({"k": a.k, "n": a.n, "d": pg.d_param(a.k, a.n)})
    elif a.action == "diagonals":
        _emit({"d": a.d, "n": a.n, "diagonals": [list(x.pair()) for x in pg.enumerate_n_diagonals(a.d, a.n)]})
    elif a.action == "angulations":
        angs = pg.enumerate_n_angulations(a.d, a.n)
        _emit({"d": a.d, "n": a.n, "count": len(angs), "angulations": [[list(p) for p in x.pairs()] for x in angs]})
    elif a.action == "exchange-graph":
        _graph_out(pg.exchange_graph(a.d, a.n), a.format)
    elif a.action == "automorphisms":
        g = pg.exchange_graph(a.d, a.n)
        order, gens = graph_automorphisms(g.adjacency)
        _emit({"d": a.d, "n": a.n, "vertices": len(g.vertices), "order": order, "generators": [list(x) for x in gens]})
    return 0


# ---------------------------------------------------------------------------
# surface


def _triangulation(a, frame: bool = True) -> sf.IdealTriangulation:
    if a.input:
        t = sf.IdealTriangulation.from_json(_load_json(a.input))
        return t.with_frame() if frame else t
    if a.g is None or not a.d:
        raise UsageError("give --input or both --g and --d")
    return sf.seed_triangulation(sf.build_surface(a.g, a.d))


def cmd_surface(a) -> int:
    if a.action == "counts":
        s = sf.build_surface(a.g, a.d)
        arcs, faces = sf.expected_counts(s)
        _emit({"surface": s.to_json(), "arcs": arcs, "triangles": faces})
        return 0
    t = _triangulation(a, frame=a.action != "validate")
    if a.action == "seed":
        _emit(t.to_json())
    elif a.action == "validate":
        rep = sf.validate_triangulation(t)
        _emit(rep.to_json())
        return 0 if rep.ok else 1
    elif a.action == "flip":
        if a.arc is None:
            raise UsageError("flip needs --arc")
        _emit(sf.flip(t, a.arc).to_json())
    elif a.action == "quiver":
        _emit(sf.dual_quiver_with_potential(t).to_json())
    elif a.action == "graph":
        _graph_out(sf.triangulation_graph(t, a.depth, a.max_vertices), a.format)
    return 0


# ---------------------------------------------------------------------------
# quiver


def _quiver(a) -> qv.QuiverWithPotential:
    if a.input:
        return qv.QuiverWithPotential.from_json(_load_json(a.input))
    if a.example == "ak":
        return qv.a_k_quiver(a.k)
    if a.example == "double-bubble":
        return qv.double_bubble_quiver()
    if a.example == "conifold":
        return qv.conifold_quiver()
    raise UsageError("give --input or --example")


def cmd_quiver(a) -> int:
    if a.action == "mutate":
        if a.matrix:
            B = np.array(_load_json(a.matrix), dtype=np.int64)
        else:
            B = _quiver(a).exchange_matrix()
        if not qv.is_skew_symmetric(B):
            raise UsageError("exchange matrix must be skew-symmetric")
        out = B
        for k in a.vertex:
            out = qv.mutate(out, k)
        _emit({"before": B.tolist(), "vertices": a.vertex, "after": out.tolist()})
    else:
        q = _quiver(a)
        data = q.to_json()
        data["exchange_matrix"] = q.exchange_matrix().tolist()
        data["euler_pairing"] = qv.euler_pairing_cy3(q).tolist()
        _emit(data)
    return 0


# ---------------------------------------------------------------------------
# braids


def _word(m: int, text: str | None) -> br.BraidWord:
    if text is None or text.strip() in ("", "1"):
        return br.BraidWord.identity(m)
    return br.BraidWord.parse(m, text)


def _arc(m: int, arg: str) -> br.Arc:
    data = _load_json(arg)
    return br.Arc.from_json(m, data)


def cmd_braid(a) -> int:
    if a.action == "eq":
        _emit({"w1": str(_word(a.m, a.w1)), "w2": str(_word(a.m, a.w2)),
               "equal": br.braid_eq(_word(a.m, a.w1), _word(a.m, a.w2))})
    elif a.action == "images":
        w = _word(a.m, a.w1)
        imgs = br.generator_images(w)
        _emit({"word": str(w), "images": {f"x{k}": list(imgs[k]) for k in range(1, a.m + 1)},
               "permutation": list(br.permutation(w))})
    elif a.action in ("rank", "intersection"):
        if not (a.arc1 and a.arc2):
            raise UsageError(f"{a.action} needs --arc1 and --arc2")
        a1, a2 = _arc(a.m, a.arc1), _arc(a.m, a.arc2)
        out = {"arc1": a1.to_json(), "arc2": a2.to_json(),
               "endpoints": [sorted(br.endpoints(a1)), sorted(br.endpoints(a2))],
               "interior_intersection": br.interior_intersection(a1, a2)}
        if a.action == "rank":
            out["class"] = str(br.hf_rank_class(a1, a2))
        _emit(out)
    elif a.action == "kernel":
        w = _word(3, a.w1)
        _emit({"word": str(w), "pure": br.is_pure(w),
               "in_kernel": br.in_kernel(w) if br.is_pure(w) else False,
               "trivial": br.is_trivial(w)})
    return 0


# ---------------------------------------------------------------------------
# groupoid


def cmd_groupoid(a) -> int:
    if a.action == "rigidity":
        rep = gp.rigidity_report()
        _emit(rep)
        return 0 if rep["only_identity_is_permutation"] and rep["distinct"] else 1
    if a.action == "enumerate":
        by_source = gp.enumerate_to_base_by_source(a.length)
        _emit({"length": a.length, "by_source": by_source, "total": sum(by_source.values())})
        return 0
    if not a.f:
        raise UsageError(f"{a.action} needs --f")
    f = gp.GroupoidMorphism.parse(a.f)
    if a.action == "eq":
        if not a.g:
            raise UsageError("eq needs --g")
        g = gp.GroupoidMorphism.parse(a.g)
        _emit({"f": str(f), "g": str(g), "equal": gp.morphism_eq(f, g)})
    else:
        out = {"morphism": str(f), "target": f.target, "braid": str(gp.realization(f)),
               "k_matrix": gp.k_matrix(f).tolist()}
        if f.is_loop():
            out["pure"] = gp.is_pure_loop(f)
        _emit(out)
    return 0


# ---------------------------------------------------------------------------
# flux


def _fibration(a) -> flux.Fibration:
    if a.fibration:
        return flux.Fibration.from_json(_load_json(a.fibration))
    return flux.conifold_fibration(Fraction(a.s), Fraction(a.t))


def _points(arg: str):
    return tuple(flux.vec(*p) for p in _load_json(arg))


def cmd_flux(a) -> int:
    if a.action == "surgery":
        v1, v2 = _load_json(a.v1), _load_json(a.v2)
        _emit({"v1": v1, "v2": v2, "type": str(flux.surgery_type(v1, v2))})
        return 0
    fib = _fibration(a)
    if a.action == "family":
        paths = flux.wrapped_family(fib, a.n)
        verdicts = flux.pairwise_verdicts(paths, fib, jobs=a.jobs)
        _emit({
            "fibration": fib.to_json(),
            "paths": [p.to_json() for p in paths],
            "matching": [flux.matching_data(p, fib).to_json() for p in paths],
            "pairs": [{"i": i, "j": j, **v.to_json()} for i, j, v in verdicts],
            "disjoint": sum(v.kind == "Disjoint" for *_, v in verdicts),
            "total": len(verdicts),
        })
        return 0
    if a.action == "monodromy":
        f = flux.monodromy_along(_points(a.path), fib)
        _emit({"A": [list(r) for r in f.A], "u": [flux._fmt(x) for x in f.u]})
        return 0
    if a.action == "matching":
        try:
            d = flux.matching_data(flux.MatchingPath(_points(a.path)), fib)
        except NotMatchingError as exc:
            sys.stderr.write(json.dumps({"error": str(exc), "certificate": exc.certificate}, sort_keys=True) + "\n")
            return 1
        _emit(d.to_json())
        return 0
    if a.action == "disjoint":
        if not a.path2:
            raise UsageError("disjoint needs --path and --path2")
        v = flux.spheres_disjoint(flux.MatchingPath(_points(a.path)), flux.MatchingPath(_points(a.path2)), fib)
        _emit(v.to_json())
        return 0
    raise UsageError(a.action)


# ---------------------------------------------------------------------------
# verify


def cmd_verify(a) -> int:
    results = run_suite(a.suite, a.seed)
    for r in results:
        mark = "PASS" if r["passed"] else "FAIL"
        sys.stderr.write(f"[{mark}] criterion {r['criterion']:2d} {r['name']}: {r['detail']}\n")
    failed = [r for r in results if not r["passed"]]
    _emit({"suite": a.suite, "seed": a.seed, "results": results,
           "passed": len(results) - len(failed), "failed": len(failed)})
    if failed:
        sys.stderr.write(json.dumps({"failed": [r["criterion"] for r in failed]}, sort_keys=True) + "\n")
        return 1
    return 0


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(json.dumps({"error": message}) + "\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="monosplit", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for pairwise work")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("polygon", help="n-diagonals, n-angulations and exchange graphs")
    q.add_argument("action", choices=["d-param", "diagonals", "angulations", "exchange-graph", "automorphisms"])
    q.add_argument("--d", type=int, default=5)
    q.add_argument("--n", type=int, default=3)
    q.add_argument("--k", type=int, default=1)
    q.add_argument("--format", choices=["json", "dot"], default="json")
    q.set_defaults(func=cmd_polygon)

    q = sub.add_parser("surface", help="triangulations of marked bordered surfaces")
    q.add_argument("action", choices=["counts", "seed", "validate", "flip", "quiver", "graph"])
    q.add_argument("--g", type=int)
    q.add_argument("--d", type=int, nargs="+")
    q.add_argument("--input", help="triangulation JSON (inline or file)")
    q.add_argument("--arc", type=int)
    q.add_argument("--depth", type=int)
    q.add_argument("--max-vertices", type=int, default=20_000)
    q.add_argument("--format", choices=["json", "dot"], default="json")
    q.set_defaults(func=cmd_surface)

    q = sub.add_parser("quiver", help="quivers with potential and mutation")
    q.add_argument("action", choices=["show", "mutate"])
    q.add_argument("--input", help="quiver JSON (inline or file)")
    q.add_argument("--matrix", help="exchange matrix as JSON")
    q.add_argument("--example", choices=["ak", "double-bubble", "conifold"])
    q.add_argument("--k", type=int, default=3)
    q.add_argument("--vertex", type=int, nargs="+", default=[0], help="0-based mutation sequence")
    q.set_defaults(func=cmd_quiver)

    q = sub.add_parser("braid", help="braid words, arcs and rank classes")
    q.add_argument("action", choices=["eq", "images", "rank", "intersection", "kernel"])
    q.add_argument("--m", type=int, default=3)
    q.add_argument("--w1")
    q.add_argument("--w2")
    q.add_argument("--arc1")
    q.add_argument("--arc2")
    q.set_defaults(func=cmd_braid)

    q = sub.add_parser("groupoid", help="the six-chamber groupoid")
    q.add_argument("action", choices=["rigidity", "eq", "show", "enumerate"])
    q.add_argument("--f")
    q.add_argument("--g")
    q.add_argument("--length", type=int, default=1)
    q.set_defaults(func=cmd_groupoid)

    q = sub.add_parser("flux", help="fibrations, matching paths and disjointness")
    q.add_argument("action", choices=["family", "matching", "disjoint", "monodromy", "surgery"])
    q.add_argument("--fibration", help="fibration JSON (inline or file); default is the conifold model")
    q.add_argument("--s", default="1")
    q.add_argument("--t", default="1")
    q.add_argument("--n", type=int, default=3)
    q.add_argument("--path")
    q.add_argument("--path2")
    q.add_argument("--v1")
    q.add_argument("--v2")
    q.set_defaults(func=cmd_flux)

    q = sub.add_parser("verify", help="run acceptance checks")
    q.add_argument("--suite", choices=sorted(SUITES), default="all")
    q.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, MonosplitError, ValueError, KeyError) as exc:
        sys.stderr.write(json.dumps({"error": f"{type(exc).__name__}: {exc}"}, sort_keys=True) + "\n")
        return 2


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
