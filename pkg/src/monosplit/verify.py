"""Acceptance checks, one function per criterion.

Each check returns ``(passed, detail)``.  Sampling uses a ``random.Random``
seeded by the caller so repeated runs agree.
"""
from __future__ import annotations

import random
from collections.abc import Callable
from dataclasses import dataclass
from math import comb

import numpy as np

from . import braids as br
from . import flux
from . import groupoid as gp
from .automorphism import brute_force_automorphism_count
from .polygon import d_param, enumerate_n_angulations, exchange_graph, rotate
from .quiver import flip_mutation_compatible
from .surface import (
    build_surface,
    dual_quiver_with_potential,
    expected_counts,
    flip,
    flippable_arcs,
    seed_triangulation,
    triangulation_graph,
    validate_triangulation,
)


def catalan_dp(k: int) -> int:
    """Triangulations of a (k+2)-gon by the root-triangle recurrence."""
    c = [1]
    for n in range(1, k + 1):
        c.append(sum(c[i] * c[n - 1 - i] for i in range(n)))
    return c[k]


def fuss_catalan(m: int) -> int:
    """Quadrangulations of a (2m+2)-gon."""
    return comb(3 * m, m) // (2 * m + 1)


def check_d_table(rng) -> tuple[bool, str]:
    want = {(1, 3): 4, (2, 3): 5, (3, 3): 6, (1, 4): 6}
    got = {kn: d_param(*kn) for kn in want}
    return got == want, f"{got}"


def check_angulation_counts(rng) -> tuple[bool, str]:
    cases = {(5, 3): catalan_dp(3), (6, 3): catalan_dp(4), (7, 3): catalan_dp(5),
             (6, 4): fuss_catalan(2), (8, 4): fuss_catalan(3)}
    got = {dn: len(enumerate_n_angulations(*dn)) for dn in cases}
    return got == cases, f"got {got}, oracle {cases}"


def check_pentagon_graph(rng) -> tuple[bool, str]:
    g = exchange_graph(5, 3)
    adj = g.adjacency
    cycle = len(adj) == 5 and all(len(a) == 2 for a in adj)
    # connected and 2-regular on 5 vertices means a 5-cycle
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    cycle = cycle and len(seen) == 5
    order = brute_force_automorphism_count(adj)
    free = all(rotate(r, v).key() != v.key() for v in g.vertices for r in range(1, 5))
    period = all(rotate(5, v).key() == v.key() for v in g.vertices)
    ok = cycle and order == 10 and free and period
    return ok, f"5-cycle={cycle}, |Aut|={order}, rotations free={free}, order divides 5={period}"


SURFACES = [(0, (7,)), (0, (8,)), (1, (3,)), (0, (3, 3))]


def check_counts(rng) -> tuple[bool, str]:
    rows = []
    ok = True
    for g, d in SURFACES:
        s = build_surface(g, d)
        t = seed_triangulation(s)
        got = (len(t.arcs), len(t.sides))
        exp = expected_counts(s)
        good = got == exp and validate_triangulation(t).ok
        ok &= good
        rows.append(f"{(g, d)}: {got} vs {exp}")
    return ok, "; ".join(rows)


def check_flip_mutation(rng) -> tuple[bool, str]:
    rows = []
    ok = True
    for (g, d), depth in (((0, (7,)), None), ((0, (8,)), None), ((0, (3, 3)), 3)):
        graph = triangulation_graph(seed_triangulation(build_surface(g, d)), depth)
        tested = 0
        for t in graph.vertices:
            for arc in flippable_arcs(t):
                tested += 1
                ok &= flip_mutation_compatible(t, arc)
        rows.append(f"{(g, d)}: {len(graph.vertices)} triangulations, {tested} flips")
    return ok, "; ".join(rows)


def _random_triangulation(rng, g, d, steps):
    t = seed_triangulation(build_surface(g, d))
    for _ in range(steps):
        t = flip(t, rng.choice(flippable_arcs(t)))
    return t


def check_potential_terms(rng) -> tuple[bool, str]:
    pool = [(1, (3,)), (1, (4,)), (0, (8,)), (0, (4, 4)), (0, (3, 3, 3)), (1, (3, 3))]
    samples = [(1, (3,))] + [rng.choice(pool) for _ in range(19)]
    ok = True
    for g, d in samples:
        t = _random_triangulation(rng, g, d, rng.randint(0, 12))
        q = dual_quiver_with_potential(t)
        ok &= len(q.potential) == len(t.interior_triangles()) and validate_triangulation(t).ok
    return ok, f"{len(samples)} triangulations"


def _random_braid(rng, m, max_len):
    return br.BraidWord(m, tuple(rng.choice((1, -1)) * rng.randint(1, m - 1) for _ in range(rng.randint(0, max_len))))


def check_braid_engine(rng) -> tuple[bool, str]:
    B = br.BraidWord.parse
    rel = br.braid_eq(B(3, "s1 s2 s1"), B(3, "s2 s1 s2"))
    comm = br.braid_eq(B(4, "s1 s3"), B(4, "s3 s1"))
    distinct = not br.braid_eq(B(3, "s1"), B(3, "s2"))
    law = True
    for _ in range(1000):
        m = rng.randint(2, 5)
        w1, w2 = _random_braid(rng, m, 12), _random_braid(rng, m, 12)
        x = tuple(rng.choice((1, -1)) * rng.randint(1, m) for _ in range(rng.randint(1, 4)))
        law &= br.artin_apply(w1 * w2, x) == br.artin_apply(w1, br.artin_apply(w2, x))
    ok = rel and comm and distinct and law
    return ok, f"braid relation={rel}, commutation={comm}, s1!=s2={distinct}, action law on 1000 pairs={law}"


def rank_examples():
    B = br.BraidWord.parse
    b = br.Arc.base_arc
    return [
        (b(3, 1), b(3, 2), "Rank1"),
        (b(4, 1), b(4, 3), "Rank0"),
        (br.apply_to_arc(B(4, "s2"), b(4, 1)), br.apply_to_arc(B(4, "s3"), b(4, 2)), "Rank2Interior"),
        (b(3, 1), br.apply_to_arc(B(3, "s2 s2"), b(3, 1)), "Rank2SharedEndpoints"),
    ]


def check_rank_classes(rng) -> tuple[bool, str]:
    got = [br.hf_rank_class(a1, a2).kind for a1, a2, _ in rank_examples()]
    want = [w for *_, w in rank_examples()]
    stable = True
    for _ in range(100):
        for a1, a2, w in rank_examples():
            beta = _random_braid(rng, a1.m, 8)
            cls = br.hf_rank_class(br.apply_to_arc(beta, a1), br.apply_to_arc(beta, a2))
            stable &= cls.kind == w
    return got == want and stable, f"classes {got}, invariant under 100 random actions={stable}"


def check_groupoid_rigidity(rng) -> tuple[bool, str]:
    mats = gp.six_composites()
    keys = {tuple(a.ravel()) for a in mats}
    distinct = len(keys) == 6
    braid = bool(np.array_equal(gp.R1 @ gp.R2 @ gp.R1, gp.R2 @ gp.R1 @ gp.R2))
    perm = gp.only_identity_is_permutation()
    closed = gp.k_matrices_up_to(8) <= keys
    ok = distinct and braid and perm and closed
    return ok, f"distinct={distinct}, r1r2r1=r2r1r2={braid}, only identity permutation={perm}, length<=8 closed={closed}"


def check_deligne(rng) -> tuple[bool, str]:
    P = gp.GroupoidMorphism.parse
    hexagon = gp.morphism_eq(P("L121: F1 F2 F1"), P("L121: F2 F1 F2"))
    loops_ok = True
    for text in ("L: F1 F1", "L: F2 F2", "L: f1 f1", "L: F1 f1 F2 F2"):
        f = P(text)
        loops_ok &= f.is_loop() and gp.is_pure_loop(f) and not gp.morphism_eq(f, gp.identity("L"))
    count = gp.enumerate_to_base(1)
    ok = hexagon and loops_ok and count == 5
    return ok, f"hexagon halves equal={hexagon}, out-and-back loops pure and nontrivial={loops_ok}, enumerate_to_base(1)={count}"


def check_flux_family(rng) -> tuple[bool, str]:
    fib = flux.conifold_fibration(1, 1)
    verdicts = flux.pairwise_verdicts(flux.wrapped_family(fib, 10), fib)
    n_disjoint = sum(v.kind == "Disjoint" and v.verify() for *_, v in verdicts)
    fib0 = flux.conifold_fibration(0, 0)
    verdicts0 = flux.pairwise_verdicts(flux.wrapped_family(fib0, 10), fib0)
    n_unknown = sum(v.kind == "Unknown" for *_, v in verdicts0)
    ok = len(verdicts) == 45 and n_disjoint == 45 and n_unknown >= 1
    return ok, f"(1,1): {n_disjoint}/{len(verdicts)} Disjoint; (0,0): {n_unknown} Unknown"


def check_kernel(rng) -> tuple[bool, str]:
    c = br.commutator(br.pure_generator(3, 1, 2), br.pure_generator(3, 2, 3))
    member = br.in_kernel(c)
    nontrivial = not br.is_trivial(c)
    return member and nontrivial, f"in kernel={member}, nontrivial={nontrivial}"


def check_surgery(rng) -> tuple[bool, str]:
    got = [str(flux.surgery_type((1, 0), (0, 1))), str(flux.surgery_type((1, 0), (1, 0))),
           str(flux.surgery_type((1, 1), (1, -1)))]
    return got == ["ThreeSphere", "SphereProduct", "LensLike(2)"], f"{got}"


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    run: Callable


CRITERIA = [
    Criterion(1, "d_table", check_d_table),
    Criterion(2, "angulation_counts", check_angulation_counts),
    Criterion(3, "pentagon_exchange_graph", check_pentagon_graph),
    Criterion(4, "edge_face_counts", check_counts),
    Criterion(5, "flip_mutation", check_flip_mutation),
    Criterion(6, "potential_terms", check_potential_terms),
    Criterion(7, "braid_engine", check_braid_engine),
    Criterion(8, "hf_rank_classes", check_rank_classes),
    Criterion(9, "groupoid_rigidity", check_groupoid_rigidity),
    Criterion(10, "deligne_word_problem", check_deligne),
    Criterion(11, "flux_family", check_flux_family),
    Criterion(12, "kernel_membership", check_kernel),
    Criterion(13, "surgery_typing", check_surgery),
]

SUITES = {
    "all": [c.number for c in CRITERIA],
    "polygon": [1, 2, 3],
    "surface": [4, 5, 6],
    "braid": [7, 8, 12],
    "groupoid": [9, 10],
    "flux": [11, 13],
}


def run_criterion(c: Criterion, seed: int = 0) -> dict:
    rng = random.Random(seed * 1000 + c.number)
    try:
        ok, detail = c.run(rng)
    except Exception as exc:  # a crash counts as a failure, reported verbatim
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return {"criterion": c.number, "name": c.name, "passed": bool(ok), "detail": detail}


def run_suite(name: str = "all", seed: int = 0) -> list[dict]:
    if name not in SUITES:
        raise KeyError(name)
    wanted = set(SUITES[name])
    return [run_criterion(c, seed) for c in CRITERIA if c.number in wanted]
