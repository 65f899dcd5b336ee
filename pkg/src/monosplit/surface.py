"""Marked bordered surfaces and their ideal triangulations.

A triangulation is a combinatorial map: each triangle lists its three corners
(marked-point ids, anticlockwise) and three side labels, side k running from
corner k to corner k+1.  Non-negative labels are arcs and occur on exactly two
sides; a negative label ``-(1 + p)`` is the boundary segment leaving marked
point ``p`` and occurs once.

Isotopy classes of arcs rel the marked points are tracked through a *frame*:
every side carries a reduced word in the free fundamental group of the seed
triangulation, describing the side as a path between marked points.  Two
triangulations explored from the same seed coincide iff their sets of
(endpoints, word) arc keys coincide, so mapping classes are never quotiented
away.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from . import freegroup as fg
from .errors import ArgumentError, FlipUndefinedError, ResourceError
from .polygon import NAngulation, graph_to_dot
from .quiver import Arrow, PotentialTerm, QuiverWithPotential


@dataclass(frozen=True)
class MarkedSurface:
    g: int
    d: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if self.g < 0:
            raise ArgumentError("genus must be >= 0")
        if not self.d:
            raise ArgumentError("need at least one pole")
        bad = [x for x in self.d if x <= 2]
        if bad:
            raise ArgumentError(f"pole orders must exceed 2, got {list(self.d)}")

    @property
    def boundary_components(self) -> int:
        return len(self.d)

    @property
    def marked_counts(self) -> tuple[int, ...]:
        return tuple(x - 2 for x in self.d)

    @property
    def n_marked(self) -> int:
        return sum(self.marked_counts)

    def point(self, boundary: int, j: int) -> int:
        m = self.marked_counts
        return sum(m[:boundary]) + j % m[boundary]

    def boundary_of(self, p: int) -> tuple[int, int]:
        for i, m in enumerate(self.marked_counts):
            if p < m:
                return i, p
            p -= m
        raise ArgumentError("marked point out of range")

    def next_point(self, p: int) -> int:
        i, j = self.boundary_of(p)
        return self.point(i, j + 1)

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.g - len(self.d)

    def to_json(self) -> dict:
        return {"g": self.g, "d": list(self.d)}


def build_surface(g: int, d) -> MarkedSurface:
    return MarkedSurface(int(g), tuple(d))


def expected_counts(s: MarkedSurface) -> tuple[int, int]:
    """(#arcs, #triangles) of any ideal triangulation."""
    return 6 * s.g - 6 + sum(x + 1 for x in s.d), 4 * s.g - 4 + sum(s.d)


def segment_label(p: int) -> int:
    return -(1 + p)


def is_arc(label: int) -> bool:
    return label >= 0


@dataclass(frozen=True)
class IdealTriangulation:
    surface: MarkedSurface
    corners: tuple[tuple[int, int, int], ...]
    sides: tuple[tuple[int, int, int], ...]
    words: tuple[tuple[fg.Word, fg.Word, fg.Word], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "corners", tuple(tuple(int(x) for x in c) for c in self.corners))
        object.__setattr__(self, "sides", tuple(tuple(int(x) for x in s) for s in self.sides))

    # -- basic structure -------------------------------------------------

    @cached_property
    def occurrences(self) -> dict[int, list[tuple[int, int]]]:
        occ: dict[int, list[tuple[int, int]]] = {}
        for t, row in enumerate(self.sides):
            for k, lab in enumerate(row):
                occ.setdefault(lab, []).append((t, k))
        return occ

    @property
    def arcs(self) -> list[int]:
        return sorted(lab for lab in self.occurrences if is_arc(lab))

    def endpoints(self, t: int, k: int) -> tuple[int, int]:
        return self.corners[t][k], self.corners[t][(k + 1) % 3]

    def other_side(self, t: int, k: int) -> tuple[int, int]:
        occ = self.occurrences[self.sides[t][k]]
        if len(occ) != 2:
            raise ArgumentError(f"side ({t},{k}) is not glued")
        return occ[1] if occ[0] == (t, k) else occ[0]

    def is_interior_triangle(self, t: int) -> bool:
        return all(is_arc(x) for x in self.sides[t])

    def interior_triangles(self) -> list[int]:
        return [t for t in range(len(self.sides)) if self.is_interior_triangle(t)]

    # -- frame -------------------------------------------------------------

    def with_frame(self) -> IdealTriangulation:
        """Attach seed-frame words if missing (requires a valid map)."""
        if self.words is not None:
            return self
        return IdealTriangulation(self.surface, self.corners, self.sides, compute_frame(self))

    @cached_property
    def arc_keys(self) -> dict[int, tuple]:
        t = self.with_frame()
        keys = {}
        for lab in self.arcs:
            tt, k = self.occurrences[lab][0]
            p, q = self.endpoints(tt, k)
            w = t.words[tt][k]
            keys[lab] = min((p, q, w), (q, p, fg.inverse(w)))
        return keys

    def canonical_form(self) -> tuple:
        """Sorted arc keys; equal iff the triangulations agree up to isotopy rel M."""
        return tuple(sorted(self.arc_keys.values()))

    # -- serialization -----------------------------------------------------

    def gluings(self) -> list[list[int]]:
        out = []
        for lab in self.arcs:
            occ = self.occurrences[lab]
            if len(occ) == 2:
                (t1, k1), (t2, k2) = occ
                out.append([t1, k1, t2, k2, lab])
        return out

    def to_json(self) -> dict:
        return {
            "surface": self.surface.to_json(),
            "triangles": [{"corners": list(c), "sides": list(s)} for c, s in zip(self.corners, self.sides)],
            "gluings": self.gluings(),
        }

    @classmethod
    def from_json(cls, data: dict | str) -> IdealTriangulation:
        if isinstance(data, str):
            data = json.loads(data)
        surf = build_surface(data["surface"]["g"], data["surface"]["d"])
        corners = [tuple(tr["corners"]) for tr in data["triangles"]]
        sides = [list(tr["sides"]) for tr in data["triangles"]]
        t = cls(surf, tuple(corners), tuple(tuple(s) for s in sides))
        if "gluings" in data:
            got = sorted(tuple(x) for x in data["gluings"])
            if got != sorted(tuple(x) for x in t.gluings()):
                raise ArgumentError("gluings disagree with triangle side labels")
        return t


# ---------------------------------------------------------------------------
# frame words


def _fan_words(t: IdealTriangulation, crossing) -> dict[tuple[int, int], fg.Word]:
    """Word of the fan walk from each point's first corner to every corner."""
    surf = t.surface
    out: dict[tuple[int, int], fg.Word] = {}
    for p in range(surf.n_marked):
        occ = t.occurrences.get(segment_label(p))
        if not occ or len(occ) != 1:
            raise ArgumentError(f"boundary segment at point {p} missing")
        tri, c = occ[0]
        word: fg.Word = ()
        for _ in range(3 * len(t.sides) + 1):
            out[(tri, c)] = word
            inc = (c - 1) % 3
            lab = t.sides[tri][inc]
            if not is_arc(lab):
                break
            t2, k2 = t.other_side(tri, inc)
            word = fg.mul(word, crossing(lab, (tri, inc)))
            tri, c = t2, k2
        else:
            raise ArgumentError(f"fan around point {p} does not close")
    return out


def compute_frame(t: IdealTriangulation) -> tuple[tuple[fg.Word, fg.Word, fg.Word], ...]:
    """Side words in pi_1 of the dual graph (vertices triangles, edges arcs)."""
    nt = len(t.sides)
    seen = [False] * nt
    tree_arcs: set[int] = set()
    seen[0] = True
    q = deque([0])
    while q:
        tri = q.popleft()
        for k in sorted(range(3), key=lambda k: t.sides[tri][k]):
            lab = t.sides[tri][k]
            if not is_arc(lab) or lab in tree_arcs:
                continue
            t2, _ = t.other_side(tri, k)
            if not seen[t2]:
                seen[t2] = True
                tree_arcs.add(lab)
                q.append(t2)
    if not all(seen):
        raise ArgumentError("dual graph is not connected")
    gen = {lab: i + 1 for i, lab in enumerate(x for x in t.arcs if x not in tree_arcs)}

    def crossing(lab: int, side: tuple[int, int]) -> fg.Word:
        if lab not in gen:
            return ()
        first = t.occurrences[lab][0]
        return (gen[lab],) if side == first else (-gen[lab],)

    fan = _fan_words(t, crossing)
    words = []
    for tri in range(nt):
        row = []
        for k in range(3):
            a, b = (tri, k), (tri, (k + 1) % 3)
            if a not in fan or b not in fan:
                raise ArgumentError(f"corner of triangle {tri} not reached by any fan")
            row.append(fg.mul(fan[a], fg.inverse(fan[b])))
        words.append(tuple(row))
    return tuple(words)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    failures: list[tuple[str, str]]

    @property
    def ok(self) -> bool:
        return not self.failures

    def failed_checks(self) -> list[str]:
        return sorted({name for name, _ in self.failures})

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": [{"check": c, "detail": d} for c, d in self.failures]}


def _boundary_walks(t: IdealTriangulation) -> int:
    """Count boundary cycles by rotating around corners in the glued map."""
    bsides = [(tri, k) for tri, row in enumerate(t.sides) for k, lab in enumerate(row) if not is_arc(lab)]
    seen: set[tuple[int, int]] = set()
    cycles = 0
    for start in bsides:
        if start in seen:
            continue
        cycles += 1
        cur = start
        for _ in range(len(bsides) + 1):
            seen.add(cur)
            tri, k = cur
            c = (k + 1) % 3
            for _ in range(3 * len(t.sides) + 1):
                lab = t.sides[tri][c]
                if not is_arc(lab):
                    break
                tri, k2 = t.other_side(tri, c)
                c = (k2 + 1) % 3
            else:
                raise ArgumentError("boundary walk does not close")
            cur = (tri, c)
            if cur == start:
                break
    return cycles


def _vertex_classes(t: IdealTriangulation) -> list[set[int]]:
    parent = {(tri, c): (tri, c) for tri in range(len(t.sides)) for c in range(3)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lab, occ in t.occurrences.items():
        if is_arc(lab) and len(occ) == 2:
            (t1, k1), (t2, k2) = occ
            for a, b in (((t1, k1), (t2, (k2 + 1) % 3)), ((t1, (k1 + 1) % 3), (t2, k2))):
                parent[find(a)] = find(b)
    classes: dict = {}
    for x in parent:
        classes.setdefault(find(x), set()).add(t.corners[x[0]][x[1]])
    return list(classes.values())


def validate_triangulation(t: IdealTriangulation, s: MarkedSurface | None = None) -> ValidationReport:
    s = s or t.surface
    fails: list[tuple[str, str]] = []
    if len(t.corners) != len(t.sides):
        return ValidationReport([("shape", "corners and sides differ in length")])
    n_pts = s.n_marked
    for tri, row in enumerate(t.corners):
        if any(not 0 <= p < n_pts for p in row):
            fails.append(("shape", f"triangle {tri} has a corner outside the marked points"))
    if fails:
        return ValidationReport(fails)

    # involution on glued sides; boundary segments used once each
    for lab, occ in sorted(t.occurrences.items()):
        if is_arc(lab):
            if len(occ) != 2:
                fails.append(("involution", f"arc {lab} occurs on {len(occ)} side(s)"))
        else:
            p = -lab - 1
            if not 0 <= p < n_pts:
                fails.append(("involution", f"unknown boundary label {lab}"))
            elif len(occ) != 1:
                fails.append(("involution", f"boundary segment {lab} occurs {len(occ)} times"))
    for p in range(n_pts):
        if segment_label(p) not in t.occurrences:
            fails.append(("involution", f"boundary segment leaving point {p} is not used"))

    # corner labels agree across gluings; segments join consecutive points
    for lab, occ in t.occurrences.items():
        if is_arc(lab) and len(occ) == 2:
            (t1, k1), (t2, k2) = occ
            if t.endpoints(t1, k1) != tuple(reversed(t.endpoints(t2, k2))):
                fails.append(("orientation", f"arc {lab} glues sides with mismatched endpoints"))
        elif not is_arc(lab) and len(occ) == 1 and 0 <= -lab - 1 < n_pts:
            p = -lab - 1
            if t.endpoints(*occ[0]) != (p, s.next_point(p)):
                fails.append(("orientation", f"segment at point {p} has wrong endpoints"))

    for tri, row in enumerate(t.sides):
        arcs = [x for x in row if is_arc(x)]
        if len(arcs) != len(set(arcs)):
            fails.append(("self_folded", f"triangle {tri} contains an arc twice"))

    arcs_expected, faces_expected = expected_counts(s)
    if len(t.arcs) != arcs_expected or len(t.sides) != faces_expected:
        fails.append(
            ("counts", f"{len(t.arcs)} arcs / {len(t.sides)} faces, expected {arcs_expected} / {faces_expected}")
        )

    structural = {"involution", "orientation", "shape"}
    if not any(c in structural for c, _ in fails):
        classes = _vertex_classes(t)
        if any(len(c) != 1 for c in classes) or len(classes) != n_pts:
            fails.append(("euler", f"corner identification gives {len(classes)} vertices, expected {n_pts}"))
        chi = len(classes) - (len(t.arcs) + n_pts) + len(t.sides)
        if chi != s.euler_characteristic:
            fails.append(("euler", f"Euler characteristic {chi}, expected {s.euler_characteristic}"))
        try:
            walks = _boundary_walks(t)
        except ArgumentError as exc:
            fails.append(("boundary", str(exc)))
        else:
            if walks != s.boundary_components:
                fails.append(("boundary", f"{walks} boundary cycles, expected {s.boundary_components}"))
        if t.words is not None:
            for tri, row in enumerate(t.words):
                if fg.mul(*row):
                    fails.append(("frame", f"side words of triangle {tri} do not close up"))
            for lab, occ in t.occurrences.items():
                if is_arc(lab) and len(occ) == 2:
                    (t1, k1), (t2, k2) = occ
                    if t.words[t1][k1] != fg.inverse(t.words[t2][k2]):
                        fails.append(("frame", f"arc {lab} carries inconsistent words"))
    return ValidationReport(fails)


# ---------------------------------------------------------------------------
# constructors


def disc_triangulation(m: int, diagonals) -> IdealTriangulation:
    """Triangulation of the m-gon surface (0, (m+2)) from a set of diagonals."""
    surf = MarkedSurface(0, (m + 2,))
    ang = NAngulation.from_pairs(m, 3, diagonals)
    if not ang.is_valid():
        raise ArgumentError(f"{sorted(diagonals)} is not a triangulation of the {m}-gon")
    arc_id = {p: i for i, p in enumerate(ang.pairs())}
    corners, sides = [], []
    for face in sorted(ang.faces()):
        corners.append(tuple(face))
        row = []
        for a, b in zip(face, face[1:] + face[:1]):
            if (b - a) % m == 1:
                row.append(segment_label(a))
            else:
                row.append(arc_id[tuple(sorted((a, b)))])
        sides.append(tuple(row))
    return IdealTriangulation(surf, tuple(corners), tuple(sides)).with_frame()


def seed_triangulation(s: MarkedSurface) -> IdealTriangulation:
    """Fan triangulation of a fundamental polygon for (g, d).

    Polygon word: commutators [x_i, y_i] for the handles, then for each extra
    boundary component a tunnel arc, that boundary's segments and the tunnel
    reversed, and finally the segments of boundary 0.  All vertices are
    marked points; the fan is taken from vertex 0.
    """
    arcs_expected, _ = expected_counts(s)
    if arcs_expected < 0:
        raise ArgumentError(f"surface {s} has no ideal triangulation")
    m = s.marked_counts
    p0 = s.point(0, 0)
    next_arc = 0
    poly: list[tuple[int, int, int]] = []  # (label, start point, end point)

    def new_arc() -> int:
        nonlocal next_arc
        next_arc += 1
        return next_arc - 1

    for _ in range(s.g):
        x, y = new_arc(), new_arc()
        poly += [(x, p0, p0), (y, p0, p0), (x, p0, p0), (y, p0, p0)]
    for b in range(1, len(m)):
        c = new_arc()
        q0 = s.point(b, 0)
        poly.append((c, p0, q0))
        for j in range(m[b]):
            poly.append((segment_label(s.point(b, j)), s.point(b, j), s.point(b, j + 1)))
        poly.append((c, q0, p0))
    for j in range(m[0]):
        poly.append((segment_label(s.point(0, j)), s.point(0, j), s.point(0, j + 1)))
    nv = len(poly)
    if nv < 3:
        raise ArgumentError(f"surface {s} has no ideal triangulation")
    vpt = [start for _, start, _ in poly]
    corners, sides = [], []
    diag = {}
    for v in range(2, nv - 1):
        diag[v] = new_arc()
    for v in range(1, nv - 1):
        left = poly[0][0] if v == 1 else diag[v]
        right = poly[nv - 1][0] if v + 1 == nv - 1 else diag[v + 1]
        corners.append((vpt[0], vpt[v], vpt[v + 1]))
        sides.append((left, poly[v][0], right))
    return IdealTriangulation(s, tuple(corners), tuple(sides)).with_frame()


# ---------------------------------------------------------------------------
# flips and dual quivers


def flip(t: IdealTriangulation, arc: int) -> IdealTriangulation:
    """Replace ``arc`` by the other diagonal of its quadrilateral (same id)."""
    occ = t.occurrences.get(arc)
    if arc < 0 or occ is None:
        raise ArgumentError(f"unknown arc id {arc}")
    if len(occ) != 2:
        raise ArgumentError(f"arc {arc} is not glued on two sides")
    (t1, k1), (t2, k2) = occ
    if t1 == t2:
        raise FlipUndefinedError(f"arc {arc} borders triangle {t1} on both sides")
    t = t.with_frame()
    C, S, W = t.corners, t.sides, t.words
    a, b, c = (C[t1][(k1 + i) % 3] for i in range(3))
    d = C[t2][(k2 + 2) % 3]
    s1, s2 = S[t1][(k1 + 1) % 3], S[t1][(k1 + 2) % 3]
    w1, w2 = W[t1][(k1 + 1) % 3], W[t1][(k1 + 2) % 3]
    s3, s4 = S[t2][(k2 + 1) % 3], S[t2][(k2 + 2) % 3]
    w3, w4 = W[t2][(k2 + 1) % 3], W[t2][(k2 + 2) % 3]
    new_w = fg.mul(w2, w3)  # c -> a -> d
    corners, sides, words = list(C), list(S), list(W)
    corners[t1], sides[t1], words[t1] = (c, a, d), (s2, s3, arc), (w2, w3, fg.inverse(new_w))
    corners[t2], sides[t2], words[t2] = (d, b, c), (s4, s1, arc), (w4, w1, new_w)
    return IdealTriangulation(t.surface, tuple(corners), tuple(sides), tuple(words))


def flippable_arcs(t: IdealTriangulation) -> list[int]:
    return [lab for lab in t.arcs if len({tri for tri, _ in t.occurrences[lab]}) == 2]


def dual_quiver_with_potential(t: IdealTriangulation) -> QuiverWithPotential:
    """One vertex per arc; in each triangle, arrows side k -> side k-1.

    These arrows run clockwise around the triangle; each interior triangle
    contributes its 3-cycle to the potential.  Arc ids must be 0..n-1.
    """
    arcs = t.arcs
    if arcs != list(range(len(arcs))):
        raise ArgumentError("arc ids must be 0..n-1 to index quiver vertices")
    arrows, terms = [], []
    for tri, row in enumerate(t.sides):
        names = {}
        for k in range(3):
            src, tgt = row[k], row[(k - 1) % 3]
            if is_arc(src) and is_arc(tgt):
                name = f"t{tri}c{k}"
                names[k] = name
                arrows.append(Arrow(name, src, tgt))
        if len(names) == 3:
            # s0 -> s2 -> s1 -> s0
            terms.append(PotentialTerm(1, (names[0], names[2], names[1])))
    return QuiverWithPotential(len(arcs), tuple(arrows), tuple(terms))


# ---------------------------------------------------------------------------
# the flip graph


@dataclass(frozen=True)
class TriangulationGraph:
    vertices: tuple[IdealTriangulation, ...]
    edges: tuple[tuple[int, int], ...]
    frontier: bool
    depth: int | None

    @cached_property
    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return [sorted(x) for x in adj]

    def to_json(self) -> dict:
        return {
            "vertices": [[list(map(_jsonable, k)) for k in v.canonical_form()] for v in self.vertices],
            "adjacency": self.adjacency,
            "frontier": self.frontier,
        }

    def to_dot(self) -> str:
        return graph_to_dot("triangulations", len(self.vertices), self.edges)


def _jsonable(x):
    return list(x) if isinstance(x, tuple) else x


def triangulation_graph(
    seed: IdealTriangulation, depth: int | None = None, max_vertices: int = 20_000
) -> TriangulationGraph:
    """Breadth-first flip exploration from ``seed`` to the given depth.

    ``depth=None`` explores until closure.  ``frontier`` is set when some
    vertex at the depth bound still has an unexplored neighbour.
    """
    if depth is not None and depth < 0:
        raise ArgumentError("depth must be >= 0")
    seed = seed.with_frame()
    index = {seed.canonical_form(): 0}
    verts = [seed]
    dist = [0]
    edges: set[tuple[int, int]] = set()
    frontier = False
    q = deque([0])
    while q:
        v = q.popleft()
        tv = verts[v]
        for arc in flippable_arcs(tv):
            nb = flip(tv, arc)
            key = nb.canonical_form()
            w = index.get(key)
            if w is None:
                if depth is not None and dist[v] >= depth:
                    frontier = True
                    continue
                if len(verts) >= max_vertices:
                    raise ResourceError(f"more than {max_vertices} triangulations")
                w = len(verts)
                index[key] = w
                verts.append(nb)
                dist.append(dist[v] + 1)
                q.append(w)
            if w != v:
                edges.add((min(v, w), max(v, w)))
    return TriangulationGraph(tuple(verts), tuple(sorted(edges)), frontier, depth)
