"""Fibrations over the plane with twist and flux markers.

Each marker has a branch cut running vertically down from it.  Crossing a cut
left to right applies the marker's fibre automorphism: a Dehn twist on fibre
homology for ``Twist(v)`` and a translation of the flux level for
``Flux(u)``.  All coordinates are exact rationals.

A matching path joins two twist markers.  Near the marker with class ``v`` the
collapsing circle sits at a level ``c`` with ``<v, c> = 0``; a path matches
when one level at the start satisfies both ends after transport.
"""
from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .braids import forget_strand, in_kernel, pure_generator  # noqa: F401  (re-exported)
from .errors import ArgumentError, GeometryError, NotMatchingError

Vec = tuple[Fraction, Fraction]
Mat = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Mat = ((1, 0), (0, 1))


def _q(x) -> Fraction:
    if isinstance(x, float):
        raise ArgumentError("use exact numbers (int, Fraction or 'p/q' strings), not floats")
    return Fraction(x)


def vec(x, y) -> Vec:
    return (_q(x), _q(y))


def _matmul(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _matvec(a: Mat, v):
    return (a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1])


def _matinv(a: Mat) -> Mat:
    (p, q), (r, s) = a
    return ((s, -q), (-r, p))  # det = 1


def det2(v, w) -> int:
    return v[0] * w[1] - v[1] * w[0]


def _dot(v, w):
    return v[0] * w[0] + v[1] * w[1]


def normalize_class(v) -> tuple[int, int]:
    """Primitive representative with first nonzero coordinate positive."""
    a, b = int(v[0]), int(v[1])
    if (a, b) == (0, 0):
        raise ArgumentError("zero class")
    if math.gcd(a, b) != 1:
        raise ArgumentError(f"class {(a, b)} is not primitive")
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return a, b


def dehn_twist_matrix(v) -> Mat:
    """x -> x + det(v, x) v."""
    a, b = int(v[0]), int(v[1])
    if math.gcd(a, b) != 1:
        raise ArgumentError(f"twist class {(a, b)} is not primitive")
    # columns are the images of e1 and e2
    return ((1 - a * b, a * a), (-b * b, 1 + a * b))


@dataclass(frozen=True)
class FiberAuto:
    A: Mat = IDENTITY
    u: Vec = (Fraction(0), Fraction(0))

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        if A[0][0] * A[1][1] - A[0][1] * A[1][0] != 1:
            raise ArgumentError(f"matrix {A} does not have determinant 1")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "u", vec(*self.u))

    def __matmul__(self, other: FiberAuto) -> FiberAuto:
        """self after other; levels are translated and never rotated."""
        return FiberAuto(_matmul(self.A, other.A), (self.u[0] + other.u[0], self.u[1] + other.u[1]))

    def inverse(self) -> FiberAuto:
        return FiberAuto(_matinv(self.A), (-self.u[0], -self.u[1]))


def compose(f: FiberAuto, g: FiberAuto) -> FiberAuto:
    return f @ g


@dataclass(frozen=True)
class Cycle:
    v: tuple[int, int]
    c: Vec = (Fraction(0), Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "v", normalize_class(self.v))
        object.__setattr__(self, "c", vec(*self.c))


def act_on_cycle(f: FiberAuto, cyc: Cycle) -> Cycle:
    return Cycle(_matvec(f.A, cyc.v), (cyc.c[0] + f.u[0], cyc.c[1] + f.u[1]))


@dataclass(frozen=True)
class Marker:
    pos: Vec
    kind: str  # "twist" or "flux"
    data: tuple

    def __post_init__(self):
        object.__setattr__(self, "pos", vec(*self.pos))
        if self.kind == "twist":
            object.__setattr__(self, "data", normalize_class(self.data))
        elif self.kind == "flux":
            object.__setattr__(self, "data", vec(*self.data))
        else:
            raise ArgumentError(f"unknown marker kind {self.kind!r}")

    @classmethod
    def twist(cls, pos, v) -> Marker:
        return cls(vec(*pos), "twist", tuple(v))

    @classmethod
    def flux(cls, pos, u) -> Marker:
        return cls(vec(*pos), "flux", tuple(u))

    def transform(self) -> FiberAuto:
        if self.kind == "twist":
            return FiberAuto(dehn_twist_matrix(self.data))
        return FiberAuto(IDENTITY, self.data)

    def to_json(self) -> dict:
        val = [int(x) for x in self.data] if self.kind == "twist" else [_fmt(x) for x in self.data]
        return {"pos": [_fmt(x) for x in self.pos], "kind": {self.kind: val}}


def _fmt(x: Fraction):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


@dataclass(frozen=True)
class Fibration:
    base: str
    markers: tuple[Marker, ...]

    def __post_init__(self):
        if self.base not in ("plane", "punctured"):
            raise ArgumentError(f"base must be 'plane' or 'punctured', got {self.base!r}")
        object.__setattr__(self, "markers", tuple(self.markers))
        positions = [m.pos for m in self.markers]
        if len(set(positions)) != len(positions):
            raise ArgumentError("marker positions must be distinct")

    def obstacles(self) -> list[Vec]:
        pts = [m.pos for m in self.markers]
        origin = (Fraction(0), Fraction(0))
        if self.base == "punctured" and origin not in pts:
            pts.append(origin)
        return pts

    def marker_at(self, p: Vec) -> Marker | None:
        for m in self.markers:
            if m.pos == p:
                return m
        return None

    def to_json(self) -> dict:
        return {"base": self.base, "markers": [m.to_json() for m in self.markers]}

    @classmethod
    def from_json(cls, data: dict | str) -> Fibration:
        if isinstance(data, str):
            data = json.loads(data)
        markers = []
        for m in data["markers"]:
            ((kind, val),) = m["kind"].items()
            markers.append(Marker(vec(*m["pos"]), kind, tuple(val)))
        return cls(data.get("base", "plane"), tuple(markers))


def conifold_fibration(s=0, t=0) -> Fibration:
    """Twist(1,0) at -1, Flux(s,t) at the origin, Twist(0,1) at +1."""
    return Fibration("punctured", (
        Marker.twist((-1, 0), (1, 0)),
        Marker.flux((0, 0), (s, t)),
        Marker.twist((1, 0), (0, 1)),
    ))


# ---------------------------------------------------------------------------
# monodromy


def _path(points) -> list[Vec]:
    pts = [vec(*p) for p in points]
    if len(pts) < 2:
        raise ArgumentError("a path needs at least two vertices")
    return pts


def _on_segment(p: Vec, a: Vec, b: Vec) -> bool:
    if det2((b[0] - a[0], b[1] - a[1]), (p[0] - a[0], p[1] - a[1])) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _crossings(pts: list[Vec], fib: Fibration) -> list[tuple[int, Fraction, Marker, int]]:
    """Signed cut crossings as (segment index, parameter, marker, sign)."""
    ends = {pts[0], pts[-1]}
    out = []
    for idx, (a, b) in enumerate(zip(pts, pts[1:])):
        for obs in fib.obstacles():
            if obs not in ends and _on_segment(obs, a, b):
                raise GeometryError(f"path passes through marker at {tuple(map(_fmt, obs))}")
        for m in fib.markers:
            px, py = m.pos
            if (a[0] < px) == (b[0] < px):
                continue
            t = (px - a[0]) / (b[0] - a[0])
            y = a[1] + t * (b[1] - a[1])
            if y < py:
                out.append((idx, t, m, 1 if a[0] < px else -1))
    out.sort(key=lambda x: (x[0], x[1]))
    return out


def monodromy_along(points, fib: Fibration) -> FiberAuto:
    """Product of the crossed cut transforms, later crossings acting last."""
    pts = _path(points)
    total = FiberAuto()
    for _, _, m, sign in _crossings(pts, fib):
        f = m.transform()
        total = (f if sign > 0 else f.inverse()) @ total
    return total


def loop_around(center, radius=Fraction(1, 4), turns: int = 1) -> list[Vec]:
    """Anticlockwise square loop based just left of ``center``."""
    cx, cy = vec(*center)
    r = _q(radius)
    one = [(cx - r, cy), (cx - r, cy - r), (cx + r, cy - r), (cx + r, cy + r), (cx - r, cy + r)]
    pts = one * abs(turns) + [one[0]]
    return pts if turns >= 0 else pts[::-1]


# ---------------------------------------------------------------------------
# matching paths


@dataclass(frozen=True)
class SurgeryType:
    kind: str  # SphereProduct, ThreeSphere, LensLike
    p: int = 0

    def __str__(self) -> str:
        return f"LensLike({self.p})" if self.kind == "LensLike" else self.kind


def surgery_type(v1, v2) -> SurgeryType:
    v1, v2 = normalize_class(v1), normalize_class(v2)
    if v1 == v2:
        return SurgeryType("SphereProduct")
    d = abs(det2(v1, v2))
    return SurgeryType("ThreeSphere") if d == 1 else SurgeryType("LensLike", d)


def _segments_intersect(a, b, c, d) -> bool:
    d1 = det2((b[0] - a[0], b[1] - a[1]), (c[0] - a[0], c[1] - a[1]))
    d2 = det2((b[0] - a[0], b[1] - a[1]), (d[0] - a[0], d[1] - a[1]))
    d3 = det2((d[0] - c[0], d[1] - c[1]), (a[0] - c[0], a[1] - c[1]))
    d4 = det2((d[0] - c[0], d[1] - c[1]), (b[0] - c[0], b[1] - c[1]))
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return _on_segment(c, a, b) or _on_segment(d, a, b) or _on_segment(a, c, d) or _on_segment(b, c, d)


def is_simple(pts: list[Vec]) -> bool:
    segs = list(zip(pts, pts[1:]))
    for i, j in itertools.combinations(range(len(segs)), 2):
        if j == i + 1:
            a, b = segs[i]
            _, d = segs[j]
            # consecutive segments may only share their joint
            if _on_segment(d, a, b) or _on_segment(a, *segs[j]):
                return False
        elif _segments_intersect(*segs[i], *segs[j]):
            return False
    return True


@dataclass(frozen=True)
class MatchingPath:
    points: tuple[Vec, ...]

    def __post_init__(self):
        pts = _path(self.points)
        if len(set(pts)) != len(pts):
            raise ArgumentError("path repeats a vertex")
        object.__setattr__(self, "points", tuple(pts))

    def to_json(self) -> list:
        return [[_fmt(x), _fmt(y)] for x, y in self.points]


@dataclass(frozen=True)
class MatchingData:
    start_class: tuple[int, int]
    end_class: tuple[int, int]
    transported_class: tuple[int, int]
    start_level: Vec | None  # None: a free one-parameter family of levels
    end_level: Vec | None
    surgery: SurgeryType
    monodromy: FiberAuto = field(repr=False)

    def to_json(self) -> dict:
        lv = (lambda c: None if c is None else [_fmt(x) for x in c])
        return {
            "classes": [list(self.start_class), list(self.end_class)],
            "transported_class": list(self.transported_class),
            "levels": [lv(self.start_level), lv(self.end_level)],
            "surgery": str(self.surgery),
        }


def matching_data(path: MatchingPath | list, fib: Fibration) -> MatchingData:
    if not isinstance(path, MatchingPath):
        path = MatchingPath(tuple(path))
    return _matching_data(path, fib)


@lru_cache(maxsize=1024)
def _matching_data(path: MatchingPath, fib: Fibration) -> MatchingData:
    pts = list(path.points)
    ma, mb = fib.marker_at(pts[0]), fib.marker_at(pts[-1])
    if ma is None or mb is None or ma.kind != "twist" or mb.kind != "twist":
        raise ArgumentError("matching paths must start and end at twist markers")
    if ma is mb:
        raise ArgumentError("matching path endpoints coincide")
    if not is_simple(pts):
        raise GeometryError("matching path is not simple")
    mono = monodromy_along(pts, fib)
    va, vb = ma.data, mb.data
    moved = normalize_class(_matvec(mono.A, va))
    u = mono.u
    jva = (-va[1], va[0])  # levels with <va, c> = 0 are multiples of J va
    denom = _dot(vb, jva)
    rhs = -_dot(vb, u)
    cert = {
        "start_class": list(va), "end_class": list(vb),
        "flux": [_fmt(x) for x in u], "pairing": _fmt(rhs),
    }
    if denom == 0:
        if rhs != 0:
            raise NotMatchingError("no level vanishes on both end classes after transport", cert)
        start = end = None
    else:
        lam = Fraction(rhs) / denom
        start = (lam * jva[0], lam * jva[1])
        end = (start[0] + u[0], start[1] + u[1])
    return MatchingData(va, vb, moved, start, end, surgery_type(moved, vb), mono)


# ---------------------------------------------------------------------------
# disjointness


@lru_cache(maxsize=1024)
def _prefix_flux(path: MatchingPath, fib: Fibration) -> tuple[Vec, ...]:
    """Flux accumulated along the path up to each vertex."""
    out = [(Fraction(0), Fraction(0))]
    for a, b in zip(path.points, path.points[1:]):
        u = monodromy_along([a, b], fib).u
        out.append((out[-1][0] + u[0], out[-1][1] + u[1]))
    return tuple(out)


def _level_at(path: MatchingPath, seg: int, x: Vec, start: Vec, fib: Fibration) -> Vec:
    base = _prefix_flux(path, fib)[seg]
    a = path.points[seg]
    u = monodromy_along([a, x], fib).u if x != a else (0, 0)
    return (start[0] + base[0] + u[0], start[1] + base[1] + u[1])


def _segment_overlap(a, b, c, d):
    """Common part of two segments: None, a point, or a collinear segment."""
    if (max(a[0], b[0]) < min(c[0], d[0]) or max(c[0], d[0]) < min(a[0], b[0])
            or max(a[1], b[1]) < min(c[1], d[1]) or max(c[1], d[1]) < min(a[1], b[1])):
        return None
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    denom = det2(r, s)
    qp = (c[0] - a[0], c[1] - a[1])
    if denom != 0:
        t = Fraction(det2(qp, s)) / denom
        w = Fraction(det2(qp, r)) / denom
        if 0 <= t <= 1 and 0 <= w <= 1:
            p = (a[0] + t * r[0], a[1] + t * r[1])
            return (p, p)
        return None
    if det2(r, qp) != 0:
        return None
    rr = _dot(r, r)
    t0 = Fraction(_dot(qp, r)) / rr
    t1 = t0 + Fraction(_dot(s, r)) / rr
    lo, hi = max(Fraction(0), min(t0, t1)), min(Fraction(1), max(t0, t1))
    if lo > hi:
        return None
    return ((a[0] + lo * r[0], a[1] + lo * r[1]), (a[0] + hi * r[0], a[1] + hi * r[1]))


@dataclass(frozen=True)
class Verdict:
    kind: str  # Disjoint or Unknown
    certificate: tuple = ()

    def verify(self) -> bool:
        """Re-check that every listed level pair is genuinely unequal."""
        if self.kind != "Disjoint":
            return False
        return all(e["level1"] is not None and e["level1"] != e["level2"] for e in self.certificate)

    def to_json(self) -> dict:
        fmt = (lambda c: None if c is None else [_fmt(x) for x in c])
        return {
            "verdict": self.kind,
            "certificate": [
                {"point": [_fmt(x) for x in e["point"]], "level1": fmt(e["level1"]), "level2": fmt(e["level2"])}
                for e in self.certificate
            ],
        }


def _sample_points(p: Vec, q: Vec, fib: Fibration) -> list[Vec]:
    if p == q:
        return [p]
    cuts = sorted({m.pos[0] for m in fib.markers if min(p[0], q[0]) < m.pos[0] < max(p[0], q[0])})
    ts = [Fraction(0)] + [(x - p[0]) / (q[0] - p[0]) for x in cuts] + [Fraction(1)]
    ts = sorted(set(ts))
    out = []
    for t0, t1 in zip(ts, ts[1:]):
        for t in (t0, (t0 + t1) / 2):
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    out.append(q)
    return out


def spheres_disjoint(p1: MatchingPath, p2: MatchingPath, fib: Fibration) -> Verdict:
    d1, d2 = matching_data(p1, fib), matching_data(p2, fib)
    a, b = list(p1.points), list(p2.points)
    entries: dict[Vec, dict] = {}
    for i, (s0, s1) in enumerate(zip(a, a[1:])):
        for j, (t0, t1) in enumerate(zip(b, b[1:])):
            ov = _segment_overlap(s0, s1, t0, t1)
            if ov is None:
                continue
            for x in _sample_points(ov[0], ov[1], fib):
                if x in entries:
                    continue
                l1 = None if d1.start_level is None else _level_at(p1, i, x, d1.start_level, fib)
                l2 = None if d2.start_level is None else _level_at(p2, j, x, d2.start_level, fib)
                entries[x] = {"point": x, "level1": l1, "level2": l2}
    cert = tuple(entries[k] for k in sorted(entries))
    ok = all(e["level1"] is not None and e["level2"] is not None and e["level1"] != e["level2"] for e in cert)
    return Verdict("Disjoint" if ok else "Unknown", cert)


# ---------------------------------------------------------------------------
# the wrapped family


def _family_layout(fib: Fibration):
    twists = [m for m in fib.markers if m.kind == "twist"]
    fluxes = [m for m in fib.markers if m.kind == "flux"]
    if len(twists) != 2 or len(fluxes) != 1 or len(fib.markers) != 3:
        raise ArgumentError("need exactly two twist markers and one flux marker")
    a, b = sorted(twists, key=lambda m: m.pos)
    f = fluxes[0]
    if not (a.pos[1] == f.pos[1] == b.pos[1] and a.pos[0] < f.pos[0] < b.pos[0]):
        raise ArgumentError("expected twist, flux, twist in order along a horizontal line")
    if fib.base == "punctured" and f.pos != (0, 0):
        raise ArgumentError("the puncture must carry the flux marker")
    return a, f, b


def wrapped_path(fib: Fibration, k: int, n: int) -> MatchingPath:
    """Path from the left twist marker that winds k times clockwise around
    the flux marker and the right twist marker before landing on the latter."""
    a, f, b = _family_layout(fib)
    y0 = a.pos[1]
    cx = (f.pos[0] + b.pos[0]) / 2
    r_min = (b.pos[0] - f.pos[0]) / 2 * Fraction(6, 5)
    r_max = (cx - a.pos[0]) * Fraction(13, 15)
    radii = [r_max - (r_max - r_min) * Fraction(j, n) for j in range(k + 1)]
    pts = [a.pos, (cx - radii[0], y0)]
    for j in range(k):
        r, nxt = radii[j], radii[j + 1]
        pts += [(cx - r, y0 + r), (cx + r, y0 + r), (cx + r, y0 - r), (cx - nxt, y0 - r)]
    h = radii[k] / 2
    pts += [(cx - radii[k], y0 + h), (b.pos[0], y0 + h), b.pos]
    return MatchingPath(tuple(pts))


def wrapped_family(fib: Fibration, n: int) -> list[MatchingPath]:
    if n < 1:
        raise ArgumentError("N must be >= 1")
    paths = [wrapped_path(fib, k, n) for k in range(n)]
    for p in paths:
        matching_data(p, fib)
    return paths


def _pair_verdict(args) -> Verdict:
    p1, p2, fib = args
    return spheres_disjoint(p1, p2, fib)


def pairwise_verdicts(paths: list[MatchingPath], fib: Fibration, jobs: int = 1) -> list[tuple[int, int, Verdict]]:
    pairs = list(itertools.combinations(range(len(paths)), 2))
    work = [(paths[i], paths[j], fib) for i, j in pairs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            verdicts = list(ex.map(_pair_verdict, work))
    else:
        verdicts = [_pair_verdict(w) for w in work]
    return [(i, j, v) for (i, j), v in zip(pairs, verdicts)]
