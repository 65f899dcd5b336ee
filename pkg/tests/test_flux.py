from __future__ import annotations

import itertools
import random
from fractions import Fraction as Q

import pytest

from monosplit import flux
from monosplit.errors import ArgumentError, GeometryError, NotMatchingError


def test_dehn_twist_matrices():
    assert flux.dehn_twist_matrix((1, 0)) == ((1, 1), (0, 1))
    assert flux.dehn_twist_matrix((0, 1)) == ((1, 0), (-1, 1))
    for v in [(1, 0), (2, 3), (-1, 4), (5, -2)]:
        m = flux.dehn_twist_matrix(v)
        assert flux._matvec(m, v) == v
        assert m[0][0] * m[1][1] - m[0][1] * m[1][0] == 1
    with pytest.raises(ArgumentError):
        flux.dehn_twist_matrix((2, 2))


def random_auto(rng):
    A = flux.IDENTITY
    for _ in range(rng.randint(0, 3)):
        v = rng.choice([(1, 0), (0, 1), (1, 1), (2, 1)])
        t = flux.dehn_twist_matrix(v)
        A = flux._matmul(A, t if rng.random() < 0.5 else flux._matinv(t))
    return flux.FiberAuto(A, (Q(rng.randint(-3, 3), rng.randint(1, 3)), Q(rng.randint(-3, 3))))


def test_fiber_auto_group_laws():
    rng = random.Random(2)
    e = flux.FiberAuto()
    for _ in range(100):
        f, g, h = random_auto(rng), random_auto(rng), random_auto(rng)
        assert (f @ g) @ h == f @ (g @ h)
        assert f @ e == f == e @ f
        assert f @ f.inverse() == e


def test_action_on_cycles():
    c = flux.Cycle((1, 0))
    assert flux.act_on_cycle(flux.FiberAuto(flux.IDENTITY, (2, 3)), c) == flux.Cycle((1, 0), (2, 3))
    assert flux.act_on_cycle(flux.FiberAuto(flux.dehn_twist_matrix((1, 0))), c) == c
    assert flux.Cycle((-1, 0)).v == (1, 0)
    assert flux.Cycle((0, -1)).v == (0, 1)


def test_monodromy_examples():
    fib = flux.conifold_fibration(Q(1, 2), 3)
    assert flux.monodromy_along([(-2, 1), (2, 1)], fib) == flux.FiberAuto()
    assert flux.monodromy_along(flux.loop_around((-1, 0)), fib) == flux.FiberAuto(((1, 1), (0, 1)))
    assert flux.monodromy_along(flux.loop_around((0, 0)), fib) == flux.FiberAuto(flux.IDENTITY, (Q(1, 2), 3))
    for k in (1, 2, 5):
        f = flux.monodromy_along(flux.loop_around((0, 0), turns=k), fib)
        assert flux.act_on_cycle(f, flux.Cycle((1, 0))) == flux.Cycle((1, 0), (Q(k, 2), 3 * k))
    back = flux.monodromy_along(flux.loop_around((0, 0), turns=-1), fib)
    assert back.u == (Q(-1, 2), -3)


def test_monodromy_is_refinement_and_homotopy_invariant():
    fib = flux.conifold_fibration(1, 2)
    rng = random.Random(3)
    path = [(-3, Q(1, 3)), (0, Q(-5, 2)), (3, Q(1, 7))]
    ref = flux.monodromy_along(path, fib)
    for _ in range(30):
        refined = [path[0]]
        for a, b in zip(path, path[1:]):
            t = Q(rng.randint(1, 9), 10)
            refined += [(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])), b]
        assert flux.monodromy_along(refined, fib) == ref
        # wiggle the middle vertex without crossing a marker
        wiggle = [path[0], (Q(rng.randint(-5, 5), 7), Q(-5, 2) + Q(rng.randint(-3, 3), 4)), path[2]]
        assert flux.monodromy_along(wiggle, fib) == ref


def test_path_through_marker_rejected():
    fib = flux.conifold_fibration(1, 1)
    with pytest.raises(GeometryError):
        flux.monodromy_along([(-2, 0), (2, 0)], fib)


def test_surgery_types():
    assert str(flux.surgery_type((1, 0), (0, 1))) == "ThreeSphere"
    assert str(flux.surgery_type((1, 0), (-1, 0))) == "SphereProduct"
    assert str(flux.surgery_type((1, 1), (1, -1))) == "LensLike(2)"
    assert flux.surgery_type((1, 0), (2, 3)) == flux.SurgeryType("LensLike", 3)


def test_matching_half_circles():
    upper = [(-1, 0), (-1, 1), (1, 1), (1, 0)]
    lower = [(-1, 0), (-1, -1), (1, -1), (1, 0)]
    d = flux.matching_data(upper, flux.conifold_fibration())
    assert (d.start_class, d.end_class) == ((1, 0), (0, 1))
    assert d.start_level == (0, 0) and str(d.surgery) == "ThreeSphere"
    # the lower path crosses the flux cut left to right, so the end level moves by +(s, t)
    fib = flux.conifold_fibration(2, 3)
    low = flux.matching_data(lower, fib)
    assert (low.end_level[0] - low.start_level[0], low.end_level[1] - low.start_level[1]) == (2, 3)


def test_w0_sphere_product_and_flux_obstruction():
    a, b = (1, 0), (0, 1)
    w0 = flux.Fibration("plane", (flux.Marker.twist((-1, 0), a), flux.Marker.twist((0, -1), b),
                                  flux.Marker.twist((1, 0), a)))
    d = flux.matching_data([(-1, 0), (1, 0)], w0)
    assert str(d.surgery) == "SphereProduct" and d.start_level is None
    broken = flux.Fibration("plane", w0.markers + (flux.Marker.flux((0, 1), (1, 0)),))
    with pytest.raises(NotMatchingError) as err:
        flux.matching_data([(-1, 0), (1, 0)], broken)
    assert err.value.certificate["flux"] == [1, 0]


def test_matching_requires_twist_ends():
    fib = flux.conifold_fibration(1, 1)
    with pytest.raises(ArgumentError):
        flux.matching_data([(-1, 0), (-1, 1), (0, 1), (0, 0)], fib)


def test_wrapped_family_levels():
    s, t = Q(2, 3), 5
    fib = flux.conifold_fibration(s, t)
    fam = flux.wrapped_family(fib, 4)
    for k, p in enumerate(fam):
        d = flux.matching_data(p, fib)
        assert d.start_level == (0, k * t)
        assert d.end_level == (-k * s, 0)
        assert str(d.surgery) == "ThreeSphere"
        assert flux.is_simple(list(p.points))


def test_flux_additivity():
    fib = flux.conifold_fibration(1, 1)
    fam = flux.wrapped_family(fib, 5)
    shifts = [flux.matching_data(p, fib).monodromy.u for p in fam]
    for k, u in enumerate(shifts):
        assert u == (k * shifts[1][0], k * shifts[1][1])


@pytest.mark.parametrize("n", [1, 3])
def test_small_families(n):
    fib = flux.conifold_fibration(1, 1)
    verdicts = flux.pairwise_verdicts(flux.wrapped_family(fib, n), fib)
    assert len(verdicts) == n * (n - 1) // 2
    assert all(v.kind == "Disjoint" and v.verify() for *_, v in verdicts)


def test_zero_flux_gives_unknown():
    fib = flux.conifold_fibration(0, 0)
    fam = flux.wrapped_family(fib, 3)
    v = flux.spheres_disjoint(fam[0], fam[1], fib)
    assert v.kind == "Unknown" and not v.verify()


def test_disjointness_symmetric_and_base_disjoint():
    fib = flux.conifold_fibration(1, 1)
    fam = flux.wrapped_family(fib, 3)
    for p, q in itertools.combinations(fam, 2):
        a, b = flux.spheres_disjoint(p, q, fib), flux.spheres_disjoint(q, p, fib)
        assert a.kind == b.kind
        assert sorted(e["point"] for e in a.certificate) == sorted(e["point"] for e in b.certificate)
    # two twist pairs far apart
    far = flux.Fibration("plane", tuple(flux.Marker.twist((x, 0), (1, 0)) for x in (0, 1, 5, 6)))
    v = flux.spheres_disjoint(flux.MatchingPath(((0, 0), (1, 0))), flux.MatchingPath(((5, 0), (6, 0))), far)
    assert v.kind == "Disjoint" and v.certificate == ()


def test_parallel_verdicts_match_serial():
    fib = flux.conifold_fibration(1, 1)
    fam = flux.wrapped_family(fib, 4)
    serial = flux.pairwise_verdicts(fam, fib)
    parallel = flux.pairwise_verdicts(fam, fib, jobs=2)
    assert [v.kind for *_, v in serial] == [v.kind for *_, v in parallel]


def test_fibration_json_roundtrip():
    fib = flux.conifold_fibration(Q(1, 3), -2)
    assert flux.Fibration.from_json(fib.to_json()) == fib


def test_floats_rejected():
    with pytest.raises(ArgumentError):
        flux.vec(0.5, 1)
