import pytest

from oracles import oracle_box_solutions
from pachner.corpus import load_bundled
from pachner.enumeration import (
    EnumerationLimits,
    ResourceGuard,
    enumerate_fundamental,
    enumerate_vertex,
    quad_selections,
    verify_coordinate_bounds,
)
from pachner.normal import NormalSurfaceVector, reduced

UNIT_VECTORS = sorted(
    tuple(1 if i == j else 0 for i in range(7)) for j in range(7))

LENS_RAYS = [
    (0, 0, 0, 0, 2, 0, 0, 1, 1, 0, 0, 1, 0, 0),
    (0, 0, 2, 2, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0),
    (1, 1, 0, 0, 1, 0, 0, 1, 1, 1, 1, 0, 0, 0),
    (1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0),
]

LENS_FUNDAMENTALS = LENS_RAYS + [
    (0, 0, 1, 1, 1, 0, 0, 1, 1, 0, 0, 1, 0, 0),
]

EXPECTED_COUNTS = {
    'one_tet': (7, 7),
    'two_tet_sphere': (7, 7),
    'solid_torus': (7, 7),
    'lens_three': (4, 5),
}


def test_quad_selections_cover_all_assignments():
    assert len(list(quad_selections(1))) == 4
    assert len(list(quad_selections(2))) == 16
    sels = set(quad_selections(2))
    assert (None, None) in sels
    assert (2, 1) in sels


def test_one_tetrahedron_rays_and_fundamentals_are_the_units():
    tri = load_bundled('one_tet')
    rays = sorted(reduced(c.coords) for c in enumerate_vertex(tri))
    assert rays == UNIT_VECTORS
    basis = sorted(c.coords for c in enumerate_fundamental(tri))
    assert basis == UNIT_VECTORS


def test_lens_space_rays_and_fundamentals():
    tri = load_bundled('lens_three')
    rays = sorted(reduced(c.coords) for c in enumerate_vertex(tri))
    assert rays == sorted(LENS_RAYS)
    basis = sorted(c.coords for c in enumerate_fundamental(tri))
    assert basis == sorted(LENS_FUNDAMENTALS)


def test_the_extra_lens_fundamental_is_a_ray_midpoint():
    a, b, half = (LENS_FUNDAMENTALS[0], LENS_FUNDAMENTALS[1],
                  LENS_FUNDAMENTALS[4])
    assert tuple((x + y) // 2 for x, y in zip(a, b)) == half


@pytest.mark.parametrize('name', sorted(EXPECTED_COUNTS))
def test_enumeration_counts(name):
    tri = load_bundled(name)
    vs = enumerate_vertex(tri)
    fs = enumerate_fundamental(tri)
    assert (len(vs), len(fs)) == EXPECTED_COUNTS[name]


@pytest.mark.parametrize('name', sorted(EXPECTED_COUNTS))
def test_enumerated_vectors_are_admissible_and_flagged(name):
    tri = load_bundled(name)
    for c in enumerate_vertex(tri):
        assert c.vector.is_admissible()
        assert not c.vector.is_zero()
        assert c.coords == reduced(c.coords)
        assert c.is_vertex_surface == (c.connected and c.two_sided)


def test_one_sided_solid_torus_rays_are_flagged_not_dropped():
    tri = load_bundled('solid_torus')
    candidates = enumerate_vertex(tri)
    flags = [c.is_vertex_surface for c in candidates]
    assert flags.count(True) == 5
    assert flags.count(False) == 2
    one_sided = [c for c in candidates if not c.two_sided]
    assert {c.name for c in one_sided} == {'moebius-band',
                                           'nonorientable-2-with-1-boundary'}


def test_reduced_rays_are_fundamental():
    for name in EXPECTED_COUNTS:
        tri = load_bundled(name)
        rays = {reduced(c.coords) for c in enumerate_vertex(tri)}
        basis = {c.coords for c in enumerate_fundamental(tri)}
        assert rays <= basis, name


def _decomposes(coords, basis, memo):
    if not any(coords):
        return True
    if coords in memo:
        return memo[coords]
    memo[coords] = False
    for b in basis:
        if all(x >= y for x, y in zip(coords, b)):
            rest = tuple(x - y for x, y in zip(coords, b))
            if _decomposes(rest, basis, memo):
                memo[coords] = True
                break
    return memo[coords]


@pytest.mark.parametrize('name', ['one_tet', 'lens_three'])
def test_every_small_solution_is_a_sum_of_fundamentals(name):
    tri = load_bundled(name)
    basis = [c.coords for c in enumerate_fundamental(tri)]
    memo = {}
    box = oracle_box_solutions(tri, cap=3)
    assert len(box) > 1
    for coords in box:
        assert _decomposes(coords, basis, memo), coords


def test_fundamentals_are_pairwise_incomparable():
    for name in EXPECTED_COUNTS:
        basis = [c.coords for c in
                 enumerate_fundamental(load_bundled(name))]
        for i, a in enumerate(basis):
            for j, b in enumerate(basis):
                if i != j:
                    assert not all(x <= y for x, y in zip(a, b)), (name, a, b)


def test_bound_report_lines_and_margins():
    report = verify_coordinate_bounds(load_bundled('lens_three'))
    assert report.t == 2
    assert report.vertex_bound == 2 ** 14
    assert report.fundamental_bound == 7 * 2 * 2 ** 14
    assert report.vertex_max == 2
    assert report.vertex_margin == 2 ** 14 - 2
    lines = report.lines()
    assert lines[0] == 't=2'
    assert 'vertex surfaces: 4' in lines[1]
    assert 'fundamental surfaces: 5' in lines[2]


def test_fundamental_enumeration_is_guarded_by_size():
    tri = load_bundled('solid_torus')
    limits = EnumerationLimits(max_tets_fundamental=1)
    with pytest.raises(ResourceGuard):
        enumerate_fundamental(tri, limits)
    report = verify_coordinate_bounds(tri, limits)
    assert report.fundamental_bound is None
    assert 'skipped (guarded at 1 tetrahedra)' in report.lines()[2]


def test_vertex_enumeration_is_guarded_by_size():
    tri = load_bundled('lens_three')
    with pytest.raises(ResourceGuard):
        enumerate_vertex(tri, EnumerationLimits(max_tets_vertex=1))
