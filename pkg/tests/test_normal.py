import itertools

import pytest

from pachner.corpus import BUNDLED, bundled, load_bundled
from pachner.normal import (
    QUAD_PAIRS,
    NormalSurfaceVector,
    QuadConflict,
    arc_count,
    dumps_surface,
    edge_crossings,
    haken_sum,
    loads_surface,
    matching_system,
    quad_index,
    reduced,
    scalar_multiple,
    triangle_index,
    vertex_link,
    vertex_links,
)


def test_quad_pairs_partition_the_vertices():
    for pair1, pair2 in QUAD_PAIRS:
        assert sorted(pair1 + pair2) == [0, 1, 2, 3]
        assert 0 in pair1
    assert len(set(QUAD_PAIRS)) == 3


def test_coordinate_layout():
    assert [triangle_index(0, w) for w in range(4)] == [0, 1, 2, 3]
    assert [quad_index(0, k) for k in range(3)] == [4, 5, 6]
    assert triangle_index(2, 1) == 15
    assert quad_index(2, 2) == 20


def test_arc_count_mixes_one_triangle_and_one_quad():
    # a single triangle at corner w shows one arc in each face at w
    for w in range(4):
        coords = [0] * 7
        coords[triangle_index(0, w)] = 1
        for f in range(4):
            if f == w:
                continue
            assert arc_count(coords, 0, f, w) == 1
    # a quad separating {0,1} from {2,3} meets face 2 = {0,1,3} in an
    # arc that isolates vertex 3, and face 0 = {1,2,3} in one that
    # isolates vertex 1
    coords = [0] * 7
    coords[quad_index(0, 0)] = 1
    assert arc_count(coords, 0, 2, 3) == 1
    assert arc_count(coords, 0, 0, 1) == 1
    assert arc_count(coords, 0, 2, 0) == 0
    assert arc_count(coords, 0, 2, 1) == 0
    # each quad contributes exactly one arc per face
    for f in range(4):
        assert sum(arc_count(coords, 0, f, w)
                   for w in range(4) if w != f) == 1


def test_edge_crossings_counts_triangles_and_non_parallel_quads():
    coords = [1] * 7
    for x, y in itertools.combinations(range(4), 2):
        # both endpoint triangles plus the two quads not parallel to
        # the edge
        assert edge_crossings(coords, 0, x, y) == 4


@pytest.mark.parametrize('name', BUNDLED)
def test_vector_length_and_equation_count(name):
    tri = load_bundled(name)
    system = matching_system(tri)
    interior = sum(1 for cls in tri.skeleton.faces if not cls.boundary)
    assert system.equation_count == 3 * interior
    link = vertex_link(tri, tri.skeleton.vertices[0])
    assert len(link.coords) == 7 * tri.size


def test_matching_rows_never_vanish():
    for _, tri in bundled():
        for row in matching_system(tri).rows:
            assert any(row)


def test_vertex_links_satisfy_the_matching_equations():
    for name, tri in bundled():
        for link in vertex_links(tri):
            assert link.is_admissible(), name
            assert not link.quad_types() or all(
                not used for used in link.quad_types())


def test_vector_construction_rejects_bad_shapes():
    tri = load_bundled('one_tet')
    with pytest.raises(ValueError):
        NormalSurfaceVector(tri, [0] * 6)
    with pytest.raises(ValueError):
        NormalSurfaceVector(tri, [-1] + [0] * 6)


def test_quad_admissibility():
    tri = load_bundled('one_tet')
    one_quad = NormalSurfaceVector(tri, [0, 0, 0, 0, 1, 0, 0])
    two_quads = NormalSurfaceVector(tri, [0, 0, 0, 0, 1, 1, 0])
    assert one_quad.quad_ok() and one_quad.is_admissible()
    assert not two_quads.quad_ok()
    assert not two_quads.is_admissible()


def test_haken_sum_adds_coordinates():
    tri = load_bundled('one_tet')
    u = NormalSurfaceVector(tri, [1, 0, 0, 0, 1, 0, 0])
    v = NormalSurfaceVector(tri, [0, 2, 0, 0, 2, 0, 0])
    s = haken_sum(u, v)
    assert s.coords == (1, 2, 0, 0, 3, 0, 0)


def test_haken_sum_refuses_conflicting_quads():
    tri = load_bundled('one_tet')
    u = NormalSurfaceVector(tri, [0, 0, 0, 0, 1, 0, 0])
    v = NormalSurfaceVector(tri, [0, 0, 0, 0, 0, 1, 0])
    with pytest.raises(QuadConflict):
        haken_sum(u, v)


def test_haken_sum_refuses_foreign_vectors():
    u = NormalSurfaceVector(load_bundled('one_tet'), [1, 1, 1, 1, 0, 0, 0])
    w = NormalSurfaceVector(load_bundled('solid_torus'), [0] * 14)
    with pytest.raises(ValueError):
        haken_sum(u, w)


def test_haken_sum_requires_admissible_operands():
    tri = load_bundled('solid_torus')
    # positive coordinates that break the matching equations
    bad = NormalSurfaceVector(tri, [1] + [0] * 13)
    assert not bad.is_admissible()
    good = vertex_link(tri, tri.skeleton.vertices[0])
    with pytest.raises(ValueError):
        haken_sum(bad, good)


def test_scalar_multiple_scales_weights():
    tri = load_bundled('lens_three')
    link = vertex_link(tri, tri.skeleton.vertices[0])
    tripled = scalar_multiple(link, 3)
    assert tripled.coords == tuple(3 * c for c in link.coords)
    for cls in tri.skeleton.edges:
        assert tripled.edge_weight(cls) == 3 * link.edge_weight(cls)
    with pytest.raises(ValueError):
        scalar_multiple(link, 0)


def test_reduced_divides_out_common_factors():
    assert reduced((4, 6, 0, 2)) == (2, 3, 0, 1)
    assert reduced((0, 0, 0)) == (0, 0, 0)
    assert reduced((5,)) == (1,)


def test_edge_weight_is_corner_independent():
    for _, tri in bundled():
        for link in vertex_links(tri):
            for cls in tri.skeleton.edges:
                counts = {link.edge_crossings(a, x, y)
                          for (a, x, y) in cls.elements}
                assert len(counts) == 1


# -- surface file format --------------------------------------------------

def test_surface_text_round_trip():
    tri = load_bundled('lens_three')
    vec = NormalSurfaceVector(tri, (0, 0, 0, 0, 2, 0, 0, 1, 1, 0, 0, 1, 0, 0))
    text = dumps_surface(vec, 'lens_three.tri')
    assert text.splitlines()[0] == 'surface over lens_three.tri t=2'
    again = loads_surface(text, tri)
    assert again == vec


def test_surface_text_rejects_wrong_triangulation():
    tri = load_bundled('lens_three')
    vec = vertex_link(tri, tri.skeleton.vertices[0])
    text = dumps_surface(vec, 'lens_three.tri')
    with pytest.raises(ValueError):
        loads_surface(text, load_bundled('one_tet'))
