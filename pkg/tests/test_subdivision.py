"""Cutting along normal surfaces and realizing the cut by moves.

The small cases have hand-counted chunk structures: coning a lone
tetrahedron gives 4 pieces; one corner triangle cuts it into a small
tetrahedron (4 boundary triangles) and a truncated one (8); a single
quadrilateral leaves two triangular prisms (8 each).  Those counts,
frozen below, pin down the fan construction exactly.
"""

import pytest

from pachner.corpus import bundled_names, load_bundled
from pachner.homology import fingerprint
from pachner.moves import apply_move
from pachner.normal import NormalSurfaceVector, triangle_index
from pachner.subdivision import (RealizationOutcome, SubdivisionResult,
                                 certify_subcomplex, dumps_embedding,
                                 realize_moves, subdivide_along)


def zero_vector(tri):
    return NormalSurfaceVector(tri, [0] * (7 * tri.size))


def vertex_link(tri, cls):
    coords = [0] * (7 * tri.size)
    for (a, w) in cls.elements:
        coords[triangle_index(a, w)] += 1
    return NormalSurfaceVector(tri, coords)


def replay(tri, record):
    current = tri
    for move in record:
        current = apply_move(current, move)
    return current


# -- the subdivision itself ---------------------------------------------------

@pytest.mark.parametrize('name', bundled_names())
def test_zero_vector_is_the_cone(name):
    tri = load_bundled(name)
    result = subdivide_along(tri, zero_vector(tri))
    assert result.t1.is_valid
    assert result.n == 0
    assert result.tets1 == 4 * tri.size
    assert result.ball_sizes == [4] * tri.size
    assert len(result.t1.boundary_faces()) == len(tri.boundary_faces())


def test_corner_triangle_chunks():
    tri = load_bundled('one_tet')
    result = subdivide_along(tri, NormalSurfaceVector(tri,
                                                      [1, 0, 0, 0, 0, 0, 0]))
    assert result.tets1 == 12
    assert sorted(result.ball_sizes) == [4, 8]
    assert result.t1.is_valid


def test_single_quad_gives_two_prisms():
    tri = load_bundled('one_tet')
    result = subdivide_along(tri, NormalSurfaceVector(tri,
                                                      [0, 0, 0, 0, 1, 0, 0]))
    assert result.tets1 == 16
    assert result.ball_sizes == [8, 8]
    geometry_faces = result.embedding['discs'][(0, ('quad', 0))]
    assert len(geometry_faces) == 2


@pytest.mark.parametrize('name', bundled_names())
def test_vertex_links_subdivide_and_certify(name):
    tri = load_bundled(name)
    for cls in tri.skeleton.vertices:
        vector = vertex_link(tri, cls)
        assert vector.is_admissible()
        result = subdivide_along(tri, vector)
        assert result.t1.is_valid
        assert result.tets1 <= 20 * (result.n + result.t)
        assert max(result.ball_sizes) <= 20
        report = certify_subcomplex(result)
        assert report.ok, report.problems
        assert report.faces == result.n


def test_genus_two_surface_in_lens_space():
    tri = load_bundled('lens_three')
    vector = NormalSurfaceVector(tri, [0, 0, 0, 0, 2, 0, 0,
                                       1, 1, 0, 0, 1, 0, 0])
    result = subdivide_along(tri, vector)
    report = certify_subcomplex(result)
    assert report.ok
    assert report.chi == -2
    assert report.boundary_edges == 0
    assert result.tets1 == 60


def test_subdivision_preserves_the_manifold():
    tri = load_bundled('lens_three')
    result = subdivide_along(tri, vertex_link(tri, tri.skeleton.vertices[0]))
    assert fingerprint(result.t1) == fingerprint(tri)


def test_embedding_partitions_the_new_tetrahedra():
    tri = load_bundled('two_tet_sphere')
    result = subdivide_along(tri, vertex_link(tri, tri.skeleton.vertices[0]))
    seen = sorted(i for block in result.embedding['tets'].values()
                  for i in block)
    assert seen == list(range(result.tets1))


def test_disc_triangle_counts():
    tri = load_bundled('lens_three')
    vector = NormalSurfaceVector(tri, [0, 0, 0, 0, 2, 0, 0,
                                       1, 1, 0, 0, 1, 0, 0])
    result = subdivide_along(tri, vector)
    for (_, disc), faces in result.embedding['discs'].items():
        assert len(faces) == (1 if disc[0] == 'tri' else 2)


def test_rejects_foreign_and_inadmissible_vectors():
    tri = load_bundled('two_tet_sphere')
    other = load_bundled('one_tet')
    foreign = NormalSurfaceVector(other, [0] * 7)
    with pytest.raises(ValueError, match='different triangulation'):
        subdivide_along(tri, foreign)
    two_quads = NormalSurfaceVector(tri, [0, 0, 0, 0, 1, 1, 0] + [0] * 7)
    with pytest.raises(ValueError, match='not admissible'):
        subdivide_along(tri, two_quads)


def test_certifier_notices_a_tampered_embedding():
    tri = load_bundled('lens_three')
    vector = NormalSurfaceVector(tri, [0, 0, 0, 0, 2, 0, 0,
                                       1, 1, 0, 0, 1, 0, 0])
    result = subdivide_along(tri, vector)
    discs = sorted(result.embedding['discs'])
    result.embedding['discs'][discs[0]] = \
        result.embedding['discs'][discs[-1]]
    report = certify_subcomplex(result)
    assert not report.ok
    assert report.problems


def test_embedding_file_layout():
    tri = load_bundled('one_tet')
    result = subdivide_along(tri, NormalSurfaceVector(tri,
                                                      [0, 0, 0, 0, 1, 0, 0]))
    text = dumps_embedding(result)
    lines = text.splitlines()
    assert lines[0] == '# 1 discs embedded in 16 tetrahedra'
    assert 'disc tet=0 kind=quad level=0 -> 0:0 1:0' in lines
    assert any(line.startswith('tet 0 -> ') for line in lines)


def test_repr_mentions_the_disc_and_tet_counts():
    tri = load_bundled('one_tet')
    result = subdivide_along(tri, zero_vector(tri))
    assert repr(result) == '<SubdivisionResult: 0 discs, 1 -> 4 tets>'
    assert isinstance(result, SubdivisionResult)


# -- realizing the cut by moves -----------------------------------------------

@pytest.mark.parametrize('name', bundled_names())
def test_coning_realized_by_one_move_per_tetrahedron(name):
    tri = load_bundled(name)
    result = subdivide_along(tri, zero_vector(tri))
    outcome = realize_moves(tri, result)
    assert outcome.ok
    assert len(outcome.record) == tri.size
    assert len(outcome.record) <= 200 * tri.size
    final = replay(tri, outcome.record)
    assert final.canonical_form() == result.t1.canonical_form()
    assert result.record is outcome.record


def test_corner_disc_realization():
    tri = load_bundled('one_tet')
    vector = NormalSurfaceVector(tri, [1, 0, 0, 0, 0, 0, 0])
    result = subdivide_along(tri, vector)
    outcome = realize_moves(tri, result)
    assert outcome.ok
    assert len(outcome.record) <= 200 * result.n * result.t
    final = replay(tri, outcome.record)
    assert final.canonical_form() == result.t1.canonical_form()


def test_quad_disc_realization():
    tri = load_bundled('one_tet')
    vector = NormalSurfaceVector(tri, [0, 0, 0, 0, 1, 0, 0])
    result = subdivide_along(tri, vector)
    outcome = realize_moves(tri, result)
    assert outcome.ok
    final = replay(tri, outcome.record)
    assert final.canonical_form() == result.t1.canonical_form()


def test_link_realization_goes_through_the_search_bridge():
    tri = load_bundled('two_tet_sphere')
    vector = vertex_link(tri, tri.skeleton.vertices[0])
    result = subdivide_along(tri, vector)
    outcome = realize_moves(tri, result)
    assert outcome.ok
    assert len(outcome.record) <= 200 * result.n * result.t
    final = replay(tri, outcome.record)
    assert final.canonical_form() == result.t1.canonical_form()


def test_exhausted_budget_refuses_with_progress():
    tri = load_bundled('one_tet')
    vector = NormalSurfaceVector(tri, [1, 0, 0, 0, 0, 0, 0])
    result = subdivide_along(tri, vector)
    outcome = realize_moves(tri, result, budget=3)
    assert isinstance(outcome, RealizationOutcome)
    assert not outcome.ok
    assert outcome.record is None
    assert result.record is None
    assert 'budget' in outcome.reason
    assert outcome.progress['backward'] == 3
    assert 'refused' in repr(outcome)
