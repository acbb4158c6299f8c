"""Bidirectional search over the move graph.

The probes are self-certifying: a seeded walk manufactures a goal
that is reachable by construction, so the search has no excuse not to
find some path back.  Path lengths are compared symbolically against
the general connectivity bound, which no desk-scale path can exceed.
"""

import pytest

from pachner.corpus import load_bundled
from pachner.moves import Move, apply_move, enumerate_moves
from pachner.search import (FingerprintMismatch, SearchConfig, SearchOutcome,
                            connect, random_walk, random_walk_probe)
from pachner.triangulation import loads


def small_config(**overrides):
    settings = dict(max_tets=8, max_frontier=5000, max_depth=6, seed=0)
    settings.update(overrides)
    return SearchConfig(**settings)


def replay(tri, record):
    current = tri
    for move in record:
        current = apply_move(current, move)
    return current


@pytest.mark.parametrize('field', ['max_tets', 'max_frontier', 'max_depth'])
def test_ceilings_must_be_positive(field):
    with pytest.raises(ValueError, match=field):
        small_config(**{field: 0})


def test_identical_endpoints_need_no_moves():
    tri = load_bundled('one_tet')
    outcome = connect(tri, tri, small_config())
    assert outcome.ok
    assert len(outcome.record) == 0
    assert 'within bound' in outcome.bound_report


def test_single_move_found():
    tri = load_bundled('one_tet')
    goal = apply_move(tri, Move('M14', 0))
    outcome = connect(tri, goal, small_config())
    assert outcome.ok
    assert len(outcome.record) == 1
    assert replay(tri, outcome.record).canonical_form() == \
        goal.canonical_form()


def test_shuffled_ball_reconnected():
    tri = load_bundled('one_tet')
    grown = apply_move(tri, Move('M14', 0))
    shuffle = next(m for m, _, _ in enumerate_moves(grown, with_results=True)
                   if m.kind == 'M23')
    goal = apply_move(grown, shuffle)
    outcome = connect(tri, goal, small_config())
    assert outcome.ok
    assert len(outcome.record) == 2
    assert replay(tri, outcome.record).canonical_form() == \
        goal.canonical_form()
    assert 'within bound' in outcome.bound_report
    assert outcome.line().startswith('path of length 2')


def test_goal_relabeling_is_invisible():
    tri = load_bundled('lens_three')
    relabeled = tri.relabeled([1, 0], [(2, 3, 0, 1), (0, 1, 2, 3)])
    outcome = connect(tri, relabeled, small_config())
    assert outcome.ok
    assert len(outcome.record) == 0


def test_fingerprint_mismatch_is_a_distinct_error():
    lens = load_bundled('lens_three')
    sphere = load_bundled('two_tet_sphere')
    with pytest.raises(FingerprintMismatch):
        connect(lens, sphere, small_config())
    assert issubclass(FingerprintMismatch, ValueError)


def test_invalid_endpoints_are_rejected():
    broken = loads('tets 1\n0: 0/0132 - - -\n')
    good = load_bundled('one_tet')
    with pytest.raises(ValueError, match='valid'):
        connect(broken, good, small_config())


def test_refusal_reports_frontier_statistics():
    tri = load_bundled('one_tet')
    _, goal = random_walk(tri, 6, seed=5, max_tets=10)
    outcome = connect(tri, goal, small_config(max_tets=10, max_depth=2))
    if outcome.ok:
        pytest.skip('walk happened to stay shallow for this seed')
    assert outcome.record is None
    assert 'ceiling' in outcome.stats['reason']
    assert outcome.stats['explored'] > 2
    assert outcome.line().startswith('refused')
    assert isinstance(outcome, SearchOutcome)


def test_search_is_deterministic():
    tri = load_bundled('solid_torus')
    cfg = small_config(max_tets=9, max_depth=8, seed=11)
    first = random_walk_probe(tri, 4, cfg)
    second = random_walk_probe(tri, 4, cfg)
    assert first.ok and second.ok
    assert first.record.dumps() == second.record.dumps()


def test_walks_are_seeded_and_capped():
    tri = load_bundled('solid_torus')
    rec_a, end_a = random_walk(tri, 12, seed=5, max_tets=6)
    rec_b, end_b = random_walk(tri, 12, seed=5, max_tets=6)
    assert rec_a.dumps() == rec_b.dumps()
    assert end_a.canonical_form() == end_b.canonical_form()
    assert all(size <= 6 for size in rec_a.sizes)
    rec_c, _ = random_walk(tri, 12, seed=6, max_tets=6)
    assert rec_a.dumps() != rec_c.dumps()


def test_zero_step_walk_is_trivial():
    tri = load_bundled('two_tet_sphere')
    record, end = random_walk(tri, 0, seed=0)
    assert len(record) == 0
    assert end is tri
    outcome = random_walk_probe(tri, 0, small_config())
    assert outcome.ok and len(outcome.record) == 0


def test_inverse_pair_walk_costs_at_most_two():
    tri = load_bundled('two_tet_sphere')
    outcome = random_walk_probe(tri, 2, small_config(max_tets=9, seed=1))
    assert outcome.ok
    assert len(outcome.record) <= 2


@pytest.mark.parametrize('seed', range(6))
def test_probes_on_the_solid_torus(seed):
    tri = load_bundled('solid_torus')
    cfg = SearchConfig(max_tets=10, max_frontier=20000, max_depth=8,
                       seed=seed)
    outcome = random_walk_probe(tri, 6, cfg)
    assert outcome.ok, outcome.line()
    assert 'within bound' in outcome.bound_report
    assert replay(tri, outcome.record).canonical_form() == \
        random_walk(tri, 6, seed, 10)[1].canonical_form()
