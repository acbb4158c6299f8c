"""Connectivity witnesses in the move graph.

connect runs a bidirectional breadth-first search between two
triangulations, treating isomorphism classes (canonical forms) as the
graph's vertices and legal moves as its edges.  Both frontiers grow
level by level, always expanding the smaller side, until they meet or
a configured ceiling stops the search.  A successful outcome carries
a replayable move record whose length is compared against the general
connectivity bound for the two sizes; a refusal carries the frontier
statistics instead.

random_walk scrambles a triangulation with seeded legal moves, and
random_walk_probe uses such a scramble as a goal for connect, which
makes every probe a self-certifying connectivity test: the walk
guarantees a path exists, the search has to find one.
"""

import random

from .bounds import Const, bound_catalogue, compare, serialize
from .homology import fingerprint
from .moves import (IllegalMove, MoveRecord, apply_move, candidate_moves,
                    enumerate_moves, tet_delta, transport_move)
from .triangulation import isomorphism


class FingerprintMismatch(ValueError):
    """The two endpoints differ in an invariant every move preserves,
    so no path can exist and the search refuses immediately."""


class SearchConfig:
    """Ceilings and the seed governing one search run.  max_frontier
    caps both a single level and the total number of states explored,
    so a hopeless search refuses promptly instead of finishing a
    runaway level."""

    __slots__ = ('max_tets', 'max_frontier', 'max_depth', 'seed')

    def __init__(self, max_tets, max_frontier=10000, max_depth=6, seed=0):
        for name, value in (('max_tets', max_tets),
                            ('max_frontier', max_frontier),
                            ('max_depth', max_depth)):
            if value < 1:
                raise ValueError('%s must be positive, got %r' % (name, value))
        self.max_tets = max_tets
        self.max_frontier = max_frontier
        self.max_depth = max_depth
        self.seed = seed

    def __repr__(self):
        return ('SearchConfig(max_tets=%d, max_frontier=%d, max_depth=%d, '
                'seed=%d)' % (self.max_tets, self.max_frontier,
                              self.max_depth, self.seed))


class SearchOutcome:
    """A found path with its bound comparison, or a refusal with the
    statistics of the attempt."""

    __slots__ = ('record', 'stats', 'bound_report')

    def __init__(self, record, stats, bound_report=None):
        self.record = record
        self.stats = stats
        self.bound_report = bound_report

    @property
    def ok(self):
        return self.record is not None

    def line(self):
        if self.ok:
            return ('path of length %d, %s'
                    % (len(self.record), self.bound_report))
        return ('refused: %s (explored %d, depth %d+%d)'
                % (self.stats['reason'], self.stats['explored'],
                   self.stats['depth_forward'], self.stats['depth_backward']))

    def __repr__(self):
        return '<SearchOutcome: %s>' % self.line()


def _bound_report(length, p, q):
    expr = bound_catalogue()['main_bound'].substitute({'p': p, 'q': q})
    verdict = compare(Const(length), expr)
    state = 'within bound' if verdict != 'greater' else 'EXCEEDS bound'
    return '%s (%d vs %s)' % (state, length, serialize(expr))


def _expand(node_rep, cfg, visited):
    """Deterministic legal neighbours of one representative, capped by
    the tetrahedron ceiling and deduplicated per side."""
    out = []
    for move, result, inverse in enumerate_moves(node_rep, with_results=True):
        if result.size > cfg.max_tets:
            continue
        key = result.canonical_form()
        if key in visited:
            continue
        out.append((key, move, inverse, result))
    return out


def _forward_path(visited_f, key):
    chain = []
    while True:
        parent, move, rep = visited_f[key]
        if parent is None:
            break
        chain.append((move, rep))
        key = parent
    chain.reverse()
    return chain


def _assemble(start, goal, visited_f, visited_b, meet):
    record = MoveRecord()
    current = start
    for move, rep in _forward_path(visited_f, meet):
        current = apply_move(current, move)
        record.append(move, current.size)
    key = meet
    while True:
        parent, _, inverse, rep = visited_b[key]
        if parent is None:
            break
        iso = isomorphism(rep, current)
        if iso is None:
            raise AssertionError('path reconstruction lost its anchor')
        carried = transport_move(inverse, *iso)
        current = apply_move(current, carried)
        record.append(carried, current.size)
        key = parent
    if current.canonical_form() != goal.canonical_form():
        raise AssertionError('assembled record does not reach the goal')
    return record


def connect(start, goal, cfg):
    """A move record from start to a triangulation isomorphic to goal,
    or a refusal with frontier statistics once a ceiling is hit."""
    if not start.is_valid or not goal.is_valid:
        raise ValueError('both endpoints must be valid triangulations')
    if fingerprint(start) != fingerprint(goal):
        raise FingerprintMismatch(
            'endpoints differ in a move-invariant property: %r vs %r'
            % (fingerprint(start), fingerprint(goal)))

    stats = {'explored': 2, 'depth_forward': 0, 'depth_backward': 0,
             'reason': None}
    start_key = start.canonical_form()
    goal_key = goal.canonical_form()
    if start_key == goal_key:
        return SearchOutcome(MoveRecord(), stats,
                             _bound_report(0, start.size, goal.size))

    # visited maps canonical form -> (parent key, move, rep) on the
    # forward side and (parent key, move, inverse, rep) on the
    # backward side; moves are addressed in the parent representative,
    # inverses in the child's.
    visited_f = {start_key: (None, None, start)}
    visited_b = {goal_key: (None, None, None, goal)}
    frontier_f = [start_key]
    frontier_b = [goal_key]

    def finish(meet):
        record = _assemble(start, goal, visited_f, visited_b, meet)
        return SearchOutcome(record, stats,
                             _bound_report(len(record), start.size,
                                           goal.size))

    while frontier_f and frontier_b:
        if stats['depth_forward'] + stats['depth_backward'] >= cfg.max_depth:
            stats['reason'] = 'depth ceiling %d reached' % cfg.max_depth
            break
        forward = len(frontier_f) <= len(frontier_b)
        frontier = frontier_f if forward else frontier_b
        visited = visited_f if forward else visited_b
        other = visited_b if forward else visited_f
        level = []
        meet = None
        for key in frontier:
            rep = visited[key][2 if forward else 3]
            for child, move, inverse, result in _expand(rep, cfg, visited):
                if child in visited:
                    continue
                if forward:
                    visited[child] = (key, move, result)
                else:
                    visited[child] = (key, move, inverse, result)
                stats['explored'] += 1
                level.append(child)
                if child in other:
                    meet = child
                    break
                if len(level) > cfg.max_frontier or \
                        stats['explored'] > cfg.max_frontier:
                    stats['reason'] = ('frontier ceiling %d exceeded'
                                       % cfg.max_frontier)
                    break
            if meet is not None or stats['reason'] is not None:
                break
        if forward:
            stats['depth_forward'] += 1
            frontier_f = level
        else:
            stats['depth_backward'] += 1
            frontier_b = level
        if meet is not None:
            return finish(meet)
        if stats['reason'] is not None:
            break
    if stats['reason'] is None:
        stats['reason'] = 'move graph exhausted under the tetrahedron ceiling'
    stats['frontier_forward'] = len(frontier_f)
    stats['frontier_backward'] = len(frontier_b)
    return SearchOutcome(None, stats)


def random_walk(tri, steps, seed, max_tets=None):
    """A seeded walk of legal moves: the record taken and the final
    triangulation.  Steps that would exceed max_tets are never taken.
    Each step shuffles the candidate sites and applies the first legal
    one, so only a handful of trial applications are paid per step
    rather than a full legality sweep."""
    rng = random.Random(seed)
    record = MoveRecord()
    current = tri
    for _ in range(steps):
        candidates = list(candidate_moves(current))
        rng.shuffle(candidates)
        for move in candidates:
            if max_tets is not None \
                    and current.size + tet_delta(move) > max_tets:
                continue
            try:
                result = apply_move(current, move)
            except IllegalMove:
                continue
            current = result
            record.append(move, current.size)
            break
        else:
            break
    return record, current


def random_walk_probe(tri, steps, cfg):
    """Scramble tri with seeded moves and ask connect to find a way
    back.  The walk proves a path exists, so failures always mean a
    ceiling was too low."""
    _, goal = random_walk(tri, steps, cfg.seed, cfg.max_tets)
    return connect(tri, goal, cfg)
