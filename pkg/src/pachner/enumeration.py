"""Vertex and fundamental normal surface enumeration.

Admissibility is not a convex condition (one quad type per tetrahedron
out of three), so the solution set splits into 4^t polyhedral subcones,
one per selection of at most one allowed quad type per tetrahedron.
Within a subcone the admissible solutions are exactly the nonnegative
lattice solutions of the matching system supported on the allowed
coordinates, and two classical algorithms apply:

  - extreme rays by the double description method, giving the vertex
    surface candidates after coprime normalization and deduplication
    across subcones (rays using no quads appear in many subcones);
  - the Hilbert basis by a completion search, giving the fundamental
    surfaces.  A fundamental surface of the full admissible set lies in
    the Hilbert basis of its own subcone and vice versa, because a
    decomposition u = v + w forces the supports of v and w into u's
    subcone, so the union over subcones is exact.

Everything is exact integer arithmetic.  Ceilings on the tetrahedron
count and on intermediate set sizes guard against blowups; exceeding
one raises ResourceGuard rather than grinding on.
"""

from itertools import product
from math import gcd

from .normal import (NormalSurfaceVector, matching_system, quad_index,
                     reduced)
from .geometry import reconstruct


class ResourceGuard(RuntimeError):
    """An enumeration ceiling was exceeded; results would be partial."""


class BoundViolation(RuntimeError):
    """An enumerated coordinate exceeded a proven bound, which can only
    mean the enumeration itself is wrong."""


class EnumerationLimits:
    def __init__(self, max_tets_vertex=6, max_tets_fundamental=3,
                 max_rays=20000, max_frontier=200000):
        self.max_tets_vertex = max_tets_vertex
        self.max_tets_fundamental = max_tets_fundamental
        self.max_rays = max_rays
        self.max_frontier = max_frontier


DEFAULT_LIMITS = EnumerationLimits()


class SurfaceCandidate:
    """An enumerated vector with its geometric flags.  Extreme rays
    whose minimal integer point is disconnected or one-sided are kept
    and flagged rather than silently dropped."""

    __slots__ = ('vector', 'connected', 'two_sided', 'chi', 'name')

    def __init__(self, vector):
        self.vector = vector
        geom = reconstruct(vector)
        self.connected = geom.component_count == 1
        self.two_sided = all(geom.two_sided_per_component)
        self.chi = geom.chi
        reports = geom.classify()
        self.name = reports[0].name if len(reports) == 1 else (
            'empty' if not reports else 'disconnected')

    @property
    def is_vertex_surface(self):
        return self.connected and self.two_sided

    @property
    def coords(self):
        return self.vector.coords

    def max_coord(self):
        return max(self.coords, default=0)

    def __repr__(self):
        return ('<SurfaceCandidate %s chi=%d %s>'
                % (self.name, self.chi, self.coords))


def quad_selections(t):
    """All 4^t choices of at most one allowed quad type per tet."""
    return product((None, 0, 1, 2), repeat=t)


def allowed_columns(t, selection):
    cols = []
    for a, q in enumerate(selection):
        cols.extend(7 * a + w for w in range(4))
        if q is not None:
            cols.append(quad_index(a, q))
    return cols


def _dot(row, vec):
    return sum(r * v for r, v in zip(row, vec) if r)


def extreme_rays_of_subcone(rows, n, columns, max_rays):
    """Double description: start from the coordinate cone on the
    allowed columns and intersect with one matching hyperplane at a
    time.  Rays are integer vectors reduced to coprime form; adjacency
    of a positive/negative pair is the standard combinatorial test on
    zero sets."""
    rays = []
    for j in columns:
        unit = [0] * n
        unit[j] = 1
        rays.append(tuple(unit))
    for row in rows:
        plus, minus, zero = [], [], []
        for r in rays:
            s = _dot(row, r)
            if s > 0:
                plus.append((r, s))
            elif s < 0:
                minus.append((r, s))
            else:
                zero.append(r)
        new_rays = dict.fromkeys(zero)
        zero_sets = {r: frozenset(j for j in columns if not r[j])
                     for r in rays}
        for rp, sp in plus:
            zp = zero_sets[rp]
            for rm, sm in minus:
                shared = zp & zero_sets[rm]
                adjacent = True
                for other, zo in zero_sets.items():
                    if other is rp or other is rm:
                        continue
                    if shared <= zo:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo = [sp * b - sm * a for a, b in zip(rp, rm)]
                g = 0
                for c in combo:
                    g = gcd(g, c)
                if g > 1:
                    combo = [c // g for c in combo]
                new_rays[tuple(combo)] = None
        rays = list(new_rays)
        if len(rays) > max_rays:
            raise ResourceGuard('ray count %d exceeds the ceiling %d'
                                % (len(rays), max_rays))
    return rays


def enumerate_vertex(tri, limits=DEFAULT_LIMITS):
    """Extreme rays of every quad-selection subcone, deduplicated, as
    SurfaceCandidates in a deterministic order."""
    t = tri.size
    if t > limits.max_tets_vertex:
        raise ResourceGuard('vertex enumeration guarded at %d tetrahedra, '
                            'got %d' % (limits.max_tets_vertex, t))
    system = matching_system(tri)
    n = 7 * t
    seen = {}
    for selection in quad_selections(t):
        cols = allowed_columns(t, selection)
        for ray in extreme_rays_of_subcone(system.rows, n, cols,
                                           limits.max_rays):
            key = reduced(ray)
            if key not in seen:
                seen[key] = SurfaceCandidate(
                    NormalSurfaceVector(tri, key, _system=system))
    return sorted(seen.values(), key=lambda c: c.coords)


def hilbert_basis_of_subcone(rows, n, columns, max_frontier):
    """Minimal nonzero lattice solutions supported on the allowed
    columns, by completion: grow candidate vectors one unit at a time,
    only ever stepping in a direction that shrinks the residual norm,
    and prune anything that already dominates a known solution.  The
    search is level-synchronous, so output order is deterministic."""
    if not rows:
        basis = []
        for j in columns:
            unit = [0] * n
            unit[j] = 1
            basis.append(tuple(unit))
        return basis
    residual_of_unit = {j: tuple(row[j] for row in rows) for j in columns}
    basis = []
    frontier = {}
    for j in columns:
        unit = [0] * n
        unit[j] = 1
        frontier[tuple(unit)] = residual_of_unit[j]
    while frontier:
        next_frontier = {}
        for vec, res in frontier.items():
            if not any(res):
                basis.append(vec)
        solutions = [v for v in basis]
        for vec, res in frontier.items():
            if not any(res):
                continue
            for j in columns:
                unit_res = residual_of_unit[j]
                if sum(a * b for a, b in zip(res, unit_res)) >= 0:
                    continue
                child = list(vec)
                child[j] += 1
                child = tuple(child)
                if child in next_frontier:
                    continue
                if any(all(c >= s for c, s in zip(child, sol))
                       for sol in solutions):
                    continue
                next_frontier[child] = tuple(
                    a + b for a, b in zip(res, unit_res))
        if len(next_frontier) > max_frontier:
            raise ResourceGuard('completion frontier %d exceeds the '
                                'ceiling %d' % (len(next_frontier),
                                                max_frontier))
        frontier = next_frontier
    return basis


def enumerate_fundamental(tri, limits=DEFAULT_LIMITS):
    """Union of the subcone Hilbert bases: exactly the admissible
    vectors that are not sums of two nonzero admissible vectors."""
    t = tri.size
    if t > limits.max_tets_fundamental:
        raise ResourceGuard('fundamental enumeration guarded at %d '
                            'tetrahedra, got %d'
                            % (limits.max_tets_fundamental, t))
    system = matching_system(tri)
    n = 7 * t
    seen = {}
    for selection in quad_selections(t):
        cols = allowed_columns(t, selection)
        for vec in hilbert_basis_of_subcone(system.rows, n, cols,
                                            limits.max_frontier):
            if vec not in seen:
                seen[vec] = SurfaceCandidate(
                    NormalSurfaceVector(tri, vec, _system=system))
    out = sorted(seen.values(), key=lambda c: c.coords)
    for cand in out:
        _check_indecomposable(cand, out)
    return out


def _check_indecomposable(cand, candidates):
    """Self-check required of every fundamental: it must not be the sum
    of two members of the output set (a necessary condition of true
    indecomposability that the output can verify about itself)."""
    coords = cand.coords
    pool = {c.coords for c in candidates}
    for other in candidates:
        o = other.coords
        if o == coords or not all(a <= b for a, b in zip(o, coords)):
            continue
        rest = tuple(b - a for a, b in zip(o, coords))
        if any(rest) and rest in pool:
            raise BoundViolation('enumerated fundamental %s decomposes as '
                                 '%s + %s' % (coords, o, rest))


class BoundReport:
    def __init__(self, t, vertex_count, vertex_max, vertex_bound,
                 fundamental_count, fundamental_max, fundamental_bound,
                 fundamental_guard=None):
        self.t = t
        self.vertex_count = vertex_count
        self.vertex_max = vertex_max
        self.vertex_bound = vertex_bound
        self.fundamental_count = fundamental_count
        self.fundamental_max = fundamental_max
        self.fundamental_bound = fundamental_bound
        self.fundamental_guard = fundamental_guard

    @property
    def vertex_margin(self):
        return self.vertex_bound - self.vertex_max

    @property
    def fundamental_margin(self):
        if self.fundamental_bound is None:
            return None
        return self.fundamental_bound - self.fundamental_max

    def lines(self):
        out = ['t=%d' % self.t,
               'vertex surfaces: %d, max coordinate %d <= %d '
               '(margin %d)' % (self.vertex_count, self.vertex_max,
                                self.vertex_bound, self.vertex_margin)]
        if self.fundamental_bound is not None:
            out.append('fundamental surfaces: %d, max coordinate %d <= %d '
                       '(margin %d)'
                       % (self.fundamental_count, self.fundamental_max,
                          self.fundamental_bound, self.fundamental_margin))
        else:
            out.append('fundamental surfaces: skipped (guarded at %d '
                       'tetrahedra)' % self.fundamental_guard)
        return out

    def __repr__(self):
        return '<BoundReport %s>' % '; '.join(self.lines())


def verify_coordinate_bounds(tri, limits=DEFAULT_LIMITS):
    """Check every enumerated coordinate against the proven ceilings:
    2^(7t) for vertex surfaces and 7t·2^(7t) for fundamentals.  A
    violation raises BoundViolation, since the bounds are theorems."""
    t = tri.size
    vertex = enumerate_vertex(tri, limits)
    vertex_max = max((c.max_coord() for c in vertex), default=0)
    vertex_bound = 2 ** (7 * t)
    if vertex_max > vertex_bound:
        raise BoundViolation('vertex coordinate %d exceeds 2^(7t)=%d'
                             % (vertex_max, vertex_bound))
    if t <= limits.max_tets_fundamental:
        fundamental = enumerate_fundamental(tri, limits)
        fundamental_max = max((c.max_coord() for c in fundamental),
                              default=0)
        fundamental_bound = 7 * t * 2 ** (7 * t)
        if fundamental_max > fundamental_bound:
            raise BoundViolation('fundamental coordinate %d exceeds '
                                 '7t·2^(7t)=%d'
                                 % (fundamental_max, fundamental_bound))
    else:
        fundamental = []
        fundamental_max = 0
        fundamental_bound = None
    return BoundReport(t, len(vertex), vertex_max, vertex_bound,
                       len(fundamental), fundamental_max, fundamental_bound,
                       fundamental_guard=limits.max_tets_fundamental)
