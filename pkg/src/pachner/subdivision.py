"""Cutting a triangulation open along a normal surface.

subdivide_along builds, for a triangulation T and an admissible
surface vector, the subdivision T1 whose 2-skeleton contains every
normal disc of the surface.  Each tetrahedron is sliced along its
discs with exact rational scaffolding (triangles near the corners,
quadrilaterals stacked through the middle), every polygon of the cut
complex is fanned from a deterministically chosen corner, and each of
the complementary chunks, which are all 3-balls, is coned from an
interior point.  One chunk per tetrahedron plus one per disc gives
n + t balls, and no ball has more than 20 boundary triangles, so the
result has at most 20(n + t) tetrahedra.

realize_moves then tries to witness T -> T1 as an explicit move
sequence: the empty surface is handled by direct scripting (one 1-4
move per tetrahedron is exactly the coning), everything else by
greedy simplification from both ends with a bidirectional search
fallback, re-addressing moves through isomorphisms where the two
sides meet.
"""

from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations

from .geometry import reconstruct
from .moves import IllegalMove, Move, MoveRecord, apply_move, \
    apply_move_with_inverse, transport_move
from .normal import QUAD_PAIRS, quad_index, triangle_index
from .triangulation import EDGE_INDEX, Triangulation, isomorphism

# Corner discs sit within 1/_DEN * count of their vertex, quad discs in
# the middle third of the tetrahedron; the prime keeps the two grids
# from ever producing the same cutting level.
_DEN = 1000003


# -- exact linear algebra -----------------------------------------------------

def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _solve4(rows, rhs):
    m = [[Fraction(x) for x in row] + [Fraction(r)]
         for row, r in zip(rows, rhs)]
    for col in range(4):
        pivot = next((r for r in range(col, 4) if m[r][col]), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(4):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return tuple(m[r][4] for r in range(4))


def _sub3(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def _dot3(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cycle(points):
    """The points of a convex polygon in cyclic order, or None when
    they are collinear.  Points are barycentric 4-tuples; dropping the
    last coordinate is an affine bijection, so ordering happens in
    3-space around the centroid."""
    pts = [p[:3] for p in points]
    first = pts[0]
    normal = None
    for i, j in combinations(range(1, len(pts)), 2):
        normal = _cross3(_sub3(pts[i], first), _sub3(pts[j], first))
        if any(normal):
            break
    if normal is None or not any(normal):
        return None
    k = len(pts)
    centre = tuple(sum(p[i] for p in pts) / k for i in range(3))
    ref = _sub3(first, centre)

    def half(d):
        s = _dot3(_cross3(ref, d), normal)
        if s:
            return 0 if s > 0 else 1
        return 0 if _dot3(d, ref) > 0 else 1

    def compare(ia, ib):
        da = _sub3(pts[ia], centre)
        db = _sub3(pts[ib], centre)
        ha, hb = half(da), half(db)
        if ha != hb:
            return ha - hb
        s = _dot3(_cross3(da, db), normal)
        return -1 if s > 0 else (1 if s < 0 else 0)

    order = sorted(range(k), key=cmp_to_key(compare))
    return tuple(points[i] for i in order)


# -- slicing one tetrahedron --------------------------------------------------

def _unit(w, sign=1):
    return tuple(sign if i == w else 0 for i in range(4))


class _Cell:
    __slots__ = ('verts', 'faces', 'apex')

    def __init__(self, verts, faces, apex):
        self.verts = verts
        self.faces = faces          # list of (tag, point cycle)
        self.apex = apex


class _TetPieces:
    """One tetrahedron of the source triangulation cut along its
    normal discs: the chunks, their polygon faces, and the crossing
    points on each edge in order."""

    def __init__(self, vector, a):
        coords = vector.coords
        self.tet = a
        self.tris = [coords[triangle_index(a, w)] for w in range(4)]
        quads = [(k, coords[quad_index(a, k)])
                 for k in range(3) if coords[quad_index(a, k)]]
        if len(quads) > 1:
            raise ValueError('conflicting quad types in tetrahedron %d' % a)
        self.pair = quads[0][0] if quads else None
        self.q = quads[0][1] if quads else 0
        self._locate_edge_points()
        self._build_cells()

    def _corner_level(self, i):
        return 1 - Fraction(i + 1, _DEN)

    def _quad_level(self, m):
        return Fraction(self.q + 2 + m, 3 * (self.q + 1))

    def _locate_edge_points(self):
        self.edge_points = {}
        for x, y in combinations(range(4), 2):
            entries = []
            for i in range(self.tris[x]):
                entries.append(Fraction(i + 1, _DEN))
            for i in range(self.tris[y]):
                entries.append(1 - Fraction(i + 1, _DEN))
            if self.pair is not None:
                lower, upper = QUAD_PAIRS[self.pair]
                if {x, y} != set(lower) and {x, y} != set(upper):
                    for m in range(self.q):
                        c = self._quad_level(m)
                        entries.append(1 - c if x in lower else c)
            entries.sort()
            points = []
            for s in entries:
                p = [Fraction(0)] * 4
                p[x], p[y] = 1 - s, s
                points.append(tuple(p))
            self.edge_points[(x, y)] = points

    def point_name(self, p):
        """Combinatorial identity of a point on the tetrahedron's
        1-skeleton: a corner, or the j-th crossing point of an edge."""
        support = [w for w in range(4) if p[w]]
        if len(support) == 1:
            return ('corner', support[0])
        x, y = support
        return ('edge', x, y, self.edge_points[(x, y)].index(p))

    def _plans(self):
        base = [(('facet', w), _unit(w, -1), Fraction(0)) for w in range(4)]
        inner = []
        for w in range(4):
            if self.tris[w]:
                inner.append((('disc', ('tri', w, self.tris[w] - 1)),
                              _unit(w), self._corner_level(self.tris[w] - 1)))
        plans = []
        for w in range(4):
            for i in range(self.tris[w]):
                cell = list(base)
                cell.append((('disc', ('tri', w, i)),
                             _unit(w, -1), -self._corner_level(i)))
                if i:
                    cell.append((('disc', ('tri', w, i - 1)),
                                 _unit(w), self._corner_level(i - 1)))
                plans.append(cell)
        if self.pair is None:
            plans.append(base + inner)
            return plans
        lower, upper = QUAD_PAIRS[self.pair]
        alpha = tuple(1 if w in lower else 0 for w in range(4))
        neg = tuple(-x for x in alpha)
        plans.append(base + inner
                     + [(('disc', ('quad', 0)), alpha, self._quad_level(0))])
        for m in range(self.q - 1):
            plans.append(base
                         + [(('disc', ('quad', m)), neg, -self._quad_level(m)),
                            (('disc', ('quad', m + 1)),
                             alpha, self._quad_level(m + 1))])
        plans.append(base + inner
                     + [(('disc', ('quad', self.q - 1)),
                         neg, -self._quad_level(self.q - 1))])
        return plans

    def _build_cells(self):
        self.cells = []
        for constraints in self._plans():
            verts = set()
            for (_, a1, c1), (_, a2, c2), (_, a3, c3) in \
                    combinations(constraints, 3):
                p = _solve4([a1, a2, a3, (1, 1, 1, 1)], (c1, c2, c3, 1))
                if p is not None and \
                        all(_dot(alpha, p) <= c for _, alpha, c in constraints):
                    verts.add(p)
            verts = sorted(verts)
            faces = []
            for tag, alpha, c in constraints:
                on = [p for p in verts if _dot(alpha, p) == c]
                if len(on) < 3:
                    continue
                cycle = _cycle(on)
                if cycle is not None:
                    faces.append((tag, cycle))
            if len(verts) < 4 or len(faces) < 4:
                raise AssertionError(
                    'degenerate chunk in tetrahedron %d' % self.tet)
            apex = tuple(sum(p[i] for p in verts) / len(verts)
                         for i in range(4))
            self.cells.append(_Cell(verts, faces, apex))


# -- assembling the subdivision -----------------------------------------------

class SubdivisionResult:
    """The subdivision containing a normal surface in its 2-skeleton.

    t1 is the new triangulation; embedding maps every normal disc,
    every source tetrahedron, and every source face to its simplices
    in t1; ball_sizes lists the boundary-triangle count of each
    complementary ball.  record stays None until realize_moves
    attaches a successful move sequence.
    """

    __slots__ = ('t1', 'embedding', 'n', 't', 'tets1', 'ball_sizes',
                 'source', 'vector', 'record')

    def __init__(self, t1, embedding, n, t, ball_sizes, source, vector):
        self.t1 = t1
        self.embedding = embedding
        self.n = n
        self.t = t
        self.tets1 = t1.size
        self.ball_sizes = ball_sizes
        self.source = source
        self.vector = vector
        self.record = None

    def __repr__(self):
        return ('<SubdivisionResult: %d discs, %d -> %d tets>'
                % (self.n, self.t, self.tets1))


def _transport_name(name, sigma, target):
    if name[0] == 'corner':
        return ('corner', sigma(name[1]))
    _, x, y, j = name
    u, v = sigma(x), sigma(y)
    lo, hi = (u, v) if u < v else (v, u)
    count = len(target.edge_points[(lo, hi)])
    return ('edge', lo, hi, j if u == lo else count - 1 - j)


def _fan_triples(cycle, apex_index):
    k = len(cycle)
    ring = [(apex_index + s) % k for s in range(k)]
    return [(ring[0], ring[i], ring[i + 1]) for i in range(1, k - 1)]


def subdivide_along(tri, vector):
    """Cut tri along the surface and cone the pieces: a triangulation
    containing every normal disc as a union of its 2-faces, with at
    most 20(n + t) tetrahedra."""
    if not tri.is_valid:
        raise ValueError('cannot subdivide an invalid triangulation')
    if not vector.triangulation.same_gluings(tri):
        raise ValueError('surface vector lives over a different triangulation')
    if not vector.is_admissible():
        raise ValueError('surface vector is not admissible')
    pieces = [_TetPieces(vector, a) for a in range(tri.size)]

    cells = []
    for a, tp in enumerate(pieces):
        for local, cell in enumerate(tp.cells):
            cells.append((a, local, cell))

    disc_sides = {}
    facet_sides = {}
    for gid, (a, _, cell) in enumerate(cells):
        for fidx, (tag, cycle) in enumerate(cell.faces):
            if tag[0] == 'disc':
                disc_sides.setdefault((a, tag[1]), []).append((gid, cycle))
            else:
                facet_sides.setdefault((a, tag[1]), []).append((gid, cycle))

    # Every polygon pair becomes a list of aligned point triples, one
    # per fan triangle, with the apex chosen once on a canonical side
    # so both cells cone the same triangles.
    pairs = []

    for key in sorted(disc_sides):
        sides = disc_sides[key]
        if len(sides) != 2:
            raise AssertionError('disc %s bounds %d chunks'
                                 % (key, len(sides)))
        (g1, cyc1), (g2, cyc2) = sides
        apex = cyc1.index(min(cyc1))
        fan = _fan_triples(cyc1, apex)
        back = {p: i for i, p in enumerate(cyc2)}
        t1 = [tuple(cyc1[i] for i in tri_) for tri_ in fan]
        t2 = [tuple(cyc2[back[cyc1[i]]] for i in tri_) for tri_ in fan]
        pairs.append((('disc',) + key, (g1, t1), (g2, t2)))

    done = set()
    for (a, f) in sorted(facet_sides):
        if (a, f) in done:
            continue
        done.add((a, f))
        here = facet_sides[(a, f)]
        named_here = []
        for gid, cycle in here:
            names = tuple(pieces[a].point_name(p) for p in cycle)
            named_here.append((gid, cycle, names))
        slot = tri.gluing(a, f)
        if slot is None:
            for gid, cycle, names in named_here:
                apex = names.index(min(names))
                fan = _fan_triples(cycle, apex)
                triples = [tuple(cycle[i] for i in tri_) for tri_ in fan]
                pairs.append((('boundary', a, f), (gid, triples), None))
            continue
        b, sigma = slot
        fb = sigma(f)
        done.add((b, fb))
        partner = {}
        for gid, cycle in facet_sides[(b, fb)]:
            names = {pieces[b].point_name(p): p for p in cycle}
            partner[frozenset(names)] = (gid, names)
        for gid, cycle, names in named_here:
            carried = [_transport_name(nm, sigma, pieces[b]) for nm in names]
            gid2, lookup = partner.pop(frozenset(carried))
            apex = names.index(min(names))
            fan = _fan_triples(cycle, apex)
            t1 = [tuple(cycle[i] for i in tri_) for tri_ in fan]
            t2 = [tuple(lookup[carried[i]] for i in tri_) for tri_ in fan]
            pairs.append((('face', a, f), (gid, t1), (gid2, t2)))
        if partner:
            raise AssertionError('unmatched sub-faces across (%d,%d)' % (a, f))

    # one new tetrahedron per coned triangle
    t1_points = []
    t1_cell = []
    sides_of_pair = []
    for key, side1, side2 in pairs:
        made = []
        for side in (side1, side2):
            if side is None:
                made.append(None)
                continue
            gid, triples = side
            apex = cells[gid][2].apex
            indices = []
            for (p1, p2, p3) in triples:
                indices.append(len(t1_points))
                t1_points.append((apex, p1, p2, p3))
                t1_cell.append(gid)
            made.append(indices)
        sides_of_pair.append((key, made))

    slots = [[None] * 4 for _ in t1_points]
    identity = (0, 1, 2, 3)
    for key, (side1, side2) in sides_of_pair:
        if side2 is None:
            continue
        for i1, i2 in zip(side1, side2):
            slots[i1][0] = (i2, identity)
            slots[i2][0] = (i1, identity)

    walls = {}
    for idx, points in enumerate(t1_points):
        for m in range(1, 4):
            rest = frozenset(points[lbl] for lbl in (1, 2, 3) if lbl != m)
            walls.setdefault((t1_cell[idx], rest), []).append((idx, m))
    for (gid, _), entries in walls.items():
        if len(entries) != 2:
            raise AssertionError('wall of chunk %d bounds %d cone tetrahedra'
                                 % (gid, len(entries)))
        (i1, m1), (i2, m2) = entries
        image = [None] * 4
        image[0] = 0
        image[m1] = m2
        pts2 = t1_points[i2]
        for lbl in (1, 2, 3):
            if lbl != m1:
                image[lbl] = pts2.index(t1_points[i1][lbl])
        slots[i1][m1] = (i2, tuple(image))
        inverse = [None] * 4
        for src, dst in enumerate(image):
            inverse[dst] = src
        slots[i2][m2] = (i1, tuple(inverse))

    result = Triangulation(slots)
    if not result.is_valid:
        raise AssertionError('subdivision produced an invalid triangulation: '
                             '%r' % (result.validity,))

    embedding = {'discs': {}, 'tets': {}, 'faces': {}}
    for gid, (a, _, _) in enumerate(cells):
        embedding['tets'].setdefault(a, [])
    for idx, gid in enumerate(t1_cell):
        embedding['tets'][cells[gid][0]].append(idx)
    for key, (side1, _) in sides_of_pair:
        faces = [(idx, 0) for idx in side1]
        if key[0] == 'disc':
            embedding['discs'][(key[1], key[2])] = faces
        elif key[0] == 'face':
            embedding['faces'][(key[1], key[2])] = faces

    n = vector.disc_count()
    t = tri.size
    ball_sizes = [0] * len(cells)
    for gid in t1_cell:
        ball_sizes[gid] += 1
    if result.size > 20 * (n + t):
        raise AssertionError('subdivision exceeds 20(n + t) tetrahedra')
    return SubdivisionResult(result, embedding, n, t, ball_sizes, tri, vector)


# -- independent subcomplex certification -------------------------------------

class SubcomplexReport:
    __slots__ = ('ok', 'problems', 'chi', 'expected_chi', 'faces',
                 'interior_edges', 'boundary_edges')

    def __init__(self, ok, problems, chi, expected_chi, faces,
                 interior_edges, boundary_edges):
        self.ok = ok
        self.problems = problems
        self.chi = chi
        self.expected_chi = expected_chi
        self.faces = faces
        self.interior_edges = interior_edges
        self.boundary_edges = boundary_edges

    def line(self):
        state = 'certified' if self.ok else 'FAILED'
        return ('%s: %d triangles, chi=%d (expected %d), %d interior + %d '
                'boundary edges' % (state, self.faces, self.chi,
                                    self.expected_chi, self.interior_edges,
                                    self.boundary_edges))


def certify_subcomplex(result):
    """Re-check, from the finished gluing table alone, that the
    embedded discs form a properly embedded surface in the 2-skeleton
    whose Euler characteristic matches the arc-level reconstruction."""
    sk = result.t1.skeleton
    problems = []
    face_classes = []
    seen = set()
    for disc, faces in sorted(result.embedding['discs'].items()):
        for (idx, f) in faces:
            cls = sk.face_of[(idx, f)]
            if cls.index in seen:
                problems.append('triangle %d reused by disc %s'
                                % (cls.index, (disc,)))
            seen.add(cls.index)
            face_classes.append(cls)

    edge_count = {}
    vertices = set()
    for cls in face_classes:
        idx, f = cls.elements[0]
        corners = [w for w in range(4) if w != f]
        for u, v in combinations(corners, 2):
            eidx = sk.edge_of[(idx, u, v)].index
            edge_count[eidx] = edge_count.get(eidx, 0) + 1
        for w in corners:
            vertices.add(sk.vertex_of[(idx, w)].index)

    interior = boundary = 0
    for eidx, count in edge_count.items():
        if count == 2:
            interior += 1
        elif count == 1:
            boundary += 1
            if not sk.edges[eidx].boundary:
                problems.append('edge %d is a free surface edge in the '
                                'interior' % eidx)
        else:
            problems.append('edge %d meets %d surface triangles'
                            % (eidx, count))

    chi = len(vertices) - len(edge_count) + len(face_classes)
    expected = reconstruct(result.vector).euler_characteristic()
    if chi != expected:
        problems.append('Euler characteristic %d, reconstruction says %d'
                        % (chi, expected))
    return SubcomplexReport(not problems, problems, chi, expected,
                            len(face_classes), interior, boundary)


# -- realizing the subdivision by moves ---------------------------------------

class RealizationOutcome:
    """Either a certified move record from the source triangulation to
    one isomorphic to the subdivision, or a refusal with the progress
    both directions made before the budget ran out."""

    __slots__ = ('record', 'reason', 'progress')

    def __init__(self, record, reason, progress):
        self.record = record
        self.reason = reason
        self.progress = progress

    @property
    def ok(self):
        return self.record is not None

    def __repr__(self):
        if self.ok:
            return '<RealizationOutcome: %d moves>' % len(self.record)
        return '<RealizationOutcome: refused, %s>' % self.reason


def _decreasing_candidates(tri):
    """Sites of the tetrahedron-removing moves, in the same order the
    full move enumeration would visit them."""
    sk = tri.skeleton
    for cls in sk.vertices:
        if cls.boundary or len(cls.elements) != 4:
            continue
        if len({t for (t, _) in cls.elements}) != 4:
            continue
        a, v = min(cls.elements)
        yield Move('M41', a, vertex=v)
    for cls in sk.edges:
        if cls.boundary or len(cls.elements) != 3:
            continue
        if len({t for (t, _, _) in cls.elements}) != 3:
            continue
        site = min((t, EDGE_INDEX[(u, v)]) for (t, u, v) in cls.elements)
        yield Move('M32', site[0], edge=site[1])
    for i in range(tri.size):
        free = [f for f in range(4) if tri.gluing(i, f) is None]
        if len(free) == 3:
            apex = next(v for v in range(4) if v not in free)
            yield Move('B31', i, vertex=apex)
        elif len(free) == 2:
            yield Move('B22', i)


def _fresh_decrease(tri, seen):
    """First legal tetrahedron-removing move whose result has not been
    visited, as (move, result, inverse, canonical form)."""
    for move in _decreasing_candidates(tri):
        try:
            result, inverse = apply_move_with_inverse(tri, move)
        except IllegalMove:
            continue
        key = result.canonical_form()
        if key not in seen:
            return move, result, inverse, key
    return None


def _fresh_escape(tri, seen):
    """First 2-3 shuffle that opens up an unvisited decrease; plateaus
    in the simplification are often one shuffle away from progress."""
    for cls in tri.skeleton.faces:
        if cls.boundary:
            continue
        if len({t for (t, _) in cls.elements}) != 2:
            continue
        a, f = min(cls.elements)
        move = Move('M23', a, face=f)
        try:
            result, inverse = apply_move_with_inverse(tri, move)
        except IllegalMove:
            continue
        key = result.canonical_form()
        if key in seen:
            continue
        if _fresh_decrease(result, seen | {key}) is None:
            continue
        return move, result, inverse, key
    return None


def _greedy_reduce(tri, max_steps, max_escapes=64):
    """Simplify by tetrahedron-removing moves, hopping off plateaus
    with a bounded number of 2-3 shuffles.  Visited canonical forms
    are never re-entered, so the walk cannot cycle.  The chain of
    (before, move, inverse, after) steps feeds the meet-in-the-middle
    combination."""
    steps = []
    current = tri
    seen = {tri.canonical_form()}
    escapes = 0
    while len(steps) < max_steps:
        chosen = _fresh_decrease(current, seen)
        if chosen is None:
            if escapes >= max_escapes:
                break
            chosen = _fresh_escape(current, seen)
            if chosen is None:
                break
            escapes += 1
        move, result, inverse, key = chosen
        seen.add(key)
        steps.append((current, move, inverse, result))
        current = result
    return steps, current


def _extend_with_reversal(record, current, steps):
    """Append the inverses of a forward chain, re-addressed through an
    isomorphism at every step, and return the final triangulation."""
    for before, _, inverse, after in reversed(steps):
        iso = isomorphism(after, current)
        if iso is None:
            raise AssertionError('reversal lost track of the triangulation')
        move = transport_move(inverse, *iso)
        current = apply_move(current, move)
        record.append(move, current.size)
    return current


def realize_moves(tri, result, budget=None):
    """A move record carrying tri to a triangulation isomorphic to
    result.t1, or a refusal once the budget is exhausted.  The empty
    surface is scripted directly: coning every tetrahedron is exactly
    one 1-4 move each."""
    n, t = result.n, result.t
    if budget is None:
        budget = 200 * n * t if n else 200 * t
    goal = result.t1.canonical_form()

    if n == 0:
        record = MoveRecord()
        current = tri
        for a in range(t):
            move = Move('M14', a)
            current = apply_move(current, move)
            record.append(move, current.size)
        if current.canonical_form() != goal:
            raise AssertionError('coning script misses the subdivision')
        result.record = record
        return RealizationOutcome(record, None, {'moves': len(record)})

    forward_steps, forward_end = _greedy_reduce(tri, budget)
    backward_steps, backward_end = _greedy_reduce(result.t1, budget)
    progress = {
        'forward': len(forward_steps),
        'backward': len(backward_steps),
        'forward_tets': forward_end.size,
        'backward_tets': backward_end.size,
    }

    bridge = None
    if forward_end.canonical_form() != backward_end.canonical_form():
        largest = max(forward_end.size, backward_end.size)
        if largest > tri.size + 6:
            return RealizationOutcome(
                None, 'simplification plateaued at %d tetrahedra, too far '
                'apart to bridge by search' % largest, progress)
        from .search import SearchConfig, connect
        cfg = SearchConfig(max_tets=largest + 3, max_depth=8,
                           max_frontier=4000, seed=0)
        outcome = connect(forward_end, backward_end, cfg)
        progress['search'] = outcome.stats
        if outcome.record is None:
            return RealizationOutcome(None, 'budget exhausted before the '
                                      'simplified ends met', progress)
        bridge = outcome.record

    record = MoveRecord()
    current = tri
    for _, move, _, after in forward_steps:
        current = apply_move(current, move)
        record.append(move, current.size)
    if bridge is not None:
        reference = forward_end
        for move in bridge:
            iso = isomorphism(reference, current)
            carried = transport_move(move, *iso)
            current = apply_move(current, carried)
            record.append(carried, current.size)
            reference = apply_move(reference, move)
    current = _extend_with_reversal(record, current, backward_steps)
    if current.canonical_form() != goal:
        raise AssertionError('combined record misses the subdivision')
    if len(record) > budget:
        return RealizationOutcome(None, 'record needs %d moves, budget %d'
                                  % (len(record), budget), progress)
    result.record = record
    progress['moves'] = len(record)
    return RealizationOutcome(record, None, progress)


# -- embedding file -----------------------------------------------------------

def dumps_embedding(result):
    """The disc-to-triangle map in a line-oriented text form."""
    out = ['# %d discs embedded in %d tetrahedra'
           % (result.n, result.tets1)]
    for (a, disc), faces in sorted(result.embedding['discs'].items()):
        if disc[0] == 'tri':
            where = 'kind=tri corner=%d level=%d' % (disc[1], disc[2])
        else:
            where = 'kind=quad level=%d' % disc[1]
        cells = ' '.join('%d:%d' % pair for pair in faces)
        out.append('disc tet=%d %s -> %s' % (a, where, cells))
    for a in sorted(result.embedding['tets']):
        out.append('tet %d -> %s'
                   % (a, ' '.join(str(i)
                                  for i in result.embedding['tets'][a])))
    for (a, f), faces in sorted(result.embedding['faces'].items()):
        cells = ' '.join('%d:%d' % pair for pair in faces)
        out.append('face %d:%d -> %s' % (a, f, cells))
    return '\n'.join(out) + '\n'
