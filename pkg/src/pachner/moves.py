"""The elementary moves on triangulations and their replay records.

Interior moves are the four bistellar flips in dimension three: M14
subdivides a tetrahedron into four, M41 collapses the star of an
internal valence-4 vertex, M23 replaces two tetrahedra sharing a face
by three around a new edge, and M32 is its inverse at an internal
valence-3 edge.  Boundary moves attach or shell a single tetrahedron
and change the boundary surface by one two-dimensional flip: B13 cones
a boundary face (a 1-3 move on the boundary), B31 shells a tetrahedron
with three free faces, and B22 either glues a tetrahedron across two
boundary faces sharing an edge or shells a tetrahedron with exactly two
free faces (the two variants are inverse to each other and both flip a
boundary diagonal).

A move is addressed by raw indices in the triangulation it applies to,
so a sequence of moves can be replayed verbatim.  apply_move validates
its output: a site whose result would not be a manifold triangulation
is rejected rather than returned.
"""

from .perm4 import Perm4, PERM_ID, transposition
from .triangulation import (Triangulation, EDGES, EDGE_INDEX, FACE_VERTICES,
                            InvalidTriangulation)

KINDS = ('M14', 'M41', 'M23', 'M32', 'B13', 'B31', 'B22')

INVERSE_KIND = {'M14': 'M41', 'M41': 'M14', 'M23': 'M32', 'M32': 'M23',
                'B13': 'B31', 'B31': 'B13', 'B22': 'B22'}

# net change in the number of tetrahedra (B22 gluing variant; the
# shelling variant is -1)
_KIND_DELTA = {'M14': 3, 'M41': -3, 'M23': 1, 'M32': -1,
               'B13': 1, 'B31': -1}


def tet_delta(move):
    """Change in tetrahedron count when the move is applied.  The two
    B22 variants differ: gluing adds a tetrahedron, shelling removes
    one."""
    if move.kind == 'B22':
        return 1 if move.edge is not None else -1
    return _KIND_DELTA[move.kind]


class IllegalMove(ValueError):
    pass


class Move:
    """One move site: the kind plus whichever of tet/face/edge/vertex
    the kind needs.  A B22 with an edge field is the gluing variant; a
    B22 with only a tetrahedron is the shelling variant."""

    __slots__ = ('kind', 'tet', 'face', 'edge', 'vertex')

    def __init__(self, kind, tet, face=None, edge=None, vertex=None):
        if kind not in KINDS:
            raise ValueError('unknown move kind %r' % kind)
        self.kind = kind
        self.tet = tet
        self.face = face
        self.edge = edge
        self.vertex = vertex

    def key(self):
        return (self.kind, self.tet,
                -1 if self.face is None else self.face,
                -1 if self.edge is None else self.edge,
                -1 if self.vertex is None else self.vertex)

    def __eq__(self, other):
        return isinstance(other, Move) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return '<Move %s>' % format_move(self)


def format_move(move):
    parts = [move.kind, 'tet=%d' % move.tet]
    if move.face is not None:
        parts.append('face=%d' % move.face)
    if move.edge is not None:
        parts.append('edge=%d' % move.edge)
    if move.vertex is not None:
        parts.append('vertex=%d' % move.vertex)
    return ' '.join(parts)


def transport_move(move, tet_map, vertex_perms):
    """The same move re-addressed through a relabeling of its
    triangulation.  Sites are resolved through simplex classes when a
    move is applied, so mapping the representative is enough."""
    p = Perm4(vertex_perms[move.tet])
    face = None if move.face is None else p(move.face)
    vertex = None if move.vertex is None else p(move.vertex)
    edge = None
    if move.edge is not None:
        u, v = EDGES[move.edge]
        u, v = sorted((p(u), p(v)))
        edge = EDGE_INDEX[(u, v)]
    return Move(move.kind, tet_map[move.tet], face, edge, vertex)


def parse_move(line):
    parts = line.split()
    if not parts or parts[0] not in KINDS:
        raise ValueError('bad move line %r' % line)
    kind = parts[0]
    fields = {}
    for part in parts[1:]:
        if '=' not in part:
            raise ValueError('bad move field %r in %r' % (part, line))
        name, value = part.split('=', 1)
        if name not in ('tet', 'face', 'edge', 'vertex') or name in fields:
            raise ValueError('bad move field %r in %r' % (part, line))
        fields[name] = int(value)
    if 'tet' not in fields:
        raise ValueError('move line %r has no tet' % line)
    return Move(kind, fields['tet'], fields.get('face'),
                fields.get('edge'), fields.get('vertex'))


class MoveRecord:
    """An ordered, replayable list of moves with the tetrahedron count
    after each one."""

    def __init__(self, moves=(), sizes=()):
        self.moves = list(moves)
        self.sizes = list(sizes)

    def append(self, move, size):
        self.moves.append(move)
        self.sizes.append(size)

    def __len__(self):
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def dumps(self):
        return ''.join(format_move(m) + '\n' for m in self.moves)

    @classmethod
    def loads(cls, text):
        moves = []
        for raw in text.splitlines():
            line = raw.split('#', 1)[0].strip()
            if line:
                moves.append(parse_move(line))
        return cls(moves)

    def __repr__(self):
        return '<MoveRecord: %d moves>' % len(self.moves)


# -- generic rebuild ---------------------------------------------------------
#
# The interior moves all remove a handful of tetrahedra and replace them
# with new ones whose outward-facing slots are described by addresses
# into the removed region.  _rebuild resolves those addresses against
# the old gluing table in one pass.

def _rebuild(tri, removed, new_slots, boundary_map):
    """removed: sorted tet indices to delete.
    new_slots: per new tet, 4 entries among
        None                      free face
        ('new', j, perm)          glue to new tet j (perm: this -> j labels)
        ('old', r, phi, psi)      this face sits where face phi of removed
                                  tet r was; psi: new labels -> r labels
    boundary_map: (r, phi) -> (j, face, chi) saying face phi of removed
        tet r is now face `face` of new tet j; chi: r labels -> j labels.
    Returns (triangulation, final index of new tet 0).
    """
    old_size = tri.size
    removed_set = set(removed)
    # compact: survivors and replaced slots keep old order, extras go last
    order = []
    for a in range(old_size):
        if a in removed_set:
            k = removed.index(a)
            if k < len(new_slots):
                order.append(('new', k))
        else:
            order.append(('old', a))
    for j in range(len(removed), len(new_slots)):
        order.append(('new', j))
    index = {tag: i for i, tag in enumerate(order)}
    table = [None] * len(order)
    for pos, tag in enumerate(order):
        if tag[0] == 'old':
            a = tag[1]
            row = []
            for f in range(4):
                slot = tri.gluing(a, f)
                if slot is None:
                    row.append(None)
                    continue
                b, sigma = slot
                if b not in removed_set:
                    row.append((index[('old', b)], sigma))
                else:
                    j, face, chi = boundary_map[(b, sigma(f))]
                    row.append((index[('new', j)], chi * sigma))
            table[pos] = row
        else:
            j = tag[1]
            row = []
            for f in range(4):
                spec = new_slots[j][f]
                if spec is None:
                    row.append(None)
                elif spec[0] == 'new':
                    _, j2, perm = spec
                    row.append((index[('new', j2)], perm))
                else:
                    _, r, phi, psi = spec
                    old = tri.gluing(r, phi)
                    if old is None:
                        row.append(None)
                        continue
                    c, tau = old
                    if c not in removed_set:
                        row.append((index[('old', c)], tau * psi))
                    else:
                        j2, face2, chi2 = boundary_map[(c, tau(phi))]
                        row.append((index[('new', j2)], chi2 * tau * psi))
            table[pos] = row
    return Triangulation(table), index[('new', 0)]


def _validated(result, move):
    if not result.is_valid:
        raise IllegalMove(
            '%s produces an invalid triangulation: %s'
            % (format_move(move), '; '.join(result.validity.messages)))
    return result


# -- the individual moves ----------------------------------------------------

def _apply_m14(tri, move):
    i = move.tet
    if not 0 <= i < tri.size:
        raise IllegalMove('M14: no tetrahedron %d' % i)
    new_slots = []
    for f in range(4):
        slots = [None] * 4
        slots[f] = ('old', i, f, PERM_ID)
        for j in range(4):
            if j != f:
                slots[j] = ('new', j, transposition(f, j))
        new_slots.append(slots)
    boundary_map = {(i, f): (f, f, PERM_ID) for f in range(4)}
    result, new0 = _rebuild(tri, [i], new_slots, boundary_map)
    inverse = Move('M41', new0, vertex=0)
    return _validated(result, move), inverse


def _m41_chart(tri, move):
    """Chart the star of the vertex at the given corner as the result
    of an M14, or raise IllegalMove.

    Returns (star tets sorted, {tet: chart}) where chart is the Perm4
    from the tet's vertex labels to the labels of the collapsed
    tetrahedron (the corner of the vertex class maps to the label of
    the face of the collapsed tetrahedron that the tet is the cone
    over)."""
    sk = tri.skeleton
    try:
        cls = sk.vertex_of[(move.tet, move.vertex)]
    except KeyError:
        raise IllegalMove('M41: no corner (%d, %s)' % (move.tet, move.vertex))
    if cls.boundary:
        raise IllegalMove('M41: vertex class is on the boundary')
    if len(cls.elements) != 4:
        raise IllegalMove('M41: vertex class has valence %d, need 4'
                          % len(cls.elements))
    tets = [a for (a, v) in cls.elements]
    if len(set(tets)) != 4:
        raise IllegalMove('M41: star tetrahedra are not distinct')
    corner = dict(cls.elements)
    a0, v0 = min(cls.elements)
    image = [None] * 4
    image[v0] = 0
    rest = iter((1, 2, 3))
    for p in range(4):
        if image[p] is None:
            image[p] = next(rest)
    charts = {a0: Perm4(image)}
    queue = [a0]
    while queue:
        a = queue.pop(0)
        psi = charts[a]
        center = corner[a]
        for p in range(4):
            if p == center:
                continue
            slot = tri.gluing(a, p)
            if slot is None:
                raise IllegalMove('M41: star face is free')
            b, sigma = slot
            if b not in corner:
                raise IllegalMove('M41: star leaks out of the vertex class')
            want = transposition(psi(center), psi(p)) * psi * sigma.inverse()
            if b in charts:
                if charts[b] != want:
                    raise IllegalMove('M41: star is not embedded')
            else:
                charts[b] = want
                queue.append(b)
    if len(charts) != 4:
        raise IllegalMove('M41: star does not close up')
    labels = sorted(charts[a](corner[a]) for a in charts)
    if labels != [0, 1, 2, 3]:
        raise IllegalMove('M41: star is not embedded')
    return sorted(charts), charts, corner


def _apply_m41(tri, move):
    star, charts, corner = _m41_chart(tri, move)
    slots = [None] * 4
    boundary_map = {}
    for a in star:
        psi = charts[a]
        f = psi(corner[a])           # which face of the old tet a cones over
        outer = corner[a]            # the face of a opposite the vertex
        slots[f] = ('old', a, outer, psi.inverse())
        boundary_map[(a, outer)] = (0, f, psi)
    result, new0 = _rebuild(tri, star, [slots], boundary_map)
    inverse = Move('M14', new0)
    return _validated(result, move), inverse


def _apply_m23(tri, move):
    a, f = move.tet, move.face
    if not (0 <= a < tri.size and f is not None and 0 <= f < 4):
        raise IllegalMove('M23: bad site')
    slot = tri.gluing(a, f)
    if slot is None:
        raise IllegalMove('M23: face (%d, %d) is on the boundary' % (a, f))
    b, sigma = slot
    if b == a:
        raise IllegalMove('M23: face is glued to the same tetrahedron')
    g = sigma(f)
    shared = FACE_VERTICES[f]        # u < v < w

    def label_in(y, z):
        # label of vertex z (a-label on the shared face) in new tet N_y
        others = [x for x in shared if x != y]
        return 2 + others.index(z)

    new_slots = []
    boundary_map = {}
    for li, x in enumerate(shared):
        p, q = (z for z in shared if z != x)
        pi = Perm4([f, x, p, q])     # N_x labels -> a labels
        rho = Perm4([sigma(x), g, sigma(p), sigma(q)])   # N_x -> b labels
        slots = [None] * 4
        slots[1] = ('old', a, x, pi)
        slots[0] = ('old', b, sigma(x), rho)
        for y in (p, q):
            other = next(z for z in shared if z != x and z != y)
            image = [None] * 4
            image[0] = 0
            image[1] = 1
            image[label_in(x, y)] = label_in(y, x)
            image[label_in(x, other)] = label_in(y, other)
            slots[label_in(x, y)] = ('new', shared.index(y), Perm4(image))
        new_slots.append(slots)
        boundary_map[(a, x)] = (li, 1, pi.inverse())
        boundary_map[(b, sigma(x))] = (li, 0, rho.inverse())
    removed = sorted((a, b))
    result, new0 = _rebuild(tri, removed, new_slots, boundary_map)
    inverse = Move('M32', new0, edge=0)
    return _validated(result, move), inverse


def _walk_edge(tri, cls):
    """Corners around an edge class in rotation order.

    Returns a list of (tet, u, v, enter, leave): the directed edge as
    seen in each tetrahedron around it, plus the two faces containing
    the edge through which the rotation enters and leaves that corner.
    For an interior edge the walk closes up after one full turn; for a
    boundary edge the enter face of the first entry and the leave face
    of the last entry are the two free faces at the edge.
    """
    valence = len(cls.elements)
    a, u, v = cls.elements[0]

    def other_side(uu, vv, side):
        return next(x for x in range(4) if x not in (uu, vv, side))

    enter = next(x for x in range(4) if x not in (u, v))
    if cls.boundary:
        # rewind: rotate against the walk direction until a free face
        leave = enter
        for _ in range(valence + 1):
            slot = tri.gluing(a, leave)
            if slot is None:
                break
            b, sigma = slot
            a, u, v = b, sigma(u), sigma(v)
            leave = other_side(u, v, sigma(leave))
        else:
            raise IllegalMove('boundary edge walk does not terminate')
        enter = leave
    walk = []
    for _ in range(valence):
        leave = other_side(u, v, enter)
        walk.append((a, u, v, enter, leave))
        slot = tri.gluing(a, leave)
        if slot is None:
            if not cls.boundary:
                raise IllegalMove('interior edge walk hit the boundary')
            break
        b, sigma = slot
        a, u, v, enter = b, sigma(u), sigma(v), sigma(leave)
    if len(walk) != valence:
        raise IllegalMove('edge walk did not visit the whole class')
    return walk


def _apply_m32(tri, move):
    a, e = move.tet, move.edge
    if not (0 <= a < tri.size and e is not None and 0 <= e < 6):
        raise IllegalMove('M32: bad site')
    sk = tri.skeleton
    cls = sk.edge_of[(a,) + EDGES[e]]
    if cls.boundary:
        raise IllegalMove('M32: edge is on the boundary')
    if len(cls.elements) != 3:
        raise IllegalMove('M32: edge has valence %d, need 3'
                          % len(cls.elements))
    walk = _walk_edge(tri, cls)
    tets = [w[0] for w in walk]
    if len(set(tets)) != 3:
        raise IllegalMove('M32: tetrahedra around the edge are not distinct')
    # Ring vertex ring[j] sits on the face shared by corners j and j+1;
    # in corner j it carries the label `enter` (the ring vertex on the
    # leave face) and ring[j-1] carries the label `leave`.  The two
    # replacement tets are cones over the ring triangle: top from u,
    # bottom from v, labelled 0 -> apex, 1 + k -> ring[k].
    new_slots = [[None] * 4 for _ in range(2)]   # 0 = top (u side), 1 = bottom
    boundary_map = {}
    for j, (t, u, v, enter, leave) in enumerate(walk):
        r_here = enter       # label of ring[j] in this corner
        r_prev = leave       # label of ring[j-1]
        image_top = [None] * 4
        image_top[0] = u
        image_top[1 + (j - 1) % 3] = r_prev
        image_top[1 + j % 3] = r_here
        missing_label = 1 + (j + 1) % 3
        image_top[missing_label] = v
        psi_top = Perm4(image_top)          # top labels -> tet labels
        new_slots[0][missing_label] = ('old', t, v, psi_top)
        boundary_map[(t, v)] = (0, missing_label, psi_top.inverse())
        image_bot = list(image_top)
        image_bot[0] = v
        image_bot[missing_label] = u
        psi_bot = Perm4(image_bot)
        new_slots[1][missing_label] = ('old', t, u, psi_bot)
        boundary_map[(t, u)] = (1, missing_label, psi_bot.inverse())
    new_slots[0][0] = ('new', 1, PERM_ID)
    new_slots[1][0] = ('new', 0, PERM_ID)
    removed = sorted(set(tets))
    result, new0 = _rebuild(tri, removed, new_slots, boundary_map)
    inverse = Move('M23', new0, face=0)
    return _validated(result, move), inverse


def _apply_b13(tri, move):
    a, f = move.tet, move.face
    if not (0 <= a < tri.size and f is not None and 0 <= f < 4):
        raise IllegalMove('B13: bad site')
    if tri.gluing(a, f) is not None:
        raise IllegalMove('B13: face (%d, %d) is not on the boundary' % (a, f))
    table = [list(row) for row in tri.gluings]
    fresh = [None] * 4
    fresh[f] = (a, PERM_ID)
    table.append(fresh)
    table[a][f] = (len(table) - 1, PERM_ID)
    result = Triangulation(table)
    inverse = Move('B31', len(table) - 1, vertex=f)
    return _validated(result, move), inverse


def _apply_b31(tri, move):
    i, apex = move.tet, move.vertex
    if not (0 <= i < tri.size and apex is not None and 0 <= apex < 4):
        raise IllegalMove('B31: bad site')
    if tri.size < 2:
        raise IllegalMove('B31: cannot shell the last tetrahedron')
    free = [f for f in range(4) if tri.gluing(i, f) is None]
    if len(free) != 3 or apex in free:
        raise IllegalMove('B31: tetrahedron %d does not meet the boundary '
                          'in exactly the three faces at vertex %s'
                          % (i, apex))
    cls = tri.skeleton.vertex_of[(i, apex)]
    if len(cls.elements) != 1:
        raise IllegalMove('B31: apex vertex is identified elsewhere')
    b, tau = tri.gluing(i, apex)
    table = [list(row) for row in tri.gluings]
    table[b][tau(apex)] = None
    del table[i]
    shift = lambda x: x - 1 if x > i else x
    for row in table:
        for f in range(4):
            if row[f] is not None:
                row[f] = (shift(row[f][0]), row[f][1])
    result = Triangulation(table)
    inverse = Move('B13', shift(b), face=tau(apex))
    return _validated(result, move), inverse


def _b22_chain_ends(tri, cls):
    walk = _walk_edge(tri, cls)
    first = walk[0]
    last = walk[-1]
    # enter face of the first corner and leave face of the last are free
    end1 = (first[0], first[3], first[1], first[2])   # (tet, face, u, v)
    end2 = (last[0], last[4], last[1], last[2])
    return end1, end2


def _apply_b22_glue(tri, move):
    a, e = move.tet, move.edge
    if not (0 <= a < tri.size and e is not None and 0 <= e < 6):
        raise IllegalMove('B22: bad site')
    sk = tri.skeleton
    cls = sk.edge_of[(a,) + EDGES[e]]
    if not cls.boundary:
        raise IllegalMove('B22: edge is not on the boundary')
    (a1, f1, u1, v1), (a2, f2, u2, v2) = _b22_chain_ends(tri, cls)
    if (a1, f1) == (a2, f2):
        raise IllegalMove('B22: the two boundary faces at the edge coincide')
    w1 = next(x for x in range(4) if x not in (u1, v1, f1))
    w2 = next(x for x in range(4) if x not in (u2, v2, f2))
    # new tet labels: 0 -> u, 1 -> v, 2 -> third vertex on side 2,
    # 3 -> third vertex on side 1; its faces 0 and 1 stay free
    psi1 = Perm4([u1, v1, f1, w1])   # new labels -> a1 labels
    psi2 = Perm4([u2, v2, w2, f2])
    table = [list(row) for row in tri.gluings]
    fresh = [None] * 4
    fresh[2] = (a1, psi1)
    fresh[3] = (a2, psi2)
    table.append(fresh)
    n = len(table) - 1
    table[a1][f1] = (n, psi1.inverse())
    table[a2][f2] = (n, psi2.inverse())
    result = Triangulation(table)
    inverse = Move('B22', n)
    return _validated(result, move), inverse


def _apply_b22_shell(tri, move):
    i = move.tet
    if not 0 <= i < tri.size:
        raise IllegalMove('B22: no tetrahedron %d' % i)
    free = [f for f in range(4) if tri.gluing(i, f) is None]
    if len(free) != 2:
        raise IllegalMove('B22: tetrahedron %d has %d free faces, need 2'
                          % (i, len(free)))
    glued = [f for f in range(4) if f not in free]
    targets = [tri.gluing(i, f) for f in glued]
    if any(t[0] == i for t in targets):
        raise IllegalMove('B22: tetrahedron %d is glued to itself' % i)
    # the diagonal being flipped away must be interior, otherwise the
    # removal changes the manifold rather than just re-cutting a square
    diag = tri.skeleton.edge_of[(i,) + tuple(free)]
    if diag.boundary:
        raise IllegalMove('B22: the flipped diagonal is still on the '
                          'boundary')
    table = [list(row) for row in tri.gluings]
    for f, (c, tau) in zip(glued, targets):
        table[c][tau(f)] = None
    del table[i]
    shift = lambda x: x - 1 if x > i else x
    for row in table:
        for f in range(4):
            if row[f] is not None:
                row[f] = (shift(row[f][0]), row[f][1])
    result = Triangulation(table)
    # the flipped diagonal joins the two vertices opposite the free
    # faces; it survives in the first target tetrahedron
    p, q = free
    c, tau = targets[0]
    inverse = Move('B22', shift(c), edge=EDGE_INDEX[(tau(p), tau(q))])
    return _validated(result, move), inverse


def _apply_b22(tri, move):
    if move.edge is not None:
        return _apply_b22_glue(tri, move)
    return _apply_b22_shell(tri, move)


_APPLIERS = {'M14': _apply_m14, 'M41': _apply_m41, 'M23': _apply_m23,
             'M32': _apply_m32, 'B13': _apply_b13, 'B31': _apply_b31,
             'B22': _apply_b22}


def apply_move_with_inverse(tri, move):
    """Apply a move, returning (result, inverse move).  The inverse is
    addressed in the result and undoes the move up to isomorphism."""
    if not tri.is_valid:
        raise InvalidTriangulation('moves need a valid triangulation')
    return _APPLIERS[move.kind](tri, move)


def apply_move(tri, move):
    return apply_move_with_inverse(tri, move)[0]


def replay(tri, record):
    """Apply a MoveRecord (or iterable of moves) in order."""
    current = tri
    for move in record:
        current = apply_move(current, move)
    return current


# -- enumeration -------------------------------------------------------------

def candidate_moves(tri):
    """Move sites passing the cheap skeleton screening, in a fixed
    deterministic order: kinds as in KINDS, sites sorted within each
    kind, each site a canonical class representative.  Candidates are
    not guaranteed legal; apply_move settles that.  Useful when a
    caller wants one legal move without paying for all of them."""
    if not tri.is_valid:
        raise InvalidTriangulation('moves need a valid triangulation')
    sk = tri.skeleton
    for a in range(tri.size):
        yield Move('M14', a)
    for cls in sk.vertices:
        if cls.boundary or len(cls.elements) != 4:
            continue
        if len({t for (t, _) in cls.elements}) != 4:
            continue
        a, v = min(cls.elements)
        yield Move('M41', a, vertex=v)
    for cls in sk.faces:
        if cls.boundary:
            continue
        if len({t for (t, _) in cls.elements}) != 2:
            continue
        a, f = min(cls.elements)
        yield Move('M23', a, face=f)
    for cls in sk.edges:
        if cls.boundary or len(cls.elements) != 3:
            continue
        if len({t for (t, _, _) in cls.elements}) != 3:
            continue
        site = min((t, EDGE_INDEX[(u, v)]) for (t, u, v) in cls.elements)
        yield Move('M32', site[0], edge=site[1])
    for (a, f) in tri.boundary_faces():
        yield Move('B13', a, face=f)
    for i in range(tri.size):
        free = [f for f in range(4) if tri.gluing(i, f) is None]
        if len(free) == 3:
            apex = next(v for v in range(4) if v not in free)
            yield Move('B31', i, vertex=apex)
    for cls in sk.edges:
        if not cls.boundary:
            continue
        site = min((t, EDGE_INDEX[(u, v)]) for (t, u, v) in cls.elements)
        yield Move('B22', site[0], edge=site[1])
    for i in range(tri.size):
        free = [f for f in range(4) if tri.gluing(i, f) is None]
        if len(free) == 2:
            yield Move('B22', i)


def enumerate_moves(tri, with_results=False):
    """Every legal move on the triangulation, ordered as in
    candidate_moves.  With with_results=True, returns (move, result,
    inverse) triples, reusing the trial applications that legality
    screening performs anyway."""
    out = []
    for move in candidate_moves(tri):
        try:
            result, inverse = apply_move_with_inverse(tri, move)
        except IllegalMove:
            continue
        out.append((move, result, inverse))
    if with_results:
        return out
    return [m for (m, _, _) in out]
