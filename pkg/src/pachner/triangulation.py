"""Triangulations of compact 3-manifolds given by face gluings.

A triangulation is a list of abstract tetrahedra, each with vertex
labels 0..3, together with a partial pairing of their faces.  Face i of
a tetrahedron is the face opposite vertex i.  A gluing of face i of
tetrahedron a is recorded as (b, sigma) where sigma is the Perm4
carrying vertex labels of a to vertex labels of b; face i of a is then
identified with face sigma(i) of b.  Unglued faces are boundary faces.

Tetrahedra may be glued to themselves along two distinct faces, so the
quotient complex need not be a simplicial complex.  A face may never be
identified with itself.
"""

from .perm4 import Perm4, PERM_ID, ALL_PERMS, transposition

# The six edges of a tetrahedron, indexed 0..5.
EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {}
for _i, (_u, _v) in enumerate(EDGES):
    EDGE_INDEX[(_u, _v)] = _i
    EDGE_INDEX[(_v, _u)] = _i

# Vertices of face f in increasing order.
FACE_VERTICES = tuple(tuple(v for v in range(4) if v != f) for f in range(4))


class InvalidTriangulation(ValueError):
    """Raised when an operation needs a valid triangulation and the
    argument fails its validity report."""


class ValidityReport:
    """Outcome of the manifold checks, with one flag per condition."""

    def __init__(self, involutive, no_self_face, edges_embeddable,
                 links_ok, orientable, messages):
        self.involutive = involutive
        self.no_self_face = no_self_face
        self.edges_embeddable = edges_embeddable
        self.links_ok = links_ok
        self.orientable = orientable
        self.messages = tuple(messages)

    @property
    def valid(self):
        return (self.involutive and self.no_self_face
                and bool(self.edges_embeddable) and bool(self.links_ok)
                and bool(self.orientable))

    def __repr__(self):
        verdict = 'valid' if self.valid else 'invalid'
        return '<ValidityReport %s: %s>' % (verdict, '; '.join(self.messages) or 'ok')


class SimplexClass:
    """An identification class of vertices, edges or faces.

    elements is a tuple of local incarnations; what a local incarnation
    looks like depends on the dimension (see Skeleton).
    """

    def __init__(self, index, elements, boundary):
        self.index = index
        self.elements = elements
        self.boundary = boundary

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        kind = 'boundary' if self.boundary else 'interior'
        return '<class %d: %d elements, %s>' % (
            self.index, len(self.elements), kind)


class Skeleton:
    """Vertex, edge and face classes of a triangulation.

    vertices[k].elements: tuples (tet, v).
    edges[k].elements:    tuples (tet, u, v), one per undirected edge,
                          directed along the class's chosen direction.
    faces[k].elements:    tuples (tet, f); length 2 interior, 1 boundary.

    Lookup maps go the other way; edge_direction[(tet, u, v)] is +1 when
    (u, v) agrees with the class direction and -1 when it reverses it.
    """

    def __init__(self, vertices, edges, faces, vertex_of, edge_of,
                 edge_direction, face_of):
        self.vertices = vertices
        self.edges = edges
        self.faces = faces
        self.vertex_of = vertex_of
        self.edge_of = edge_of
        self.edge_direction = edge_direction
        self.face_of = face_of


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # deterministic: smaller tuple wins as root
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def classes(self):
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return [sorted(g) for g in sorted(groups.values())]


class Triangulation:
    """An immutable face-gluing triangulation.

    gluings: a sequence with one entry per tetrahedron; each entry has
    four slots, one per face, each either None or a pair (tet, perm).
    Structural well-formedness (shape, ranges, permutation sanity) is
    enforced here; the manifold conditions are computed lazily and
    reported by validity / is_valid, so that bad gluing tables can be
    loaded and diagnosed rather than refused at parse time.
    """

    def __init__(self, gluings):
        table = []
        for a, slots in enumerate(gluings):
            slots = tuple(slots)
            if len(slots) != 4:
                raise ValueError('tetrahedron %d has %d faces' % (a, len(slots)))
            row = []
            for f, slot in enumerate(slots):
                if slot is None:
                    row.append(None)
                    continue
                b, sigma = slot
                sigma = Perm4(sigma)
                if not 0 <= b < len(gluings):
                    raise ValueError(
                        'face %d of tetrahedron %d glued to missing '
                        'tetrahedron %d' % (f, a, b))
                row.append((b, sigma))
            table.append(tuple(row))
        self._glue = tuple(table)
        self._cache = {}

    # -- basic structure ------------------------------------------------

    @property
    def size(self):
        return len(self._glue)

    def __len__(self):
        return len(self._glue)

    def gluing(self, tet, face):
        return self._glue[tet][face]

    @property
    def gluings(self):
        return self._glue

    def boundary_faces(self):
        return [(a, f) for a in range(self.size) for f in range(4)
                if self._glue[a][f] is None]

    def is_closed(self):
        return not self.boundary_faces()

    def is_connected(self):
        if self.size == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            a = stack.pop()
            for slot in self._glue[a]:
                if slot is not None and slot[0] not in seen:
                    seen.add(slot[0])
                    stack.append(slot[0])
        return len(seen) == self.size

    # -- validity -------------------------------------------------------

    @property
    def validity(self):
        if 'validity' not in self._cache:
            self._cache['validity'] = self._check_validity()
        return self._cache['validity']

    @property
    def is_valid(self):
        return self.validity.valid

    def _check_validity(self):
        messages = []
        involutive = True
        no_self_face = True
        for a in range(self.size):
            for f in range(4):
                slot = self._glue[a][f]
                if slot is None:
                    continue
                b, sigma = slot
                back = self._glue[b][sigma(f)]
                if back is None or back[0] != a or back[1] != sigma.inverse():
                    involutive = False
                    messages.append(
                        'gluing of face %d of tet %d is not involutive' % (f, a))
                if b == a and sigma(f) == f:
                    no_self_face = False
                    messages.append(
                        'face %d of tet %d is glued to itself' % (f, a))
        if not (involutive and no_self_face):
            return ValidityReport(involutive, no_self_face, None, None,
                                  None, messages)

        edges_embeddable = True
        dsu = self._directed_edge_orbits()
        for a in range(self.size):
            for (u, v) in EDGES:
                if dsu.find((a, u, v)) == dsu.find((a, v, u)):
                    edges_embeddable = False
                    messages.append(
                        'edge (%d,%d) of tet %d is identified with '
                        'itself reversing orientation' % (u, v, a))

        links_ok = True
        if edges_embeddable:
            for cls, (closed, chi) in self._vertex_link_data():
                if closed and chi != 2:
                    links_ok = False
                    messages.append(
                        'link of vertex class %d is closed with euler '
                        'characteristic %d' % (cls, chi))
                elif not closed and chi != 1:
                    links_ok = False
                    messages.append(
                        'link of vertex class %d has boundary and euler '
                        'characteristic %d' % (cls, chi))
        else:
            links_ok = None

        orientable = self._check_orientable()
        if not orientable:
            messages.append('no consistent orientation of the tetrahedra exists')
        return ValidityReport(involutive, no_self_face, edges_embeddable,
                              links_ok, orientable, messages)

    def _directed_edge_orbits(self):
        items = [(a, u, v) for a in range(self.size)
                 for u in range(4) for v in range(4) if u != v]
        dsu = _DSU(items)
        for a in range(self.size):
            for f in range(4):
                slot = self._glue[a][f]
                if slot is None:
                    continue
                b, sigma = slot
                for u in range(4):
                    if u == f:
                        continue
                    for v in range(4):
                        if v == f or v == u:
                            continue
                        dsu.union((a, u, v), (b, sigma(u), sigma(v)))
        return dsu

    def _corner_orbits(self):
        items = [(a, v) for a in range(self.size) for v in range(4)]
        dsu = _DSU(items)
        for a in range(self.size):
            for f in range(4):
                slot = self._glue[a][f]
                if slot is None:
                    continue
                b, sigma = slot
                for v in range(4):
                    if v != f:
                        dsu.union((a, v), (b, sigma(v)))
        return dsu

    def _vertex_link_data(self):
        """Per vertex class: (link is closed, euler characteristic).

        The link of the corner (a, v) is the triangle cut off near v;
        its sides lie in the three faces of a containing v and its
        corners sit on the three edges of a at v.  Sides are glued by
        the face gluings, so faces of the link are corners, edges of the
        link are corner-face pairs and vertices of the link are
        directed-edge orbits (tail = the linked vertex).
        """
        corner_dsu = self._corner_orbits()
        edge_dsu = self._directed_edge_orbits()
        stats = {}  # corner root -> [faces, edge slots, free slots]
        for a in range(self.size):
            for v in range(4):
                root = corner_dsu.find((a, v))
                st = stats.setdefault(root, [0, 0, 0])
                st[0] += 1
                for f in range(4):
                    if f == v:
                        continue
                    st[1] += 1
                    if self._glue[a][f] is None:
                        st[2] += 1
        ends = {}  # corner root -> set of directed edge orbit roots
        for a in range(self.size):
            for v in range(4):
                root = corner_dsu.find((a, v))
                bag = ends.setdefault(root, set())
                for w in range(4):
                    if w != v:
                        bag.add(edge_dsu.find((a, v, w)))
        out = []
        for idx, root in enumerate(sorted(stats)):
            faces, slots, free = stats[root]
            edges = (slots - free) // 2 + free
            verts = len(ends[root])
            out.append((idx, (free == 0, verts - edges + faces)))
        return out

    def _check_orientable(self):
        sign = {}
        for start in range(self.size):
            if start in sign:
                continue
            sign[start] = 1
            stack = [start]
            while stack:
                a = stack.pop()
                for slot in self._glue[a]:
                    if slot is None:
                        continue
                    b, sigma = slot
                    want = -sigma.sign() * sign[a]
                    if b not in sign:
                        sign[b] = want
                        stack.append(b)
                    elif sign[b] != want:
                        return False
        return True

    def _require_valid(self):
        if not self.is_valid:
            raise InvalidTriangulation(
                'operation needs a valid triangulation: %s'
                % '; '.join(self.validity.messages))

    # -- skeleton --------------------------------------------------------

    @property
    def skeleton(self):
        if 'skeleton' not in self._cache:
            self._cache['skeleton'] = self._build_skeleton()
        return self._cache['skeleton']

    def _build_skeleton(self):
        self._require_valid()
        # faces
        faces = []
        face_of = {}
        seen = set()
        for a in range(self.size):
            for f in range(4):
                if (a, f) in seen:
                    continue
                slot = self._glue[a][f]
                if slot is None:
                    elements = ((a, f),)
                    boundary = True
                else:
                    b, sigma = slot
                    elements = ((a, f), (b, sigma(f)))
                    boundary = False
                cls = SimplexClass(len(faces), elements, boundary)
                faces.append(cls)
                for el in elements:
                    seen.add(el)
                    face_of[el] = cls

        # edges: directed orbits, then fold the two directions together
        ddsu = self._directed_edge_orbits()
        groups = {}
        for a in range(self.size):
            for (u, v) in EDGES:
                root = min(ddsu.find((a, u, v)), ddsu.find((a, v, u)))
                groups.setdefault(root, []).append((a, u, v))
        edges = []
        edge_of = {}
        edge_direction = {}
        boundary_faces = {el for cls in faces if cls.boundary
                          for el in cls.elements}
        for root in sorted(groups):
            members = sorted(groups[root])
            rep = members[0]
            rep_root = ddsu.find(rep)
            elements = []
            boundary = False
            for (a, u, v) in members:
                if ddsu.find((a, u, v)) == rep_root:
                    elements.append((a, u, v))
                    direction = 1
                else:
                    elements.append((a, v, u))
                    direction = -1
                edge_direction[(a, u, v)] = direction
                edge_direction[(a, v, u)] = -direction
                for f in range(4):
                    if f != u and f != v and (a, f) in boundary_faces:
                        boundary = True
            cls = SimplexClass(len(edges), tuple(elements), boundary)
            edges.append(cls)
            for el in cls.elements:
                a, u, v = el
                edge_of[(a, u, v)] = cls
                edge_of[(a, v, u)] = cls

        # vertices
        cdsu = self._corner_orbits()
        vgroups = {}
        for a in range(self.size):
            for v in range(4):
                vgroups.setdefault(cdsu.find((a, v)), []).append((a, v))
        vertices = []
        vertex_of = {}
        for root in sorted(vgroups):
            members = tuple(sorted(vgroups[root]))
            boundary = any(
                (a, f) in boundary_faces
                for (a, v) in members for f in range(4) if f != v)
            cls = SimplexClass(len(vertices), members, boundary)
            vertices.append(cls)
            for el in members:
                vertex_of[el] = cls

        return Skeleton(vertices, edges, faces, vertex_of, edge_of,
                        edge_direction, face_of)

    def euler_characteristic(self):
        sk = self.skeleton
        return (len(sk.vertices) - len(sk.edges) + len(sk.faces) - self.size)

    # -- boundary --------------------------------------------------------

    def boundary_components(self):
        """List of boundary components, each a sorted list of boundary
        face slots (tet, face); two slots are adjacent when they share a
        boundary edge class."""
        self._require_valid()
        slots = self.boundary_faces()
        if not slots:
            return []
        dsu = _DSU(slots)
        sk = self.skeleton
        by_edge = {}
        for (a, f) in slots:
            for u, v in ((x, y) for x in FACE_VERTICES[f]
                         for y in FACE_VERTICES[f] if x < y):
                by_edge.setdefault(sk.edge_of[(a, u, v)].index, []).append((a, f))
        for incident in by_edge.values():
            for other in incident[1:]:
                dsu.union(incident[0], other)
        return dsu.classes()

    def boundary_euler_characteristics(self):
        """Euler characteristic of each boundary component, in the order
        returned by boundary_components()."""
        sk = self.skeleton
        out = []
        for comp in self.boundary_components():
            face_set = set(comp)
            eset = set()
            vset = set()
            for (a, f) in comp:
                for u, v in ((x, y) for x in FACE_VERTICES[f]
                             for y in FACE_VERTICES[f] if x < y):
                    eset.add(sk.edge_of[(a, u, v)].index)
                for u in FACE_VERTICES[f]:
                    vset.add(sk.vertex_of[(a, u)].index)
            out.append(len(vset) - len(eset) + len(face_set))
        return out

    # -- canonical form ----------------------------------------------------

    def canonical_form(self):
        """A byte string equal for two triangulations exactly when they
        are simplicially isomorphic.

        A breadth-first relabeling is computed from every choice of
        start tetrahedron and start frame; each traversal re-expresses
        the gluing table in discovery order, and the lexicographically
        least table wins.  Requires a connected triangulation.
        """
        if 'canonical' not in self._cache:
            if not self.is_connected():
                raise ValueError('canonical form needs a connected triangulation')
            best = None
            for start in range(self.size):
                for frame in ALL_PERMS:
                    enc = self._encode_from(start, frame, best)
                    if enc is not None and (best is None or enc < best):
                        best = enc
            self._cache['canonical'] = bytes(best)
        return self._cache['canonical']

    def _encode_from(self, start, frame, best):
        glue = self._glue
        new_index = {start: 0}
        frames = {start: frame}
        order = [start]
        out = bytearray()
        pos = 0
        for j in range(self.size):
            a = order[j]
            alpha = frames[a]
            inv = alpha.inverse()
            for phi in range(4):
                i = inv(phi)
                slot = glue[a][i]
                if slot is None:
                    token = (255, 255)
                else:
                    b, sigma = slot
                    if b not in new_index:
                        new_index[b] = len(order)
                        frames[b] = alpha * sigma.inverse()
                        order.append(b)
                    token = (new_index[b],
                             (frames[b] * sigma * inv).index)
                out.append(token[0])
                out.append(token[1])
                if best is not None:
                    # abandon a traversal as soon as it exceeds the best
                    if out[pos] != best[pos]:
                        if out[pos] > best[pos]:
                            return None
                        best = None
                    elif out[pos + 1] != best[pos + 1]:
                        if out[pos + 1] > best[pos + 1]:
                            return None
                        best = None
                pos += 2
        return out

    def canonical_labeling(self):
        """A relabeling (tet_map, vertex_perms) whose application
        realizes canonical_form: relabeled(tet_map, vertex_perms) has
        the canonical gluing table."""
        best = self.canonical_form()
        for start in range(self.size):
            for frame in ALL_PERMS:
                enc = self._encode_from(start, frame, best)
                if enc is not None and bytes(enc) == best:
                    return self._labeling_from(start, frame)
        raise AssertionError('no traversal reproduces the canonical form')

    def _labeling_from(self, start, frame):
        glue = self._glue
        new_index = {start: 0}
        frames = {start: frame}
        order = [start]
        for j in range(self.size):
            a = order[j]
            alpha = frames[a]
            inv = alpha.inverse()
            for phi in range(4):
                slot = glue[a][inv(phi)]
                if slot is None:
                    continue
                b, sigma = slot
                if b not in new_index:
                    new_index[b] = len(order)
                    frames[b] = alpha * sigma.inverse()
                    order.append(b)
        tet_map = [new_index[a] for a in range(self.size)]
        perms = [frames[a] for a in range(self.size)]
        return tet_map, perms

    # -- relabeling (used by tests) ---------------------------------------

    def relabeled(self, tet_map, vertex_perms):
        """The isomorphic triangulation with tetrahedron a renamed to
        tet_map[a] and its vertices relabeled by vertex_perms[a]."""
        size = self.size
        new = [[None] * 4 for _ in range(size)]
        for a in range(size):
            pa = Perm4(vertex_perms[a])
            for f in range(4):
                slot = self._glue[a][f]
                if slot is None:
                    continue
                b, sigma = slot
                pb = Perm4(vertex_perms[b])
                new[tet_map[a]][pa(f)] = (tet_map[b],
                                          pb * sigma * pa.inverse())
        return Triangulation(new)

    # -- equality and hashing ---------------------------------------------

    def same_gluings(self, other):
        return self._glue == other._glue

    def __repr__(self):
        nb = len(self.boundary_faces())
        return '<Triangulation: %d tets, %d boundary faces>' % (self.size, nb)


# -- gluing-table file format ---------------------------------------------
#
#   tets N
#   i: s0 s1 s2 s3
#
# where each slot is '-' for a boundary face or 'j/abcd' gluing to
# tetrahedron j with permutation image abcd.  '#' starts a comment.

def _propagate_match(a, b, anchor, frame):
    """Grow the unique isomorphism extending tet 0 of a ↦ (anchor,
    frame) of b, or None on the first conflicting gluing.  Covers one
    connected component; the caller handles undercoverage."""
    ga, gb = a._glue, b._glue
    tet_map = [None] * a.size
    perms = [None] * a.size
    tet_map[0] = anchor
    perms[0] = frame
    used = {anchor}
    queue = [0]
    covered = 1
    while queue:
        x = queue.pop()
        p = perms[x]
        y = tet_map[x]
        for f in range(4):
            slot_a = ga[x][f]
            slot_b = gb[y][p(f)]
            if slot_a is None and slot_b is None:
                continue
            if slot_a is None or slot_b is None:
                return None
            xa, sigma_a = slot_a
            yb, sigma_b = slot_b
            q = sigma_b * p * sigma_a.inverse()
            if tet_map[xa] is None:
                if yb in used:
                    return None
                tet_map[xa] = yb
                perms[xa] = q
                used.add(yb)
                queue.append(xa)
                covered += 1
            elif tet_map[xa] != yb or perms[xa] != q:
                return None
    if covered != a.size:
        return None
    return tet_map, perms


def isomorphism(a, b):
    """A relabeling carrying a onto b: (tet_map, vertex_perms) with
    a.relabeled(tet_map, vertex_perms).same_gluings(b), or None when
    the two triangulations are not isomorphic.  Anchoring tet 0 of a
    on each framed tetrahedron of b determines the rest by following
    gluings, so failures abort on the first mismatched face."""
    if a.size != b.size:
        return None
    if a.size == 0:
        return [], []
    if not a.is_connected() or not b.is_connected():
        raise ValueError('isomorphism needs connected triangulations')
    for anchor in range(b.size):
        for frame in ALL_PERMS:
            match = _propagate_match(a, b, anchor, frame)
            if match is not None:
                return match
    return None


def dumps(tri):
    lines = ['tets %d' % tri.size]
    for a in range(tri.size):
        slots = []
        for f in range(4):
            slot = tri.gluing(a, f)
            if slot is None:
                slots.append('-')
            else:
                b, sigma = slot
                slots.append('%d/%s' % (b, sigma.letters()))
        lines.append('%d: %s' % (a, ' '.join(slots)))
    return '\n'.join(lines) + '\n'


class FormatError(ValueError):
    pass


def loads(text):
    rows = []
    for raw in text.splitlines():
        line = raw.split('#', 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise FormatError('empty gluing table')
    head = rows[0].split()
    if len(head) != 2 or head[0] != 'tets':
        raise FormatError('expected header "tets N", got %r' % rows[0])
    try:
        size = int(head[1])
    except ValueError:
        raise FormatError('bad tetrahedron count %r' % head[1])
    if size < 0:
        raise FormatError('negative tetrahedron count')
    if len(rows) - 1 != size:
        raise FormatError('expected %d tetrahedron lines, found %d'
                          % (size, len(rows) - 1))
    table = [None] * size
    for row in rows[1:]:
        if ':' not in row:
            raise FormatError('missing ":" in row %r' % row)
        head, rest = row.split(':', 1)
        try:
            index = int(head)
        except ValueError:
            raise FormatError('bad tetrahedron index %r' % head)
        if not 0 <= index < size:
            raise FormatError('tetrahedron index %d out of range' % index)
        if table[index] is not None:
            raise FormatError('duplicate row for tetrahedron %d' % index)
        slots = rest.split()
        if len(slots) != 4:
            raise FormatError('tetrahedron %d has %d slots, expected 4'
                              % (index, len(slots)))
        parsed = []
        for text_slot in slots:
            if text_slot == '-':
                parsed.append(None)
                continue
            if '/' not in text_slot:
                raise FormatError('bad slot %r' % text_slot)
            target, letters = text_slot.split('/', 1)
            try:
                b = int(target)
            except ValueError:
                raise FormatError('bad target tetrahedron in %r' % text_slot)
            if not 0 <= b < size:
                raise FormatError('target tetrahedron %d out of range' % b)
            if len(letters) != 4 or not letters.isdigit():
                raise FormatError('bad permutation in %r' % text_slot)
            image = tuple(int(c) for c in letters)
            if sorted(image) != [0, 1, 2, 3]:
                raise FormatError('%r is not a permutation of 0123' % letters)
            parsed.append((b, Perm4(image)))
        table[index] = parsed
    return Triangulation(table)


def load(path):
    with open(path) as handle:
        return loads(handle.read())


def save(tri, path):
    with open(path, 'w') as handle:
        handle.write(dumps(tri))
