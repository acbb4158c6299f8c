"""Normal surface coordinates and the matching system.

A normal surface meets each tetrahedron in triangles (cutting off one
vertex) and quadrilaterals (separating a pair of vertices from the
other pair), so it is described by 7t nonnegative integers.  The
coordinate block for tetrahedron a occupies positions 7a..7a+6 in the
order

    t0 t1 t2 t3 q01|23 q02|13 q03|12

where t_w counts triangles cutting off vertex w and the three quad
coordinates are indexed by the vertex pairing.  Across every interior
face the counts of the three normal arc types must agree; those linear
equations form the matching system.  Within one tetrahedron an embedded
surface can use at most one quad type, which is the admissibility
restriction on solutions.
"""

from fractions import Fraction

from .triangulation import FACE_VERTICES, InvalidTriangulation

# quad type k pairs QUAD_PAIRS[k][0] with itself, separating it from the
# complementary pair
QUAD_PAIRS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))

QUAD_OF_PAIR = {}
for _k, (_p1, _p2) in enumerate(QUAD_PAIRS):
    for _pair in (_p1, _p2):
        QUAD_OF_PAIR[_pair] = _k
        QUAD_OF_PAIR[(_pair[1], _pair[0])] = _k


def triangle_index(tet, w):
    return 7 * tet + w

def quad_index(tet, k):
    return 7 * tet + 4 + k


def arc_count(coords, tet, face, w):
    """Number of normal arcs of type (face, w): arcs in `face` cutting
    off its corner at vertex w.  Contributed by triangles at w and by
    the quad type that pairs w with the vertex opposite the face."""
    return (coords[triangle_index(tet, w)]
            + coords[quad_index(tet, QUAD_OF_PAIR[(w, face)])])


def edge_crossings(coords, tet, x, y):
    """Points of the surface on edge (x, y) of one tetrahedron: both
    triangle types at the ends plus every quad type except the one that
    keeps x and y on the same side."""
    keep = QUAD_OF_PAIR[(x, y)]
    total = coords[triangle_index(tet, x)] + coords[triangle_index(tet, y)]
    for k in range(3):
        if k != keep:
            total += coords[quad_index(tet, k)]
    return total


class MatchingSystem:
    """The linear system a normal coordinate vector must satisfy: for
    each interior face and each of its three arc types, the arc counts
    computed from the two sides agree.  Rows are stored as dense
    integer tuples of length 7t; a row built over a self-glued face can
    have fewer than four nonzero entries when terms from the two sides
    land on the same coordinate."""

    def __init__(self, triangulation, rows, faces):
        self.triangulation = triangulation
        self.rows = rows
        self.faces = faces     # (tet, face, w) labelling each row

    @property
    def equation_count(self):
        return len(self.rows)

    def residuals(self, coords):
        return [sum(c * x for c, x in zip(row, coords) if c)
                for row in self.rows]

    def is_satisfied_by(self, coords):
        for row in self.rows:
            if sum(c * x for c, x in zip(row, coords) if c):
                return False
        return True

    def __repr__(self):
        return ('<MatchingSystem: %d equations over %d coordinates>'
                % (len(self.rows), 7 * self.triangulation.size))


def matching_system(tri):
    if not tri.is_valid:
        raise InvalidTriangulation('matching system needs a valid '
                                   'triangulation')
    n = 7 * tri.size
    rows = []
    labels = []
    for cls in tri.skeleton.faces:
        if cls.boundary:
            continue
        a, f = min(cls.elements)
        b, sigma = tri.gluing(a, f)
        g = sigma(f)
        for w in FACE_VERTICES[f]:
            row = [0] * n
            row[triangle_index(a, w)] += 1
            row[quad_index(a, QUAD_OF_PAIR[(w, f)])] += 1
            row[triangle_index(b, sigma(w))] -= 1
            row[quad_index(b, QUAD_OF_PAIR[(sigma(w), g)])] -= 1
            rows.append(tuple(row))
            labels.append((a, f, w))
    return MatchingSystem(tri, rows, labels)


class QuadConflict(ValueError):
    """Two quad types forced into the same tetrahedron."""


class NormalSurfaceVector:
    """A candidate normal surface: 7t nonnegative integers over a fixed
    triangulation.  Construction checks only shape and nonnegativity;
    is_admissible additionally tests the matching equations and the
    one-quad-type-per-tetrahedron restriction."""

    __slots__ = ('triangulation', 'coords', '_system')

    def __init__(self, triangulation, coords, _system=None):
        coords = tuple(int(c) for c in coords)
        if len(coords) != 7 * triangulation.size:
            raise ValueError('expected %d coordinates, got %d'
                             % (7 * triangulation.size, len(coords)))
        if any(c < 0 for c in coords):
            raise ValueError('normal coordinates must be nonnegative')
        self.triangulation = triangulation
        self.coords = coords
        self._system = _system

    def system(self):
        if self._system is None:
            self._system = matching_system(self.triangulation)
        return self._system

    def quad_types(self):
        """Per tetrahedron, the set of quad types in use."""
        out = []
        for a in range(self.triangulation.size):
            out.append({k for k in range(3)
                        if self.coords[quad_index(a, k)]})
        return out

    def quad_ok(self):
        return all(len(used) <= 1 for used in self.quad_types())

    def is_admissible(self):
        return self.quad_ok() and self.system().is_satisfied_by(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def disc_count(self):
        return sum(self.coords)

    def arc_count(self, tet, face, w):
        return arc_count(self.coords, tet, face, w)

    def edge_crossings(self, tet, x, y):
        return edge_crossings(self.coords, tet, x, y)

    def edge_weight(self, edge_class):
        """Points on one edge class, computed from its first corner;
        the matching equations make every corner give the same count."""
        a, x, y = edge_class.elements[0]
        return edge_crossings(self.coords, a, x, y)

    def _same_owner(self, other):
        if (self.triangulation is not other.triangulation
                and not self.triangulation.same_gluings(other.triangulation)):
            raise ValueError('vectors live over different triangulations')

    def __add__(self, other):
        self._same_owner(other)
        return NormalSurfaceVector(
            self.triangulation,
            [a + b for a, b in zip(self.coords, other.coords)],
            _system=self._system or other._system)

    def __mul__(self, k):
        k = int(k)
        if k < 0:
            raise ValueError('scalar must be nonnegative')
        return NormalSurfaceVector(self.triangulation,
                                   [k * c for c in self.coords],
                                   _system=self._system)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, NormalSurfaceVector)
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return '<NormalSurfaceVector %s>' % (self.coords,)


def haken_sum(u, v):
    """The coordinatewise sum of two admissible vectors, the vector of
    the geometric (Haken) sum surface.  Raises QuadConflict when the
    sum would force two quad types into one tetrahedron, ValueError on
    owner or shape mismatch."""
    u._same_owner(v)
    if not (u.is_admissible() and v.is_admissible()):
        raise ValueError('haken_sum needs admissible operands')
    for used_u, used_v in zip(u.quad_types(), v.quad_types()):
        if len(used_u | used_v) > 1:
            raise QuadConflict('incompatible quad types %s and %s'
                               % (sorted(used_u), sorted(used_v)))
    return u + v


def scalar_multiple(v, k):
    k = int(k)
    if k <= 0:
        raise ValueError('scalar must be a positive integer')
    return v * k


def vertex_link(tri, vertex_class):
    """The normal vector of the link of a vertex class: one triangle at
    every corner in the class, no quads."""
    coords = [0] * (7 * tri.size)
    for (a, w) in vertex_class.elements:
        coords[triangle_index(a, w)] += 1
    return NormalSurfaceVector(tri, coords)


def vertex_links(tri):
    return [vertex_link(tri, cls) for cls in tri.skeleton.vertices]


def reduced(coords):
    """The coprime representative of a nonzero integer direction."""
    from math import gcd
    g = 0
    for c in coords:
        g = gcd(g, c)
    if g <= 1:
        return tuple(coords)
    return tuple(c // g for c in coords)


def rational_rank(rows, coords_len):
    """Rank of a rational matrix given as an iterable of rows."""
    mat = [list(map(Fraction, row)) for row in rows]
    rank = 0
    for col in range(coords_len):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


# -- surface files ------------------------------------------------------------

def dumps_surface(vector, tri_ref):
    """Serialize as `surface over <triangulation-file> t=<t>` followed
    by the 7t coordinates."""
    lines = ['surface over %s t=%d' % (tri_ref, vector.triangulation.size)]
    for a in range(vector.triangulation.size):
        block = vector.coords[7 * a:7 * a + 7]
        lines.append(' '.join(str(c) for c in block))
    return '\n'.join(lines) + '\n'


def parse_surface(text):
    """Parse a surface file into (triangulation reference, tet count,
    coordinate tuple).  The caller resolves the reference."""
    body = []
    header = None
    for raw in text.splitlines():
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if header is None:
            header = line
        else:
            body.extend(line.split())
    if header is None or not header.startswith('surface over '):
        raise ValueError('missing `surface over <file> t=<t>` header')
    rest = header[len('surface over '):].rsplit(' t=', 1)
    if len(rest) != 2:
        raise ValueError('malformed surface header %r' % header)
    ref, t_text = rest[0].strip(), rest[1].strip()
    t = int(t_text)
    coords = [int(x) for x in body]
    if len(coords) != 7 * t:
        raise ValueError('expected %d coordinates, found %d'
                         % (7 * t, len(coords)))
    return ref, t, tuple(coords)


def loads_surface(text, tri):
    ref, t, coords = parse_surface(text)
    if t != tri.size:
        raise ValueError('surface is over a %d-tet triangulation, '
                         'got one with %d' % (t, tri.size))
    return NormalSurfaceVector(tri, coords)
