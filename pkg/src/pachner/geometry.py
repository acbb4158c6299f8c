"""Reconstruction of a normal surface as an explicit cell complex.

The coordinates of an admissible vector pin the surface down up to
normal isotopy, so its combinatorics can be read off directly: parallel
copies of each disc type are stacked with triangles outermost at each
vertex and the quads in a middle band, and the resulting arcs in each
face are glued index by index across face gluings.  A convenient fact
keeps all the bookkeeping straight: if the arcs in a face are numbered
outward from the corner they cut off, then an arc's two endpoints sit
at exactly its own index within the point stacks of the two edges at
that corner (counting from the corner vertex).  Gluings preserve both
corners and edge directions, so arc index matching is simultaneously
endpoint matching.

From the complex we compute components, Euler characteristic (vertices
are surface points on edges, edges are arcs, faces are discs), weight,
two-sidedness by transverse-side propagation, boundary curves, and the
intersection number with a boundary pattern.
"""

from .triangulation import FACE_VERTICES, InvalidTriangulation
from .normal import QUAD_PAIRS, QUAD_OF_PAIR, quad_index, triangle_index


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


class BoundaryPattern:
    """A set of boundary edge classes.  Operations only accept patterns
    whose classes form disjoint simple closed curves (every incident
    vertex class of degree two); trivalent graphs can be represented
    but are rejected wherever a number is computed."""

    def __init__(self, tri, edge_classes):
        seen = set()
        edges = []
        for cls in edge_classes:
            if not cls.boundary:
                raise ValueError('pattern edge %d is not on the boundary'
                                 % cls.index)
            if cls.index not in seen:
                seen.add(cls.index)
                edges.append(cls)
        self.triangulation = tri
        self.edges = edges

    @classmethod
    def from_indices(cls, tri, indices):
        by_index = {e.index: e for e in tri.skeleton.edges}
        try:
            return cls(tri, [by_index[i] for i in indices])
        except KeyError as missing:
            raise ValueError('no edge class %s' % missing)

    def vertex_degrees(self):
        degrees = {}
        sk = self.triangulation.skeleton
        for cls in self.edges:
            a, u, v = cls.elements[0]
            for corner in (u, v):
                key = sk.vertex_of[(a, corner)].index
                degrees[key] = degrees.get(key, 0) + 1
        return degrees

    def is_curves(self):
        return all(d == 2 for d in self.vertex_degrees().values())

    def require_curves(self):
        if not self.is_curves():
            raise ValueError('pattern is a trivalent graph, not a union '
                             'of simple closed curves')

    def __repr__(self):
        return ('<BoundaryPattern: %d edges, %s>'
                % (len(self.edges),
                   'curves' if self.is_curves() else 'trivalent'))


class ComponentReport:
    __slots__ = ('index', 'chi', 'two_sided', 'orientable', 'boundary_curves',
                 'genus', 'name', 'discs')

    def __init__(self, index, chi, two_sided, orientable, boundary_curves,
                 genus, name, discs):
        self.index = index
        self.chi = chi
        self.two_sided = two_sided
        self.orientable = orientable
        self.boundary_curves = boundary_curves
        self.genus = genus
        self.name = name
        self.discs = discs

    def line(self):
        return ('comp %d: chi=%d orientable=%s two_sided=%s bdry=%d '
                'genus=%d class=%s'
                % (self.index, self.chi, self.orientable, self.two_sided,
                   self.boundary_curves, self.genus, self.name))

    def __repr__(self):
        return '<%s>' % self.line()


def _surface_name(chi, boundary_curves, orientable):
    closed = boundary_curves == 0
    if orientable:
        genus = (2 - chi - boundary_curves) // 2
        if closed:
            return genus, {0: 'sphere', 1: 'torus'}.get(
                genus, 'genus-%d' % genus)
        if chi == 1 and boundary_curves == 1:
            return 0, 'disc'
        if chi == 0 and boundary_curves == 2:
            return 0, 'annulus'
        return genus, 'genus-%d-with-%d-boundary' % (genus, boundary_curves)
    crosscaps = 2 - chi - boundary_curves
    if closed:
        return crosscaps, {1: 'projective-plane',
                           2: 'klein-bottle'}.get(
            crosscaps, 'nonorientable-%d' % crosscaps)
    if crosscaps == 1 and boundary_curves == 1:
        return 1, 'moebius-band'
    return crosscaps, ('nonorientable-%d-with-%d-boundary'
                       % (crosscaps, boundary_curves))


class SurfaceGeometry:
    """The reconstructed cell complex of an admissible vector.

    discs: list of disc keys ('tri', tet, w, i) and ('quad', tet, k, j).
    Derived data is computed once in reconstruct and read off here.
    """

    def __init__(self, vector):
        tri = vector.triangulation
        if not vector.is_admissible():
            raise ValueError('cannot reconstruct an inadmissible vector')
        self.vector = vector
        self.triangulation = tri
        coords = vector.coords
        sk = tri.skeleton

        tri_counts = [[coords[triangle_index(a, w)] for w in range(4)]
                      for a in range(tri.size)]
        quad_type = []
        quad_count = []
        for a in range(tri.size):
            used = [k for k in range(3) if coords[quad_index(a, k)]]
            quad_type.append(used[0] if used else None)
            quad_count.append(coords[quad_index(a, used[0])] if used else 0)
        self._tri_counts = tri_counts
        self._quad_type = quad_type
        self._quad_count = quad_count

        discs = []
        disc_ids = {}
        for a in range(tri.size):
            for w in range(4):
                for i in range(tri_counts[a][w]):
                    disc_ids[('tri', a, w, i)] = len(discs)
                    discs.append(('tri', a, w, i))
            if quad_type[a] is not None:
                for j in range(quad_count[a]):
                    disc_ids[('quad', a, quad_type[a], j)] = len(discs)
                    discs.append(('quad', a, quad_type[a], j))
        self.discs = discs
        self.disc_ids = disc_ids

        self.edge_weights = {cls.index: vector.edge_weight(cls)
                             for cls in sk.edges}

        dsu = _DSU(len(discs))
        edge_cells = 0          # arcs after gluing
        interior_arcs = []      # ((disc, parity), (disc, parity))
        boundary_arcs = []      # (disc, parity, endpoints)
        for cls in sk.faces:
            a, f = min(cls.elements)
            if cls.boundary:
                for w in FACE_VERTICES[f]:
                    stack = self._arc_stack(a, f, w)
                    edge_cells += len(stack)
                    for i, (disc, parity) in enumerate(stack):
                        ends = self._arc_endpoints(a, f, w, i)
                        boundary_arcs.append((disc, parity, ends))
                continue
            b, sigma = tri.gluing(a, f)
            g = sigma(f)
            for w in FACE_VERTICES[f]:
                mine = self._arc_stack(a, f, w)
                theirs = self._arc_stack(b, g, sigma(w))
                if len(mine) != len(theirs):
                    raise ValueError('arc stacks disagree across face '
                                     '(%d, %d); vector does not satisfy '
                                     'the matching system' % (a, f))
                edge_cells += len(mine)
                for (d1, p1), (d2, p2) in zip(mine, theirs):
                    dsu.union(d1, d2)
                    interior_arcs.append(((d1, p1), (d2, p2)))
        self._interior_arcs = interior_arcs
        self._boundary_arcs = boundary_arcs

        point_cells = sum(self.edge_weights.values())
        self.cell_counts = (point_cells, edge_cells, len(discs))

        # component partition
        roots = {}
        for d in range(len(discs)):
            roots.setdefault(dsu.find(d), len(roots))
        self.component_of_disc = [roots[dsu.find(d)]
                                  for d in range(len(discs))]
        self.component_count = len(roots)
        self.components = [[] for _ in range(len(roots))]
        for d in range(len(discs)):
            self.components[self.component_of_disc[d]].append(d)

        self._compute_chi(sk)
        self._compute_two_sided()
        self._trace_boundary()

    # -- stacking conventions -------------------------------------------------

    def _arc_stack(self, a, f, w):
        """Arcs of type (f, w) ordered outward from the corner, as
        (disc id, reference-side parity) pairs.  Parity 0 means the
        disc's reference side (triangle: toward its vertex; quad:
        toward the pair containing vertex 0) faces the corner."""
        out = [(self.disc_ids[('tri', a, w, i)], 0)
               for i in range(self._tri_counts[a][w])]
        k = self._quad_type[a]
        if k is not None and QUAD_OF_PAIR[(w, f)] == k:
            count = self._quad_count[a]
            ascending = 0 in (w, f)
            order = range(count) if ascending else range(count - 1, -1, -1)
            parity = 0 if ascending else 1
            out.extend((self.disc_ids[('quad', a, k, j)], parity)
                       for j in order)
        return out

    def _arc_endpoints(self, a, f, w, i):
        """Global endpoint ids (edge class index, height along the
        class direction) of the arc at stack position i of type (f, w)."""
        sk = self.triangulation.skeleton
        ends = []
        for x in FACE_VERTICES[f]:
            if x == w:
                continue
            cls = sk.edge_of[(a, w, x)]
            height = i
            if sk.edge_direction[(a, w, x)] < 0:
                height = self.edge_weights[cls.index] - 1 - i
            ends.append((cls.index, height))
        return ends

    def _disc_at(self, a, u, v, h):
        """The disc crossing edge (u, v) of tet a at height h from u."""
        tu = self._tri_counts[a][u]
        if h < tu:
            return self.disc_ids[('tri', a, u, h)]
        k = self._quad_type[a]
        q = self._quad_count[a] if (k is not None
                                    and k != QUAD_OF_PAIR[(u, v)]) else 0
        if h < tu + q:
            j = h - tu
            if u not in QUAD_PAIRS[k][0]:
                j = q - 1 - j
            return self.disc_ids[('quad', a, k, j)]
        back = self._tri_counts[a][v] - 1 - (h - tu - q)
        return self.disc_ids[('tri', a, v, back)]

    # -- derived invariants ---------------------------------------------------

    def _compute_chi(self, sk):
        V, E, F = self.cell_counts
        self.chi = V - E + F
        v_per = [0] * self.component_count
        e_per = [0] * self.component_count
        f_per = [0] * self.component_count
        for d in range(len(self.discs)):
            f_per[self.component_of_disc[d]] += 1
        for (d1, _), _pair in self._interior_arcs:
            e_per[self.component_of_disc[d1]] += 1
        for disc, _, _ in self._boundary_arcs:
            e_per[self.component_of_disc[disc]] += 1
        for cls in sk.edges:
            a, u, v = cls.elements[0]
            for h in range(self.edge_weights[cls.index]):
                disc = self._disc_at(a, u, v, h)
                v_per[self.component_of_disc[disc]] += 1
        self.chi_per_component = [v - e + f
                                  for v, e, f in zip(v_per, e_per, f_per)]
        assert sum(self.chi_per_component) == self.chi

    def _compute_two_sided(self):
        """Transverse-side propagation: each disc carries a reference
        side; a gluing relates the two discs' orientation bits by the
        sum of their reference-side parities at the shared arc.  A
        component is two-sided exactly when no cycle forces a flip."""
        n = len(self.discs)
        colour = [None] * n
        adj = [[] for _ in range(n)]
        for (d1, p1), (d2, p2) in self._interior_arcs:
            flip = (p1 + p2) % 2
            adj[d1].append((d2, flip))
            adj[d2].append((d1, flip))
        two_sided = [True] * self.component_count
        for start in range(n):
            if colour[start] is not None:
                continue
            colour[start] = 0
            stack = [start]
            while stack:
                d = stack.pop()
                for e, flip in adj[d]:
                    want = colour[d] ^ flip
                    if colour[e] is None:
                        colour[e] = want
                        stack.append(e)
                    elif colour[e] != want:
                        two_sided[self.component_of_disc[d]] = False
        self.two_sided_per_component = two_sided

    def _trace_boundary(self):
        """Boundary curves: arcs in free faces chained through their
        endpoints on boundary edges; every endpoint joins exactly two
        arc ends, so the chains close into cycles."""
        ends_at = {}
        for arc_id, (disc, _, ends) in enumerate(self._boundary_arcs):
            for side, point in enumerate(ends):
                ends_at.setdefault(point, []).append((arc_id, side))
        for point, incident in ends_at.items():
            if len(incident) != 2:
                raise ValueError('boundary point %s joins %d arc ends'
                                 % (point, len(incident)))
        curves = []
        curve_of_arc = [None] * len(self._boundary_arcs)
        for arc_id in range(len(self._boundary_arcs)):
            if curve_of_arc[arc_id] is not None:
                continue
            curve = []
            a, side = arc_id, 0
            while curve_of_arc[a] is None:
                curve_of_arc[a] = len(curves)
                curve.append(a)
                point = self._boundary_arcs[a][2][1 - side]
                (b1, s1), (b2, s2) = ends_at[point]
                a, side = (b2, s2) if (b1, s1) == (a, 1 - side) else (b1, s1)
            curves.append(curve)
        self.boundary_curves = curves
        counts = [0] * self.component_count
        for curve in curves:
            disc = self._boundary_arcs[curve[0]][0]
            counts[self.component_of_disc[disc]] += 1
        self.boundary_curves_per_component = counts

    # -- queries ---------------------------------------------------------------

    def disc_count(self):
        return len(self.discs)

    def euler_characteristic(self):
        return self.chi

    def weight(self):
        return sum(self.edge_weights.values())

    def is_closed(self):
        return not self._boundary_arcs

    def classify(self):
        orientable_manifold = True   # validity includes orientability
        reports = []
        for c in range(self.component_count):
            chi = self.chi_per_component[c]
            two_sided = self.two_sided_per_component[c]
            orientable = two_sided if orientable_manifold else None
            bdry = self.boundary_curves_per_component[c]
            genus, name = _surface_name(chi, bdry, orientable)
            reports.append(ComponentReport(
                c, chi, two_sided, orientable, bdry, genus, name,
                tuple(self.components[c])))
        return reports

    def report_text(self):
        reports = self.classify()
        if not reports:
            return 'empty surface\n'
        return ''.join(r.line() + '\n' for r in reports)

    def __repr__(self):
        return ('<SurfaceGeometry: %d discs, %d components, chi=%d>'
                % (len(self.discs), self.component_count, self.chi))


def reconstruct(vector):
    return SurfaceGeometry(vector)


def euler_characteristic(geometry):
    return geometry.euler_characteristic()


def weight(geometry):
    return geometry.weight()


def intersection_number(geometry, pattern):
    """Points of the surface boundary on the pattern curves."""
    if pattern.triangulation is not geometry.triangulation:
        if not pattern.triangulation.same_gluings(geometry.triangulation):
            raise ValueError('pattern and surface live over different '
                             'triangulations')
    pattern.require_curves()
    return sum(geometry.edge_weights[cls.index] for cls in pattern.edges)


def classify(geometry):
    return geometry.classify()
