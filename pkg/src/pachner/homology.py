"""First homology of a triangulated 3-manifold.

The quotient complex of a valid triangulation is a CW-complex whose
cells are the identification classes of the skeleton, so H_1 comes from
the cellular chain complex

    C_3 --d3--> C_2 --d2--> C_1 --d1--> C_0

with the usual alternating-sign boundary formula, corrected per cell by
whether the chosen class representative agrees with the orientation the
incident cell induces.  All arithmetic is exact; ranks and invariant
factors come from an integer Smith reduction with small-pivot selection
to keep coefficient growth down.
"""

from .triangulation import FACE_VERTICES


def _directed_sign(sk, tet, u, v):
    # +1 when (u, v) runs along the chosen direction of its edge class
    return sk.edge_direction[(tet, u, v)]


def boundary_matrices(tri):
    """The matrices of d1, d2, d3 as dense lists of rows.

    d1 is (#vertex classes) x (#edge classes); d2 is (#edge classes) x
    (#face classes); d3 is (#face classes) x (#tetrahedra).
    """
    tri._require_valid()
    sk = tri.skeleton
    nv, ne, nf, nt = (len(sk.vertices), len(sk.edges), len(sk.faces),
                      tri.size)

    d1 = [[0] * ne for _ in range(nv)]
    for e in sk.edges:
        a, u, v = e.elements[0]
        head = sk.vertex_of[(a, v)].index
        tail = sk.vertex_of[(a, u)].index
        d1[head][e.index] += 1
        d1[tail][e.index] -= 1

    d2 = [[0] * nf for _ in range(ne)]
    for fc in sk.faces:
        a, f = fc.elements[0]
        i, j, k = FACE_VERTICES[f]
        for (u, v), sign in (((j, k), 1), ((i, k), -1), ((i, j), 1)):
            cls = sk.edge_of[(a, u, v)]
            d2[cls.index][fc.index] += sign * _directed_sign(sk, a, u, v)

    d3 = [[0] * nt for _ in range(nf)]
    for a in range(tri.size):
        for f in range(4):
            cls = sk.face_of[(a, f)]
            b, g = cls.elements[0]
            if (b, g) == (a, f):
                eps = 1
            else:
                sigma = tri.gluing(a, f)[1]
                triple = [sigma(x) for x in FACE_VERTICES[f]]
                # parity of the permutation sorting the image triple
                eps = 1
                for p in range(3):
                    for q in range(p + 1, 3):
                        if triple[p] > triple[q]:
                            eps = -eps
            d3[cls.index][a] += ((-1) ** f) * eps
    return d1, d2, d3


def smith_diagonal(matrix):
    """Diagonal entries of the Smith normal form, nonnegative, each
    dividing the next.  The input is not modified."""
    m = [row[:] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    r = c = 0
    while r < rows and c < cols:
        # smallest nonzero entry in the remaining block as pivot
        pivot = None
        for i in range(r, rows):
            for j in range(c, cols):
                val = m[i][j]
                if val and (pivot is None or abs(val) < abs(pivot[0])):
                    pivot = (val, i, j)
        if pivot is None:
            break
        _, pi, pj = pivot
        m[r], m[pi] = m[pi], m[r]
        for row in m:
            row[c], row[pj] = row[pj], row[c]
        while True:
            cleared = True
            for i in range(r + 1, rows):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    for j in range(c, cols):
                        m[i][j] -= q * m[r][j]
                    if m[i][c]:
                        m[r], m[i] = m[i], m[r]
                        cleared = False
            for j in range(c + 1, cols):
                if m[r][j]:
                    q = m[r][j] // m[r][c]
                    for i in range(r, rows):
                        m[i][j] -= q * m[i][c]
                    if m[r][j]:
                        for i in range(r, rows):
                            m[i][c], m[i][j] = m[i][j], m[i][c]
                        cleared = False
            if cleared:
                break
        # divisibility fix-up: pivot must divide the rest of the block
        val = abs(m[r][c])
        fixed = False
        for i in range(r + 1, rows):
            if fixed:
                break
            for j in range(c + 1, cols):
                if m[i][j] % val:
                    for jj in range(c, cols):
                        m[r][jj] += m[i][jj]
                    fixed = True
                    break
        if fixed:
            continue
        diag.append(val)
        r += 1
        c += 1
    return diag


def rank(matrix):
    return len(smith_diagonal(matrix))


def rank_mod2(matrix):
    """Rank over GF(2), via bit-packed Gaussian elimination."""
    rows = []
    for row in matrix:
        bits = 0
        for j, val in enumerate(row):
            if val & 1:
                bits |= 1 << j
        if bits:
            rows.append(bits)
    r = 0
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        r += 1
        low = pivot & -pivot
        rows = [row ^ pivot if row & low else row for row in rows]
    return r


class FirstHomology:
    """H_1 of the manifold: free rank over Q, dimension over Z/2, and
    the nontrivial invariant factors."""

    def __init__(self, betti_q, betti_mod2, torsion):
        self.betti_q = betti_q
        self.betti_mod2 = betti_mod2
        self.torsion = tuple(torsion)

    def __eq__(self, other):
        return (isinstance(other, FirstHomology)
                and self.betti_q == other.betti_q
                and self.betti_mod2 == other.betti_mod2
                and self.torsion == other.torsion)

    def __hash__(self):
        return hash((self.betti_q, self.betti_mod2, self.torsion))

    def __repr__(self):
        parts = ['Z'] * self.betti_q + ['Z/%d' % d for d in self.torsion]
        return '<H1 = %s; dim H1(Z/2) = %d>' % (
            ' + '.join(parts) if parts else '0', self.betti_mod2)


def _rank_d1(tri):
    # d1 is the incidence matrix of the 1-skeleton graph, which is
    # totally unimodular, so its rank over every field is
    # (#vertex classes) - (#components of the 1-skeleton).
    sk = tri.skeleton
    parent = list(range(len(sk.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in sk.edges:
        a, u, v = e.elements[0]
        ru = find(sk.vertex_of[(a, u)].index)
        rv = find(sk.vertex_of[(a, v)].index)
        if ru != rv:
            parent[ru] = rv
    comps = len({find(x) for x in range(len(sk.vertices))})
    return len(sk.vertices) - comps


def first_homology(tri):
    tri._require_valid()
    sk = tri.skeleton
    ne = len(sk.edges)
    d2 = [[0] * len(sk.faces) for _ in range(ne)]
    for fc in sk.faces:
        a, f = fc.elements[0]
        i, j, k = FACE_VERTICES[f]
        for (u, v), sign in (((j, k), 1), ((i, k), -1), ((i, j), 1)):
            cls = sk.edge_of[(a, u, v)]
            d2[cls.index][fc.index] += sign * _directed_sign(sk, a, u, v)
    diag2 = smith_diagonal(d2)
    r1 = _rank_d1(tri)
    r2 = len(diag2)
    betti = (ne - r1) - r2
    torsion = sorted(d for d in diag2 if d > 1)
    r2_mod2 = rank_mod2(d2)
    betti2 = (ne - r1) - r2_mod2
    return FirstHomology(betti, betti2, torsion)


def first_betti_numbers(tri):
    """(b_1 over Q, b_1 over Z/2)."""
    h = first_homology(tri)
    return h.betti_q, h.betti_mod2


def fingerprint(tri):
    """The invariants every Pachner move must preserve, bundled for
    cheap comparison: orientability, boundary data and H_1."""
    h = first_homology(tri)
    return (tri.validity.orientable,
            len(tri.boundary_components()),
            tuple(sorted(tri.boundary_euler_characteristics())),
            h.betti_q, h.betti_mod2, h.torsion)
