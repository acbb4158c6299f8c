"""Permutations of {0,1,2,3}, the vertex labels of a tetrahedron.

All 24 elements of S4 are built once and indexed lexicographically by
their image tuples.  Composition, inversion and signs are table lookups,
so the rest of the package can treat permutation arithmetic as free.
"""

import itertools

PERMS = tuple(itertools.permutations(range(4)))
PERM_INDEX = {p: i for i, p in enumerate(PERMS)}

IDENTITY = PERM_INDEX[(0, 1, 2, 3)]


def _sign(p):
    s = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                s = -s
    return s


SIGN = tuple(_sign(p) for p in PERMS)

# MUL[i][j] is the index of "apply j first, then i".
MUL = tuple(
    tuple(PERM_INDEX[tuple(p[q[x]] for x in range(4))] for q in PERMS)
    for p in PERMS
)

INV = tuple(
    PERM_INDEX[tuple(sorted(range(4), key=lambda x, p=p: p[x]))]
    for p in PERMS
)


class Perm4:
    """A permutation of the four vertex labels of a tetrahedron.

    Instances are interned: there are exactly 24 of them, one per
    element of S4, so identity comparison works and composing in a hot
    loop costs two table lookups.
    """

    __slots__ = ('index', 'image')
    _cache = [None] * 24

    def __new__(cls, image):
        if isinstance(image, Perm4):
            return image
        if isinstance(image, int):
            idx = image
        else:
            idx = PERM_INDEX[tuple(image)]
        cached = cls._cache[idx]
        if cached is not None:
            return cached
        self = object.__new__(cls)
        self.index = idx
        self.image = PERMS[idx]
        cls._cache[idx] = self
        return self

    def __call__(self, x):
        return self.image[x]

    def __mul__(self, other):
        # (self * other)(x) == self(other(x))
        return Perm4(MUL[self.index][other.index])

    def inverse(self):
        return Perm4(INV[self.index])

    def sign(self):
        return SIGN[self.index]

    def is_identity(self):
        return self.index == IDENTITY

    def __eq__(self, other):
        return isinstance(other, Perm4) and self.index == other.index

    def __hash__(self):
        return self.index

    def __repr__(self):
        return 'Perm4(%d%d%d%d)' % self.image

    def letters(self):
        """The image written as four digits, e.g. '0132'."""
        return '%d%d%d%d' % self.image


ALL_PERMS = tuple(Perm4(i) for i in range(24))
PERM_ID = Perm4(IDENTITY)


def transposition(a, b):
    image = list(range(4))
    image[a], image[b] = image[b], image[a]
    return Perm4(image)
