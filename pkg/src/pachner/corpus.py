"""Bundled example triangulations.

A small collection of gluing tables ships with the package: the single
tetrahedron, the two-tetrahedron sphere, solid torus and lens space,
and a few larger forms of the same manifolds obtained by applying
moves.  Tests and the command line examples lean on these.
"""

from importlib import resources

from .triangulation import loads

BUNDLED = (
    'one_tet',
    'two_tet_sphere',
    'solid_torus',
    'lens_three',
    'three_tet_sphere',
    'three_tet_torus',
    'four_tet_ball',
    'five_tet_lens',
)


def bundled_names():
    """Names of the bundled triangulations, smallest first."""
    return BUNDLED


def bundled_text(name):
    """The raw gluing table for a bundled triangulation."""
    if name not in BUNDLED:
        raise KeyError('no bundled triangulation named %r' % name)
    path = resources.files('pachner').joinpath('data', name + '.tri')
    return path.read_text()


def load_bundled(name):
    """Parse a bundled triangulation by name."""
    return loads(bundled_text(name))


def bundled():
    """Yield (name, triangulation) pairs for the whole collection."""
    for name in BUNDLED:
        yield name, load_bundled(name)
