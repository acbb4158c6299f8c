"""Triangulated 3-manifolds: gluing tables, Pachner moves, normal
surfaces, and explicit move-count bounds.

The package is organised bottom-up:

- :mod:`pachner.perm4` -- the symmetric group on four labels.
- :mod:`pachner.triangulation` -- gluing tables, validity, skeleton,
  canonical forms, and the ``.tri`` file format.
- :mod:`pachner.homology` -- first homology and the invariant
  fingerprint used to audit moves.
- :mod:`pachner.moves` -- the four interior moves and three boundary
  moves, move records, and replay.
- :mod:`pachner.normal` -- normal coordinates and matching equations.
- :mod:`pachner.geometry` -- reconstruction of the surface carried by
  a coordinate vector: components, Euler characteristic, sidedness.
- :mod:`pachner.enumeration` -- vertex and fundamental surface
  enumeration with certified coordinate bounds.
- :mod:`pachner.subdivision` -- subdividing along a normal surface.
- :mod:`pachner.bounds` -- exact arithmetic on towers of exponentials.
- :mod:`pachner.search` -- connecting triangulations by move sequences.
- :mod:`pachner.corpus` -- small bundled example triangulations.
"""

from .triangulation import (
    Triangulation,
    InvalidTriangulation,
    loads,
    dumps,
    load,
    save,
)
from .homology import first_homology, fingerprint
from .moves import Move, IllegalMove, apply_move, enumerate_moves, replay
from .normal import NormalSurfaceVector, haken_sum, vertex_links
from .geometry import reconstruct, classify
from .enumeration import enumerate_vertex, enumerate_fundamental
from .corpus import bundled_names, load_bundled

__version__ = '0.1.0'

__all__ = [
    'Triangulation',
    'InvalidTriangulation',
    'loads',
    'dumps',
    'load',
    'save',
    'first_homology',
    'fingerprint',
    'Move',
    'IllegalMove',
    'apply_move',
    'enumerate_moves',
    'replay',
    'NormalSurfaceVector',
    'haken_sum',
    'vertex_links',
    'reconstruct',
    'classify',
    'enumerate_vertex',
    'enumerate_fundamental',
    'bundled_names',
    'load_bundled',
    '__version__',
]
