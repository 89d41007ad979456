"""Two-dimensional holonomy for finite crossed modules.

Exact state sums of fake-flat 2-connections on triangulated 2-complexes,
simple polyhedra and ribbon surfaces.
"""

__version__ = "0.1.0"
