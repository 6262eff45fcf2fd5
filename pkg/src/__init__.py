"""
mubgeo
Mutually unbiased bases, complementarity polytopes, finite affine planes
and discrete Wigner functions.
"""

__version__ = "1.0.0"
__author__ = "mubgeo developers"
__description__ = "MUB construction and finite-geometry verification toolkit"
