"""Exact-arithmetic verifier for staircase-type complexes of equivariant
bundles on isotropic Grassmannians.

The package builds, at a fixed fiber and at the level of weight
combinatorics, the complexes of equivariant vector bundles attached to the
symplectic Grassmannian of planes, and mechanically verifies their
structural properties: complex conditions, filtration compatibility,
anticommutativity of the resolution grid, exactness, and the closed-form
cohomology ranks.  All arithmetic is exact (arbitrary-precision rationals);
there are no floating-point numbers anywhere.
"""

__version__ = "0.1.0"
