"""Exact computations with orthosymplectic spinor representations.

The package realizes osp(m|2n) in exact rational arithmetic: the matrix
realization and its Chevalley basis, the weight lattice and both root
conventions with odd reflections, the super Grassmann spinor modules,
depth-truncated highest-weight modules with their contravariant forms,
and tensor product decompositions verified against a brute-force
primitive-vector oracle.
"""

from .exactfield import FieldScalar, Rat
from .weights import Context, Weight

__all__ = ["FieldScalar", "Rat", "Context", "Weight"]

__version__ = "0.1.0"
