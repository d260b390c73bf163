"""Exact computations for Hecke algebras and Whittaker spaces of covering groups.

Submodules
----------
exact      cyclotomic numbers, finite fields, tame symbols, Gauss sums
rootdata   root data, Weyl groups, extended affine Weyl groups
cover      covers (n, Q), sublattices, saturation predicates
orbits     (W, z)-orbits on X_{Q,n} and splitting
wchar      permutation characters, R-groups, Whittaker dimensions
heckemod   Iwahori-Hecke algebra and the Gelfand-Graev module
propp      pro-p Iwahori-Hecke algebra from its presentation
scatter    scattering matrices and the cocycle relation
cli        command-line front end
"""

from .cover import CoverSpec, classify, make_cover
from .exact import ConfigurationError, Cyclo, Fq, gauss_sum, hilbert_symbol
from .orbits import enumerate_orbits, is_splitting
from .rootdata import ResourceError, build_root_datum

__version__ = "0.1.0"

__all__ = [
    "CoverSpec",
    "classify",
    "make_cover",
    "ConfigurationError",
    "Cyclo",
    "Fq",
    "gauss_sum",
    "hilbert_symbol",
    "enumerate_orbits",
    "is_splitting",
    "ResourceError",
    "build_root_datum",
]
