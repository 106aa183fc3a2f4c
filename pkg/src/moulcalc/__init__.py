"""Exact mould calculus.

Moulds are functions on words with exact rational values. The package
provides their algebra (product, composition, derivations), the shuffle
symmetries, a catalog of named moulds, normal forms of prepared local
fields and diffeomorphisms, and arborification.
"""

from .errors import MouldError
from .mould import Alphabet, Mould

__version__ = "0.1.0"
__all__ = ["Alphabet", "Mould", "MouldError", "__version__"]
