"""Split octonion algebras over small finite fields, their subalgebra
geometry, and the Hermitian unital of order 3 built inside them."""

__version__ = "0.1.0"
