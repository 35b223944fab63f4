"""Decision procedures and certified evaluators for elementary equivalence
of commutative C*-algebras, ordinal interval algebras, and Boolean algebras
at finite scale."""

__version__ = "0.1.0"
