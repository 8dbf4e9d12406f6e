"""Structure constants, the algebra catalog and derivations."""

from nilricci.algebra.catalog import CATALOG, CatalogEntry, StructureConstants, catalog, get_entry, parse_algebra_id
from nilricci.algebra.derivations import DerivationSpace, derivation_space, is_derivation
from nilricci.algebra.structure import ad, bracket, change_basis, jacobi_defect, lower_central_series

__all__ = [
    "CATALOG",
    "CatalogEntry",
    "StructureConstants",
    "catalog",
    "get_entry",
    "parse_algebra_id",
    "DerivationSpace",
    "derivation_space",
    "is_derivation",
    "ad",
    "bracket",
    "change_basis",
    "jacobi_defect",
    "lower_central_series",
]
