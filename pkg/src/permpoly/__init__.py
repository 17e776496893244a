"""Permutation trinomials over GF(q^3), their compositional inverses, and
the finite-field machinery needed to check them exhaustively."""

from .gf import (
    FieldElement,
    FieldSpec,
    enumerate_elements,
    fe_add,
    fe_inv,
    fe_mul,
    fe_neg,
    fe_pow,
    field,
    find_generator,
    find_irreducible,
    is_in_subfield,
    set_modulus_cache,
)
from .gfarray import FieldArray
from .tower import TowerParams, tower_make

__version__ = "0.1.0"

__all__ = [
    "FieldArray",
    "FieldElement",
    "FieldSpec",
    "TowerParams",
    "enumerate_elements",
    "fe_add",
    "fe_inv",
    "fe_mul",
    "fe_neg",
    "fe_pow",
    "field",
    "find_generator",
    "find_irreducible",
    "is_in_subfield",
    "set_modulus_cache",
    "tower_make",
]
