from cayley_isoperimetry.groups.abelian import CyclicGroup, FreeAbelianGroup
from cayley_isoperimetry.groups.base import Element, GroupBackend, invert_word, tokenize
from cayley_isoperimetry.groups.factory import GROUP_TYPES, backend_from_descriptor
from cayley_isoperimetry.groups.finite_table import FiniteTableGroup
from cayley_isoperimetry.groups.free import FreeGroup
from cayley_isoperimetry.groups.free_product import FreeProductCyclicGroup
from cayley_isoperimetry.groups.lamplighter import LamplighterGroup
from cayley_isoperimetry.groups.permutation import PermutationGroup
from cayley_isoperimetry.groups.symmetric_set import (
    SymmetricSet,
    ball,
    ball_layers,
    build_symmetric_set,
    sphere,
    standard_generating_set,
    word_lengths,
)

__all__ = [
    "Element",
    "GroupBackend",
    "FreeGroup",
    "FreeAbelianGroup",
    "CyclicGroup",
    "FiniteTableGroup",
    "PermutationGroup",
    "FreeProductCyclicGroup",
    "LamplighterGroup",
    "SymmetricSet",
    "GROUP_TYPES",
    "backend_from_descriptor",
    "ball",
    "ball_layers",
    "build_symmetric_set",
    "invert_word",
    "sphere",
    "standard_generating_set",
    "tokenize",
    "word_lengths",
]
