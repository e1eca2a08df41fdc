"""Exact computations in Thompson's group V and the groups K ⋊ V built from finite coefficient pairs."""

from .dyadic import Dyadic, nu, parse_dyadic
from .finite_group import FiniteGroup, GroupMap, bundled
from .forest import Forest, Tree
from .fraction_group import GElement, KElement
from .vgroup import VElement, parse_v

__all__ = [
    "Dyadic", "FiniteGroup", "Forest", "GElement", "GroupMap", "KElement", "Tree", "VElement",
    "bundled", "nu", "parse_dyadic", "parse_v",
]
