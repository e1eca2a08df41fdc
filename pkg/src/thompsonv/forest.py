"""Binary forests, their composition, and standard dyadic partitions.

A tree is stored by its preorder code: ``1`` marks an internal vertex and
``0`` a leaf.  Leaves are addressed by binary words (``0`` = left edge).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .dyadic import Dyadic


class ForestError(ValueError):
    pass


def _check_code(code: str) -> None:
    if not code or set(code) - {"0", "1"}:
        raise ForestError(f"tree code must be a non-empty word over 0/1: {code!r}")
    c = 1
    for i, ch in enumerate(code):
        if c <= 0:
            raise ForestError(f"tree code {code!r} closes early at position {i}")
        c += 1 if ch == "1" else -1
    if c != 0:
        raise ForestError(f"tree code {code!r} is incomplete")


@dataclass(frozen=True)
class Tree:
    code: str

    def __post_init__(self):
        _check_code(self.code)

    @cached_property
    def leaves(self) -> tuple[str, ...]:
        """Leaf addresses, left to right."""
        out = []
        stack = [""]
        for ch in self.code:
            addr = stack.pop()
            if ch == "1":
                stack.append(addr + "1")
                stack.append(addr + "0")
            else:
                out.append(addr)
        return tuple(out)

    @property
    def leaf_count(self) -> int:
        return len(self.code) // 2 + 1

    @property
    def depths(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.leaves)

    @classmethod
    def from_leaves(cls, words: Iterable[str]) -> Tree:
        """Build the tree whose leaf addresses are exactly ``words``."""
        words = set(words)
        if not words:
            raise ForestError("a tree needs at least one leaf")
        longest = max(len(w) for w in words)
        parts = []

        def build(prefix: str) -> None:
            if prefix in words:
                parts.append("0")
                return
            if len(prefix) >= longest:
                raise ForestError(f"leaf words do not form a complete prefix code: {sorted(words)}")
            parts.append("1")
            build(prefix + "0")
            build(prefix + "1")

        build("")
        tree = cls("".join(parts))
        if len(tree.leaves) != len(words):
            raise ForestError(f"leaf words do not form a complete prefix code: {sorted(words)}")
        return tree

    def __str__(self):
        return self.code


TRIVIAL = Tree("0")
CARET = Tree("100")


@dataclass(frozen=True)
class Forest:
    trees: tuple[Tree, ...]

    @property
    def roots(self) -> int:
        return len(self.trees)

    @property
    def leaf_count(self) -> int:
        return sum(t.leaf_count for t in self.trees)

    def __str__(self):
        return format_forest(self)


def forest(codes: Sequence[str] | str) -> Forest:
    """Convenience constructor from a list of codes or a comma-joined string."""
    if isinstance(codes, str):
        return parse_forest(codes)
    return Forest(tuple(Tree(c) for c in codes))


def parse_tree(text: str) -> Tree:
    return Tree(text.strip())


def format_tree(tree: Tree) -> str:
    return tree.code


def parse_forest(text: str) -> Forest:
    text = text.strip()
    if not text:
        return Forest(())
    return Forest(tuple(Tree(c.strip()) for c in text.split(",")))


def format_forest(f: Forest) -> str:
    return ",".join(t.code for t in f.trees)


def identity_forest(n: int) -> Forest:
    return Forest((TRIVIAL,) * n)


def make_generator(j: int, n: int) -> Forest:
    """The forest with n roots whose j-th tree (1-based) is a single caret."""
    if not 1 <= j <= n:
        raise ForestError(f"generator index {j} out of range for {n} roots")
    trees = [TRIVIAL] * n
    trees[j - 1] = CARET
    return Forest(tuple(trees))


def compose_forests(top: Forest, bottom: Forest) -> Forest:
    """Graft tree i of ``top`` onto leaf i of ``bottom``."""
    if top.roots != bottom.leaf_count:
        raise ForestError(f"cannot stack {top.roots} roots on {bottom.leaf_count} leaves")
    grafts = iter(top.trees)
    out = []
    for tree in bottom.trees:
        # in preorder each leaf symbol can be replaced by a whole subtree
        out.append(Tree("".join(next(grafts).code if ch == "0" else ch for ch in tree.code)))
    return Forest(tuple(out))


def tensor_forests(left: Forest, right: Forest) -> Forest:
    return Forest(left.trees + right.trees)


def decompose_into_generators(f: Forest) -> list[tuple[int, int]]:
    """Write ``f`` as a stack of generators; returns (j, n) pairs from the bottom up."""
    steps = []
    trees = list(f.trees)
    while True:
        for j, t in enumerate(trees):
            if t.code != "0":
                break
        else:
            return steps
        steps.append((j + 1, len(trees)))
        left = Tree.from_leaves(w[1:] for w in t.leaves if w[0] == "0")
        right = Tree.from_leaves(w[1:] for w in t.leaves if w[0] == "1")
        trees[j:j + 1] = [left, right]


def compose_generators(steps: Sequence[tuple[int, int]], roots: int) -> Forest:
    out = identity_forest(roots)
    for j, n in steps:
        if n != out.leaf_count:
            raise ForestError("generator sequence does not chain")
        out = compose_forests(make_generator(j, n), out)
    return out


@dataclass(frozen=True)
class Sdi:
    """Standard dyadic interval addressed by a binary word."""

    word: str

    @property
    def left(self) -> Dyadic:
        return Dyadic.from_word(self.word)

    @property
    def width(self) -> Fraction:
        return Fraction(1, 1 << len(self.word))

    def contains(self, x: Dyadic) -> bool:
        return x.in_word(self.word)

    def __str__(self):
        lo = self.left.fraction
        return f"[{lo},{lo + self.width})"


Sdp = tuple[Sdi, ...]


def tree_to_sdp(t: Tree) -> Sdp:
    return tuple(Sdi(w) for w in t.leaves)


def refines(fine: Sdp, coarse: Sdp) -> bool:
    """Every interval of ``coarse`` is a union of intervals of ``fine``."""
    return all(any(f.word.startswith(c.word) for c in coarse) for f in fine) and all(
        any(f.word.startswith(c.word) for f in fine) for c in coarse
    )


def common_refinement(a: Iterable[str], b: Iterable[str]) -> list[str]:
    """Leaf words of the least common refinement of two complete prefix codes."""
    a, b = list(a), list(b)
    out = [x for x in a if not any(y.startswith(x) and y != x for y in b)]
    out += [y for y in b if not any(x.startswith(y) for x in a)]
    return sorted(out)


def forest_between(coarse: Tree, fine: Tree) -> Forest:
    """The forest f with compose(f, coarse) == fine."""
    fine_leaves = fine.leaves
    trees = []
    for w in coarse.leaves:
        below = [u[len(w):] for u in fine_leaves if u.startswith(w)]
        if not below:
            raise ForestError(f"{fine.code} does not refine {coarse.code}")
        trees.append(Tree.from_leaves(below))
    out = Forest(tuple(trees))
    if compose_forests(out, Forest((coarse,))).trees[0] != fine:
        raise ForestError(f"{fine.code} does not refine {coarse.code}")
    return out
