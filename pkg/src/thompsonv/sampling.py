"""Seeded random generators for trees, group elements and the like."""

from __future__ import annotations

import random

from .dyadic import Dyadic
from .finite_group import FiniteGroup
from .forest import Forest, Tree
from .fraction_group import DecoratedMorphism, GElement, KElement, TreeRep
from .vgroup import VElement


def rng_for(seed: int, *labels) -> random.Random:
    """An independent stream for (seed, labels...); string seeds hash deterministically."""
    return random.Random(":".join(map(str, (seed,) + labels)))


def random_tree(rng: random.Random, leaves: int) -> Tree:
    words = [""]
    for _ in range(leaves - 1):
        w = words.pop(rng.randrange(len(words)))
        words += [w + "0", w + "1"]
    return Tree.from_leaves(words)


def random_forest(rng: random.Random, roots: int, max_leaves: int) -> Forest:
    extra = rng.randint(0, max(0, max_leaves - roots))
    sizes = [1] * roots
    for _ in range(extra):
        sizes[rng.randrange(roots)] += 1
    return Forest(tuple(random_tree(rng, k) for k in sizes))


def random_perm(rng: random.Random, n: int) -> tuple[int, ...]:
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return tuple(p)


def random_v(rng: random.Random, max_leaves: int = 8, kind: str = "V") -> VElement:
    n = rng.randint(1, max_leaves)
    dom, ran = random_tree(rng, n), random_tree(rng, n)
    if kind == "F":
        perm = tuple(range(1, n + 1))
    elif kind == "T":
        c = rng.randrange(n)
        perm = tuple((i + c) % n + 1 for i in range(n))
    else:
        perm = random_perm(rng, n)
    return VElement(dom, ran, perm)


def random_dyadic(rng: random.Random, max_exp: int = 8) -> Dyadic:
    b = rng.randint(0, max_exp)
    return Dyadic.make(rng.randrange(1 << b), b)


def random_k(rng: random.Random, group: FiniteGroup, max_support: int = 4, max_exp: int = 6) -> KElement:
    vals = {}
    for _ in range(rng.randint(0, max_support)):
        vals[random_dyadic(rng, max_exp)] = rng.randrange(group.order)
    return KElement(group, tuple(vals.items()))


def random_g(rng: random.Random, group: FiniteGroup, max_leaves: int = 7, max_support: int = 4) -> GElement:
    return GElement(random_k(rng, group, max_support), random_v(rng, max_leaves))


def random_rep(rng: random.Random, group: FiniteGroup, max_leaves: int = 6) -> TreeRep:
    t = random_tree(rng, rng.randint(1, max_leaves))
    return TreeRep(t, tuple(rng.randrange(group.order) for _ in range(t.leaf_count)))


def random_decorated_tree(rng: random.Random, group: FiniteGroup, leaves: int) -> DecoratedMorphism:
    t = random_tree(rng, leaves)
    return DecoratedMorphism(Forest((t,)), random_perm(rng, leaves),
                             tuple(rng.randrange(group.order) for _ in range(leaves)))
