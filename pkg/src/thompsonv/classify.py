"""Deciding isomorphism of the groups built from two finite coefficient pairs.

Two pairs give isomorphic groups exactly when their limit pairs are related
by some isomorphism beta and inner twist: alpha~ = ad(h)∘beta∘alpha∘beta^-1.
For a finite group the limit pair is the eventual image of alpha with alpha
restricted to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .finite_group import FiniteGroup, GroupMap, enumerate_isomorphisms, from_operation, inner


@dataclass(frozen=True)
class LimitPair:
    group: FiniteGroup
    auto: GroupMap
    stable_index: int
    elements: tuple[int, ...]  # original labels of the limit group's elements


def limit_pair(group: FiniteGroup, alpha: GroupMap) -> LimitPair:
    image = frozenset(range(group.order))
    n = 0
    while True:
        nxt = frozenset(alpha(x) for x in image)
        if nxt == image:
            break
        image, n = nxt, n + 1
    elems = sorted(image)
    sub = from_operation(elems, group.mul, 0, [group.name(x) for x in elems] if group.names else None)
    index = {x: i for i, x in enumerate(elems)}
    auto = GroupMap(sub, sub, tuple(index[alpha(x)] for x in elems))
    return LimitPair(sub, auto, n, tuple(elems))


def limit_oracle(group: FiniteGroup, alpha: GroupMap, depth: int) -> list[frozenset[int]]:
    """Classes of level-0 elements in the directed system cut off at ``depth``.

    Union-find over pairs (g, n), n <= depth, glued along (g, n) ~ (alpha g, n+1).
    """
    parent = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for n in range(depth):
        for g in range(group.order):
            ra, rb = find((g, n)), find((alpha(g), n + 1))
            if ra != rb:
                parent[ra] = rb
    classes: dict = {}
    for g in range(group.order):
        classes.setdefault(find((g, 0)), set()).add(g)
    return sorted((frozenset(c) for c in classes.values()), key=min)


@dataclass(frozen=True)
class Witness:
    beta: GroupMap
    h: int


@dataclass(frozen=True)
class IsoDecision:
    isomorphic: bool
    witness: Witness | None
    first: LimitPair
    second: LimitPair


@lru_cache(maxsize=None)
def _inner_index(group: FiniteGroup) -> dict[tuple[int, ...], int]:
    """Each inner automorphism's image tuple, mapped to its smallest conjugator."""
    out: dict[tuple[int, ...], int] = {}
    for h in range(group.order):
        out.setdefault(inner(group, h).images, h)
    return out


@lru_cache(maxsize=None)
def _isos(a: FiniteGroup, b: FiniteGroup) -> tuple[GroupMap, ...]:
    return tuple(enumerate_isomorphisms(a, b))


def _search(p: LimitPair, q: LimitPair) -> Witness | None:
    target = q.auto
    inner_of = _inner_index(q.group)
    for beta in _isos(p.group, q.group):
        conj = beta.inverse().then(p.auto).then(beta)
        # need target = ad(h)∘conj, i.e. target∘conj^-1 inner
        h = inner_of.get(conj.inverse().then(target).images)
        if h is not None:
            return Witness(beta, h)
    return None


def decide_iso(group1: FiniteGroup, alpha1: GroupMap, group2: FiniteGroup, alpha2: GroupMap) -> IsoDecision:
    p, q = limit_pair(group1, alpha1), limit_pair(group2, alpha2)
    w = _search(p, q)
    return IsoDecision(w is not None, w, p, q)


def check_witness(p: LimitPair, q: LimitPair, w: Witness) -> bool:
    """alpha~ = ad(h)∘beta∘alpha∘beta^-1 on the limit groups."""
    b, g = w.beta, q.group
    if b.source != p.group or b.target != g or not b.is_bijective:
        return False
    bi = b.inverse()
    return all(q.auto(y) == g.conj(w.h, b(p.auto(bi(y)))) for y in range(g.order))
