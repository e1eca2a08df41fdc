"""Finite groups as Cayley tables, and maps between them.

Elements are the integers ``0 .. order-1`` with ``0`` the identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Sequence


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None
    _inv: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise GroupError("Cayley table must be square and non-empty")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise GroupError("table entries out of range")
        if self.table[0] != tuple(range(n)) or any(self.table[i][0] != i for i in range(n)):
            raise GroupError("element 0 must be the identity")
        for row in self.table:
            if len(set(row)) != n:
                raise GroupError("table rows must be permutations")
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise GroupError(f"not associative at ({a},{b},{c})")
        inv = tuple(t[a].index(0) for a in range(n))
        object.__setattr__(self, "_inv", inv)
        if self.names is not None and (len(self.names) != n or len(set(self.names)) != n):
            raise GroupError("names must be distinct, one per element")

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = self.table[out][x]
        return out

    def inv(self, a: int) -> int:
        return self._inv[a]

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self._inv[a], -n
        out = 0
        for _ in range(n % self.element_order(a)):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def conj(self, g: int, a: int) -> int:
        """g a g^-1."""
        return self.table[self.table[g][a]][self._inv[g]]

    def is_central(self, a: int) -> bool:
        return all(self.table[a][b] == self.table[b][a] for b in range(self.order))

    def is_abelian(self) -> bool:
        return all(self.is_central(a) for a in range(self.order))

    def name(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def element(self, text: str) -> int:
        text = text.strip()
        if self.names and text in self.names:
            return self.names.index(text)
        try:
            a = int(text)
        except ValueError:
            raise GroupError(f"unknown group element {text!r}") from None
        if not 0 <= a < self.order:
            raise GroupError(f"group element {a} out of range")
        return a

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        gens = list(gens)
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def order_profile(self) -> tuple[int, ...]:
        return tuple(sorted(self.element_order(a) for a in range(self.order)))

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


@dataclass(frozen=True)
class GroupMap:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        s, t = self.source, self.target
        if len(self.images) != s.order or any(not 0 <= x < t.order for x in self.images):
            raise GroupError("image table has the wrong shape")
        im = self.images
        for a in range(s.order):
            for b in range(s.order):
                if im[s.table[a][b]] != t.table[im[a]][im[b]]:
                    raise GroupError(f"not a homomorphism at ({a},{b})")

    def __call__(self, a: int) -> int:
        return self.images[a]

    @property
    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(set(self.images)) == self.source.order

    def then(self, other: GroupMap) -> GroupMap:
        """other ∘ self."""
        if other.source != self.target:
            raise GroupError("maps do not compose")
        return GroupMap(self.source, other.target, tuple(other.images[x] for x in self.images))

    def inverse(self) -> GroupMap:
        if not self.is_bijective:
            raise GroupError("map is not invertible")
        inv = [0] * self.source.order
        for a, b in enumerate(self.images):
            inv[b] = a
        return GroupMap(self.target, self.source, tuple(inv))

    def __str__(self):
        return format_map(self)


def identity_map(g: FiniteGroup) -> GroupMap:
    return GroupMap(g, g, tuple(range(g.order)))


def inner(g: FiniteGroup, h: int) -> GroupMap:
    """ad(h): x -> h x h^-1."""
    return GroupMap(g, g, tuple(g.conj(h, x) for x in range(g.order)))


def inversion(g: FiniteGroup) -> GroupMap:
    return GroupMap(g, g, tuple(g.inv(x) for x in range(g.order)))


@lru_cache(maxsize=4096)
def power(alpha: GroupMap, k: int) -> GroupMap:
    """alpha^k; negative k needs alpha bijective."""
    if alpha.source != alpha.target:
        raise GroupError("only endomorphisms have powers")
    if k < 0:
        return power(alpha.inverse(), -k)
    out = identity_map(alpha.source)
    for _ in range(k):
        out = GroupMap(alpha.source, alpha.source, tuple(alpha.images[x] for x in out.images))
    return out


def center(g: FiniteGroup) -> list[int]:
    return [a for a in range(g.order) if g.is_central(a)]


def greedy_generators(g: FiniteGroup) -> list[int]:
    """A generating set picked greedily, larger element orders first."""
    gens: list[int] = []
    span = frozenset({0})
    for a in sorted(range(g.order), key=lambda a: (-g.element_order(a), a)):
        if a not in span:
            gens.append(a)
            span = g.generated(gens)
        if len(span) == g.order:
            break
    return gens


def _extend(src: FiniteGroup, dst: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]) -> tuple[int, ...] | None:
    image = {0: 0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        fx = image[x]
        for g, h in zip(gens, imgs):
            y = src.table[x][g]
            fy = dst.table[fx][h]
            if y in image:
                if image[y] != fy:
                    return None
            else:
                image[y] = fy
                frontier.append(y)
    return tuple(image[a] for a in range(src.order))


def enumerate_homomorphisms(src: FiniteGroup, dst: FiniteGroup, bijective: bool = False) -> list[GroupMap]:
    """All homomorphisms src -> dst (optionally only isomorphisms), sorted by image tuple."""
    if bijective and (src.order != dst.order or src.order_profile() != dst.order_profile()):
        return []
    gens = greedy_generators(src)
    choices = []
    for g in gens:
        k = src.element_order(g)
        if bijective:
            choices.append([h for h in range(dst.order) if dst.element_order(h) == k])
        else:
            choices.append([h for h in range(dst.order) if k % dst.element_order(h) == 0])
    found = set()
    for imgs in itertools.product(*choices):
        im = _extend(src, dst, gens, imgs)
        if im is None or (bijective and len(set(im)) != dst.order):
            continue
        found.add(im)
    return [GroupMap(src, dst, im) for im in sorted(found)]


def enumerate_isomorphisms(src: FiniteGroup, dst: FiniteGroup) -> list[GroupMap]:
    return enumerate_homomorphisms(src, dst, bijective=True)


def automorphisms(g: FiniteGroup) -> list[GroupMap]:
    return enumerate_isomorphisms(g, g)


def endomorphisms(g: FiniteGroup) -> list[GroupMap]:
    return enumerate_homomorphisms(g, g)


# builders -----------------------------------------------------------------

def from_operation(elements: Sequence, op: Callable, identity, names: Sequence[str] | None = None) -> FiniteGroup:
    elements = list(elements)
    if elements[0] != identity:
        elements.remove(identity)
        elements.insert(0, identity)
    index = {e: i for i, e in enumerate(elements)}
    table = tuple(tuple(index[op(a, b)] for b in elements) for a in elements)
    return FiniteGroup(table, tuple(names) if names else None)


def cyclic(n: int) -> FiniteGroup:
    return from_operation(range(n), lambda a, b: (a + b) % n, 0)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    elems = [(a, b) for a in range(g.order) for b in range(h.order)]
    names = None
    if g.names or h.names:
        names = [f"({g.name(a)},{h.name(b)})" for a, b in elems]
    return from_operation(elems, lambda x, y: (g.mul(x[0], y[0]), h.mul(x[1], y[1])), (0, 0), names)


def _compose_perm(p, q):
    """p∘q on tuples indexed from 0."""
    return tuple(p[i] for i in q)


def permutation_group(gens: Sequence[tuple[int, ...]], names: Callable | None = None) -> FiniteGroup:
    n = len(gens[0])
    e = tuple(range(n))
    elems = [e]
    seen = {e}
    i = 0
    while i < len(elems):
        for g in gens:
            y = _compose_perm(g, elems[i])
            if y not in seen:
                seen.add(y)
                elems.append(y)
        i += 1
    elems = [e] + sorted(elems[1:])
    labels = [names(p) for p in elems] if names else None
    return from_operation(elems, _compose_perm, e, labels)


def cycle_notation(p: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = p[j]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "e"


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return cyclic(1)
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple(range(1, n)) + (0,)
    return permutation_group([swap, cycle], cycle_notation)


def alternating4() -> FiniteGroup:
    return permutation_group([(1, 2, 0, 3), (1, 0, 3, 2)], cycle_notation)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, as permutations of its vertices."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return permutation_group([rot, ref], cycle_notation)


def quaternion() -> FiniteGroup:
    # unit quaternions ±1, ±i, ±j, ±k as (sign, axis) with axis 0 = real part
    mult = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def op(a, b):
        s, ax = mult[a[1], b[1]]
        return (a[0] * b[0] * s, ax)

    elems = [(s, ax) for ax in range(4) for s in (1, -1)]
    label = {0: "1", 1: "i", 2: "j", 3: "k"}
    names = [("" if s == 1 else "-") + label[ax] for s, ax in elems]
    return from_operation(elems, op, (1, 0), names)


BUNDLED: dict[str, Callable[[], FiniteGroup]] = {
    "Z1": lambda: cyclic(1),
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "Z6": lambda: cyclic(6),
    "Z2xZ2": lambda: direct_product(cyclic(2), cyclic(2)),
    "S3": lambda: symmetric(3),
    "D4": lambda: dihedral(4),
    "Q8": quaternion,
    "A4": alternating4,
    "Z12": lambda: cyclic(12),
}

# the corpus used by the classification battery
CORPUS = ("Z2", "Z3", "Z4", "Z6", "Z2xZ2", "S3", "D4")


@lru_cache(maxsize=None)
def bundled(name: str) -> FiniteGroup:
    try:
        return BUNDLED[name]()
    except KeyError:
        raise GroupError(f"no bundled group named {name!r}; choose from {', '.join(BUNDLED)}") from None


# text formats ---------------------------------------------------------------

def parse_group(text: str) -> FiniteGroup:
    """``order N`` line, N table rows, optional ``names ...`` line."""
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("order"):
        raise GroupError("group file must start with 'order N'")
    try:
        n = int(lines[0].split()[1])
        rows = tuple(tuple(int(x) for x in ln.split()) for ln in lines[1:n + 1])
    except (ValueError, IndexError):
        raise GroupError("malformed group file") from None
    if len(rows) != n:
        raise GroupError(f"expected {n} table rows")
    names = None
    rest = lines[n + 1:]
    if rest:
        if not rest[0].startswith("names") or len(rest) > 1:
            raise GroupError("unexpected trailing lines in group file")
        names = tuple(rest[0].split()[1:])
    return FiniteGroup(rows, names)


def format_group(g: FiniteGroup) -> str:
    lines = [f"order {g.order}"]
    lines += [" ".join(map(str, row)) for row in g.table]
    if g.names:
        lines.append("names " + " ".join(g.names))
    return "\n".join(lines) + "\n"


def parse_map(text: str, source: FiniteGroup, target: FiniteGroup | None = None) -> GroupMap:
    words = text.split()
    if not words or words[0] != "map":
        raise GroupError("map must start with 'map'")
    target = target or source
    images = tuple(target.element(w) for w in words[1:])
    return GroupMap(source, target, images)


def format_map(m: GroupMap) -> str:
    return "map " + " ".join(map(str, m.images))


def load_group(text: str) -> FiniteGroup:
    """A bundled group name or a path to a group file."""
    if text in BUNDLED:
        return bundled(text)
    path = Path(text)
    if not path.exists():
        raise GroupError(f"{text!r} is neither a bundled group nor a file")
    return parse_group(path.read_text())


def load_map(text: str, g: FiniteGroup) -> GroupMap:
    """``id``, ``inv``, ``ad:<h>``, ``mul:<k>`` (cyclic groups), inline ``map ...`` or a file path."""
    text = text.strip()
    if text == "id":
        return identity_map(g)
    if text == "inv":
        return inversion(g)
    if text.startswith("ad:"):
        return inner(g, g.element(text[3:]))
    if text.startswith("mul:"):
        if g != cyclic(g.order):
            raise GroupError("mul:<k> needs a bundled cyclic group")
        k = int(text[4:])
        return GroupMap(g, g, tuple(k * a % g.order for a in range(g.order)))
    if text.startswith("map"):
        return parse_map(text, g)
    path = Path(text)
    if path.exists():
        return parse_map(path.read_text(), g)
    raise GroupError(f"cannot read map {text!r}")

