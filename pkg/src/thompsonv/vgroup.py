"""Thompson's group V as reduced tree pairs with a leaf bijection.

An element is kept as a map from the leaf words of its domain tree to the
leaf words of its range tree; it acts on Cantor space by prefix replacement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .dyadic import ZERO, Dyadic
from .forest import Tree, TRIVIAL


class VError(ValueError):
    pass


def _reduce_pairs(pairs: dict[str, str]) -> dict[str, str]:
    pairs = dict(pairs)
    pending = [d for d in pairs if d.endswith("0")]
    while pending:
        d = pending.pop()
        if d not in pairs:
            continue
        parent = d[:-1]
        sib = parent + "1"
        r = pairs[d]
        if sib in pairs and r.endswith("0") and pairs[sib] == r[:-1] + "1":
            del pairs[d], pairs[sib]
            pairs[parent] = r[:-1]
            if parent.endswith("0"):
                pending.append(parent)
            elif parent:
                pending.append(parent[:-1] + "0")
    return pairs


@dataclass(frozen=True)
class VElement:
    """Leaf i of ``domain`` goes to leaf ``perm[i-1]`` of ``range``; always reduced."""

    domain: Tree
    range: Tree
    perm: tuple[int, ...]
    pairs: dict[str, str] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.domain.leaf_count
        if self.range.leaf_count != n or len(self.perm) != n:
            raise VError(f"leaf counts differ: {self.domain.code}, {self.range.code}, {len(self.perm)}")
        if sorted(self.perm) != list(range(1, n + 1)):
            raise VError(f"not a permutation of 1..{n}: {self.perm}")
        raw = dict(zip(self.domain.leaves, (self.range.leaves[p - 1] for p in self.perm)))
        red = _reduce_pairs(raw)
        if len(red) != len(raw):
            dom, ran, perm = _triple(red)
            object.__setattr__(self, "domain", dom)
            object.__setattr__(self, "range", ran)
            object.__setattr__(self, "perm", perm)
            raw = red
        object.__setattr__(self, "pairs", raw)

    @property
    def leaf_count(self) -> int:
        return len(self.perm)

    def __str__(self):
        return format_v(self)

    def __mul__(self, other: VElement) -> VElement:
        return multiply(self, other)


def _triple(pairs: Mapping[str, str]) -> tuple[Tree, Tree, tuple[int, ...]]:
    dom = sorted(pairs)
    ran = sorted(pairs.values())
    index = {w: i + 1 for i, w in enumerate(ran)}
    return Tree.from_leaves(dom), Tree.from_leaves(ran), tuple(index[pairs[d]] for d in dom)


def from_pairs(pairs: Mapping[str, str]) -> VElement:
    """Element sending each domain word's interval onto the paired range word's."""
    if len(set(pairs.values())) != len(pairs):
        raise VError("range words repeat")
    return VElement(*_triple(_reduce_pairs(dict(pairs))))


def reduce(domain: Tree, range: Tree, perm: Iterable[int]) -> VElement:
    return VElement(domain, range, tuple(perm))


IDENTITY = VElement(TRIVIAL, TRIVIAL, (1,))


def multiply(v: VElement, w: VElement) -> VElement:
    """The composite v∘w (w acts first)."""
    out = {}
    vp = v.pairs
    for d, r in w.pairs.items():
        for d2, r2 in vp.items():
            if d2.startswith(r):
                out[d + d2[len(r):]] = r2
            elif r.startswith(d2):
                out[d] = r2 + r[len(d2):]
    return from_pairs(out)


def invert(v: VElement) -> VElement:
    return from_pairs({r: d for d, r in v.pairs.items()})


def conjugate(phi: VElement, v: VElement) -> VElement:
    """phi v phi^-1."""
    return multiply(multiply(phi, v), invert(phi))


def _piece(v: VElement, x: Dyadic) -> tuple[str, str]:
    for d, r in v.pairs.items():
        if x.in_word(d):
            return d, r
    raise AssertionError("domain words do not cover Cantor space")


def apply(v: VElement, x: Dyadic) -> Dyadic:
    d, r = _piece(v, x)
    return Dyadic.from_word(r + x.word[len(d):])


def slope_at(v: VElement, x: Dyadic) -> int:
    """log2 of the right-hand slope of v at x."""
    d, r = _piece(v, x)
    return len(d) - len(r)


def pairs_on(v: VElement, words: Iterable[str]) -> dict[str, str]:
    """Restate v on a refinement of its domain partition."""
    out = {}
    for u in words:
        for d, r in v.pairs.items():
            if u.startswith(d):
                out[u] = r + u[len(d):]
                break
        else:
            raise VError(f"word {u!r} is not below a domain leaf")
    return out


def classify(v: VElement) -> str:
    """'F', 'T\\F' or 'V\\T'."""
    n = len(v.perm)
    shifts = {(p - 1 - i) % n for i, p in enumerate(v.perm)}
    if shifts == {0}:
        return "F"
    if len(shifts) == 1:
        return "T\\F"
    return "V\\T"


def complete_code(words: Iterable[str]) -> list[str]:
    """Smallest complete prefix code containing the given pairwise incomparable words."""
    words = set(words)
    inner = {w[:i] for w in words for i in range(len(w))}
    out = set(words)
    for a in inner:
        for c in (a + "0", a + "1"):
            if c not in inner:
                out.add(c)
    return sorted(out)


def find_in_stabilizer(x: Dyadic, s: int) -> VElement:
    """An element fixing x with log2-slope s there, supported on the interval of x's word."""
    if s == 0:
        return IDENTITY
    p = x.word
    k = abs(s)
    # p0 shrinks onto p0^(k+1); the rest of p is redistributed in order
    lo = sorted([p + "0"] + _left_comb(p + "1", k))
    hi = sorted(_left_comb(p, k + 1))
    pieces = dict(zip(lo, hi)) if s < 0 else dict(zip(hi, lo))
    for w in complete_code([p]):
        if w != p:
            pieces[w] = w
    return from_pairs(pieces)


def _left_comb(p: str, m: int) -> list[str]:
    """Split the interval of p into m+1 pieces by repeatedly halving the left part."""
    out = [p + "0" * m]
    for i in range(m):
        out.append(p + "0" * i + "1")
    return out


def find_transitive(x: Dyadic, y: Dyadic) -> VElement:
    """An element sending x to y: swap two equal-length intervals starting at x and y."""
    if x == y:
        return IDENTITY
    # distinct words of equal length are incomparable
    n = max(len(x.word), len(y.word))
    p, q = x.padded(n), y.padded(n)
    pieces = {w: w for w in complete_code([p, q])}
    pieces[p], pieces[q] = q, p
    return from_pairs(pieces)


def parse_v(text: str) -> VElement:
    try:
        dom, ran, perm = text.strip().split(":")
        return VElement(Tree(dom.strip()), Tree(ran.strip()), tuple(int(p) for p in perm.split(",")))
    except (ValueError, TypeError) as exc:
        raise VError(f"cannot parse V element {text!r}: {exc}") from None


def format_v(v: VElement) -> str:
    return f"{v.domain.code}:{v.range.code}:{','.join(map(str, v.perm))}"


@dataclass(frozen=True)
class SlopeFunction:
    """Integer labels on the intervals of a standard dyadic partition."""

    pieces: tuple[tuple[str, int], ...]

    def __post_init__(self):
        merged = dict(self.pieces)
        Tree.from_leaves(merged)  # validates the partition
        changed = True
        while changed:
            changed = False
            for w in list(merged):
                if w.endswith("0") and w in merged:
                    sib = w[:-1] + "1"
                    if merged.get(sib) == merged[w]:
                        merged[w[:-1]] = merged.pop(w)
                        del merged[sib]
                        changed = True
        object.__setattr__(self, "pieces", tuple(sorted(merged.items())))

    def __call__(self, x: Dyadic) -> int:
        for w, lab in self.pieces:
            if x.in_word(w):
                return lab
        raise AssertionError

    def __add__(self, other: SlopeFunction) -> SlopeFunction:
        a, b = dict(self.pieces), dict(other.pieces)
        out = {}
        for w in a:
            for u in b:
                if u.startswith(w):
                    out[u] = a[w] + b[u]
                elif w.startswith(u):
                    out[w] = a[w] + b[u]
        return SlopeFunction(tuple(out.items()))

    def __neg__(self) -> SlopeFunction:
        return SlopeFunction(tuple((w, -lab) for w, lab in self.pieces))

    def __sub__(self, other: SlopeFunction) -> SlopeFunction:
        return self + (-other)

    def compose(self, u: VElement) -> SlopeFunction:
        """The function x -> self(u(x))."""
        out = {}
        for d, r in u.pairs.items():
            for p, lab in self.pieces:
                if p.startswith(r):
                    out[d + p[len(r):]] = lab
                elif r.startswith(p):
                    out[d] = lab
        return SlopeFunction(tuple(out.items()))


def slope_function(v: VElement) -> SlopeFunction:
    return SlopeFunction(tuple((d, len(d) - len(r)) for d, r in v.pairs.items()))


def ell_function(v: VElement) -> SlopeFunction:
    """x -> log2 v'(v^-1 x), labelled on the range partition."""
    return SlopeFunction(tuple((r, len(d) - len(r)) for d, r in v.pairs.items()))


def left_endpoints(v: VElement) -> list[Dyadic]:
    return [Dyadic.from_word(d) for d in sorted(v.pairs)]


__all__ = [
    "IDENTITY", "ZERO", "SlopeFunction", "VElement", "VError", "apply", "classify",
    "conjugate", "ell_function", "find_in_stabilizer", "find_transitive", "format_v",
    "from_pairs", "invert", "multiply", "pairs_on", "parse_v", "reduce", "slope_at",
    "slope_function",
]
