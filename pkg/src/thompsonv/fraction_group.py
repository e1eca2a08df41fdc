"""The groups K ⋊ V built from a coefficient pair (Γ, α).

K is the group of finitely supported maps from dyadics to Γ.  V acts on K by
moving support points and twisting values by α raised to the log-slope.
A second, purely tree-based description of the same action is kept as an
oracle, together with the category of decorated forests whose fraction
group maps onto K ⋊ V.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .dyadic import Dyadic, parse_dyadic
from .finite_group import FiniteGroup, GroupError, GroupMap, power
from .forest import Forest, Tree, common_refinement, compose_forests, forest_between, identity_forest
from .vgroup import IDENTITY, VElement, apply, format_v, invert, multiply, pairs_on, parse_v, slope_at


class FractionError(ValueError):
    pass


@dataclass(frozen=True)
class KElement:
    """Finitely supported map from dyadics to a finite group; identity values are dropped."""

    group: FiniteGroup = field(compare=False, repr=False)
    values: tuple[tuple[Dyadic, int], ...]

    def __post_init__(self):
        vals = dict(self.values)
        if len(vals) != len(self.values):
            raise FractionError("support point repeated")
        if any(not 0 <= g < self.group.order for g in vals.values()):
            raise FractionError("value outside the group")
        object.__setattr__(self, "values", tuple(sorted((x, g) for x, g in vals.items() if g != 0)))

    def __call__(self, x: Dyadic) -> int:
        for y, g in self.values:
            if y == x:
                return g
        return 0

    @property
    def support(self) -> tuple[Dyadic, ...]:
        return tuple(x for x, _ in self.values)

    def as_dict(self) -> dict[Dyadic, int]:
        return dict(self.values)

    def __mul__(self, other: KElement) -> KElement:
        g = self.group
        out = self.as_dict()
        for x, b in other.values:
            out[x] = g.mul(out.get(x, 0), b)
        return KElement(g, tuple(out.items()))

    def inverse(self) -> KElement:
        return KElement(self.group, tuple((x, self.group.inv(g)) for x, g in self.values))

    def map_values(self, beta: GroupMap) -> KElement:
        return KElement(beta.target, tuple((x, beta(g)) for x, g in self.values))

    def __str__(self):
        return format_k(self)


def kelement(group: FiniteGroup, values: Mapping[Dyadic, int] | Iterable[tuple[Dyadic, int]] = ()) -> KElement:
    items = values.items() if isinstance(values, Mapping) else values
    return KElement(group, tuple(items))


def format_k(a: KElement) -> str:
    return ";".join(f"{x}={a.group.name(g)}" for x, g in a.values)


def parse_k(text: str, group: FiniteGroup) -> KElement:
    out = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise FractionError(f"expected point=value, got {part!r}")
        x, g = part.split("=", 1)
        point = parse_dyadic(x)
        if point in out:
            raise FractionError(f"support point {x} repeated")
        out[point] = group.element(g)
    return kelement(group, out)


@dataclass(frozen=True)
class GElement:
    """The product a·v with a in K and v in V."""

    k: KElement
    v: VElement

    def __str__(self):
        return format_g(self)


def format_g(g: GElement) -> str:
    return f"{format_k(g.k)} * {format_v(g.v)}".strip()


def parse_g(text: str, group: FiniteGroup) -> GElement:
    if "*" in text:
        k, v = text.split("*", 1)
    else:
        k, v = "", text
    return GElement(parse_k(k, group), parse_v(v))


def g_identity(group: FiniteGroup) -> GElement:
    return GElement(kelement(group), IDENTITY)


def jones_act(alpha: GroupMap, v: VElement, a: KElement) -> KElement:
    """π_v(a): the value a(x) moves to v(x), twisted by α^(log2 v'(x))."""
    out = []
    for x, g in a.values:
        out.append((apply(v, x), power(alpha, slope_at(v, x))(g)))
    return KElement(a.group, tuple(out))


def g_multiply(alpha: GroupMap, g1: GElement, g2: GElement) -> GElement:
    return GElement(g1.k * jones_act(alpha, g1.v, g2.k), multiply(g1.v, g2.v))


def g_invert(alpha: GroupMap, g: GElement) -> GElement:
    vi = invert(g.v)
    return GElement(jones_act(alpha, vi, g.k.inverse()), vi)


def embed_k(a: KElement) -> GElement:
    return GElement(a, IDENTITY)


def embed_v(group: FiniteGroup, v: VElement) -> GElement:
    return GElement(kelement(group), v)


# trees decorated by group elements -------------------------------------------

@dataclass(frozen=True)
class TreeRep:
    """An element of Γ^(leaves of tree), i.e. a representative in the direct limit."""

    tree: Tree
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.tree.leaf_count:
            raise FractionError("one value per leaf required")


def theta_t(alpha: GroupMap, rep: TreeRep) -> KElement:
    """Leaf at depth N contributes α^-N of its value at the leaf's left endpoint."""
    out = []
    for w, g in zip(rep.tree.leaves, rep.values):
        out.append((Dyadic.from_word(w), power(alpha, -len(w))(g)))
    return KElement(alpha.source, tuple(out))


def theta_inverse(alpha: GroupMap, a: KElement) -> TreeRep:
    """The smallest tree whose leaf left endpoints cover the support of a."""
    leaves = {""}
    for x in a.support:
        while True:
            w = next(u for u in leaves if x.in_word(u))
            if Dyadic.from_word(w) == x:
                break
            leaves.remove(w)
            leaves.update((w + "0", w + "1"))
    tree = Tree.from_leaves(leaves)
    vals = tuple(power(alpha, len(w))(a(Dyadic.from_word(w))) for w in tree.leaves)
    return TreeRep(tree, vals)


def refine_rep(alpha: GroupMap, rep: TreeRep, words: Sequence[str]) -> dict[str, int]:
    """Restate rep on a finer partition: a split puts α(g) on the left child and e on the right."""
    out = {}
    for u in words:
        for w, g in zip(rep.tree.leaves, rep.values):
            if u.startswith(w):
                tail = u[len(w):]
                out[u] = power(alpha, len(tail))(g) if "1" not in tail else 0
                break
        else:
            raise FractionError(f"{u!r} does not refine the representative")
    return out


def jones_act_on_trees(alpha: GroupMap, v: VElement, rep: TreeRep) -> TreeRep:
    """The same action computed by refining trees until v is adapted, then relabelling leaves."""
    fine = common_refinement(rep.tree.leaves, v.domain.leaves)
    vals = refine_rep(alpha, rep, fine)
    moved = pairs_on(v, fine)
    image = {moved[u]: g for u, g in vals.items()}
    tree = Tree.from_leaves(image)
    return TreeRep(tree, tuple(image[w] for w in tree.leaves))


# decorated forests -----------------------------------------------------------

@dataclass(frozen=True)
class DecoratedMorphism:
    """decorations ∘ permutation ∘ forest.

    ``perm[k-1]`` is the top position reached by the strand leaving leaf k;
    ``decorations[i-1]`` sits at top position i.
    """

    forest: Forest
    perm: tuple[int, ...]
    decorations: tuple[int, ...]

    def __post_init__(self):
        m = self.forest.leaf_count
        if sorted(self.perm) != list(range(1, m + 1)) or len(self.decorations) != m:
            raise FractionError("permutation and decorations must match the leaf count")


def plain(f: Forest) -> DecoratedMorphism:
    m = f.leaf_count
    return DecoratedMorphism(f, tuple(range(1, m + 1)), (0,) * m)


def permutation_morphism(perm: Sequence[int]) -> DecoratedMorphism:
    return DecoratedMorphism(identity_forest(len(perm)), tuple(perm), (0,) * len(perm))


def decoration_morphism(decorations: Sequence[int]) -> DecoratedMorphism:
    n = len(decorations)
    return DecoratedMorphism(identity_forest(n), tuple(range(1, n + 1)), tuple(decorations))


def _push_through_tree(tree: Tree, g: int, alpha0: GroupMap, alpha1: GroupMap) -> list[int]:
    out = []
    for w in tree.leaves:
        x = g
        for bit in w:
            x = (alpha0 if bit == "0" else alpha1)(x)
        out.append(x)
    return out


def cphi_compose(top: DecoratedMorphism, bottom: DecoratedMorphism,
                 alpha0: GroupMap, alpha1: GroupMap) -> DecoratedMorphism:
    """Stack ``top`` on ``bottom`` and rewrite into decorations ∘ permutation ∘ forest."""
    f2, s2, h = top.forest, top.perm, top.decorations
    f1, s1, g = bottom.forest, bottom.perm, bottom.decorations
    if f2.roots != len(s1):
        raise FractionError(f"cannot stack {f2.roots} roots on {len(s1)} strands")
    group = alpha0.source
    # decorations climb through the trees of the top forest
    pushed = []
    for tree, gi in zip(f2.trees, g):
        pushed += _push_through_tree(tree, gi, alpha0, alpha1)
    # trees of the top forest slide down the strands of the bottom permutation
    starts, acc = [], 0
    for tree in f2.trees:
        starts.append(acc)
        acc += tree.leaf_count
    slid = [f2.trees[s1[k] - 1] for k in range(len(s1))]
    cabled = []
    for k in range(len(s1)):
        base = starts[s1[k] - 1]
        cabled += [base + o + 1 for o in range(slid[k].leaf_count)]
    # decorations climb through the top permutation
    moved = [0] * len(s2)
    for i, d in enumerate(pushed):
        moved[s2[i] - 1] = d
    decorations = tuple(group.mul(a, b) for a, b in zip(h, moved))
    perm = tuple(s2[c - 1] for c in cabled)
    return DecoratedMorphism(compose_forests(Forest(tuple(slid)), f1), perm, decorations)


def _single_tree(m: DecoratedMorphism) -> Tree:
    if m.forest.roots != 1:
        raise FractionError("fractions are formed from morphisms out of one root")
    return m.forest.trees[0]


def fraction_to_semidirect(num: DecoratedMorphism, den: DecoratedMorphism, alpha: GroupMap) -> GElement:
    """The element of K ⋊ V represented by the fraction num/den (right-hand map trivial)."""
    t, s = _single_tree(num), _single_tree(den)
    n = t.leaf_count
    if s.leaf_count != n:
        raise FractionError("numerator and denominator must end at the same object")
    group = alpha.source
    tau, g = num.perm, num.decorations
    sigma, h = den.perm, den.decorations
    tau_inv = [0] * n
    for k, p in enumerate(tau):
        tau_inv[p - 1] = k + 1
    hp = tuple(group.mul(group.inv(g[tau[j] - 1]), h[tau[j] - 1]) for j in range(n))
    sp = tuple(tau_inv[sigma[k] - 1] for k in range(n))
    a = theta_t(alpha, TreeRep(t, hp))
    return GElement(a, VElement(s, t, sp))


def fraction_multiply(first: tuple[DecoratedMorphism, DecoratedMorphism],
                      second: tuple[DecoratedMorphism, DecoratedMorphism],
                      alpha: GroupMap) -> tuple[DecoratedMorphism, DecoratedMorphism]:
    """(t1/d1)·(t2/d2) computed inside the decorated-forest category."""
    trivial = GroupMap(alpha.source, alpha.source, (0,) * alpha.source.order)
    t1, d1 = _normalise(*first, alpha, trivial)
    t2, d2 = _normalise(*second, alpha, trivial)
    s1, tree2 = _single_tree(d1), _single_tree(t2)
    common = Tree.from_leaves(common_refinement(s1.leaves, tree2.leaves))
    lift1, lift2 = forest_between(s1, common), forest_between(tree2, common)
    group = alpha.source
    undo_perm = [0] * len(d1.perm)
    for k, p in enumerate(d1.perm):
        undo_perm[p - 1] = k + 1
    undo = cphi_compose(permutation_morphism(undo_perm),
                        decoration_morphism([group.inv(x) for x in d1.decorations]), alpha, trivial)
    p = cphi_compose(plain(lift1), undo, alpha, trivial)
    num = cphi_compose(p, t1, alpha, trivial)
    den = cphi_compose(plain(lift2), d2, alpha, trivial)
    return num, den


def _normalise(num, den, alpha, trivial):
    """Rewrite num/den with a plain tree on top."""
    group = alpha.source
    n = len(num.perm)
    inv_perm = [0] * n
    for k, p in enumerate(num.perm):
        inv_perm[p - 1] = k + 1
    undo = cphi_compose(permutation_morphism(inv_perm),
                        decoration_morphism([group.inv(x) for x in num.decorations]), alpha, trivial)
    return plain(num.forest), cphi_compose(undo, den, alpha, trivial)
