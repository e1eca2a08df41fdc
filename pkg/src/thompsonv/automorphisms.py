"""Automorphisms of the untwisted group K ⋊ V and the two isomorphism constructions.

The untwisted group uses the identity as coefficient map, so V only moves
support points.  Conjugating maps f: dyadics -> Γ are represented by
NormalizerMap, a product of pieces each of which has a computable, finite
conjugation defect f·(f∘v^-1)^-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .cocycles import exception_set, mu, p_cocycle
from .dyadic import Dyadic, nu
from .finite_group import FiniteGroup, GroupMap, identity_map, inner, power
from .fraction_group import GElement, KElement, kelement
from .vgroup import IDENTITY, VElement, apply, conjugate, invert, multiply, slope_at


class AutomorphismError(ValueError):
    pass


def in_y(x: Dyadic) -> bool:
    """Membership in the set of points (4k+1)/2^n."""
    return x.num % 4 == 1


def chi_y_defect(v: VElement) -> list[Dyadic]:
    """Points y with [y in Y] != [v^-1 y in Y].

    On a domain piece of v only the left endpoint and the midpoint can change
    membership: deeper points keep their numerator mod 4 under the affine map.
    """
    out = set()
    for d, r in v.pairs.items():
        for tail in ("", "1"):
            x = Dyadic.from_word(d + tail)
            y = Dyadic.from_word(r + tail)
            if in_y(x) != in_y(y):
                out.add(y)
    return sorted(out)


def chi_y_defect_scan(v: VElement, max_exp: int = 12) -> list[Dyadic]:
    from .dyadic import dyadics_up_to

    vi = invert(v)
    return [y for y in dyadics_up_to(max_exp) if in_y(y) != in_y(apply(vi, y))]


@dataclass(frozen=True)
class NormalizerMap:
    """x -> const · finite(x) · prod zeta^[phi^-1 x in Y] · prod zeta^mu_phi(x).

    ``indicators`` and ``slopes`` hold (zeta, phi) pairs with zeta central;
    indicator zetas have order at most two.
    """

    group: FiniteGroup = field(compare=False, repr=False)
    const: int = 0
    finite: KElement | None = None
    indicators: tuple[tuple[int, VElement], ...] = ()
    slopes: tuple[tuple[int, VElement], ...] = ()

    def __post_init__(self):
        g = self.group
        if self.finite is None:
            object.__setattr__(self, "finite", kelement(g))
        for z, _ in self.indicators:
            if not g.is_central(z) or g.mul(z, z) != 0:
                raise AutomorphismError("indicator parts need a central element of order <= 2")
        for z, _ in self.slopes:
            if not g.is_central(z):
                raise AutomorphismError("slope parts need a central element")

    def __call__(self, x: Dyadic) -> int:
        g = self.group
        out = g.mul(self.const, self.finite(x))
        for z, phi in self.indicators:
            if in_y(apply(invert(phi), x)):
                out = g.mul(out, z)
        for z, phi in self.slopes:
            out = g.mul(out, g.power(z, mu(phi, x)))
        return out

    def inverse(self) -> NormalizerMap:
        g = self.group
        ci = g.inv(self.const)
        fin = kelement(g, {x: g.conj(self.const, g.inv(a)) for x, a in self.finite.values})
        return NormalizerMap(g, ci, fin, self.indicators,
                             tuple((g.inv(z), phi) for z, phi in self.slopes))

    def defect_candidates(self, v: VElement) -> set[Dyadic]:
        pts = set(self.finite.support)
        pts.update(apply(v, x) for x in self.finite.support)
        for _, phi in self.indicators:
            u = conjugate(invert(phi), v)
            pts.update(apply(phi, y) for y in chi_y_defect(u))
        for _, phi in self.slopes:
            u = conjugate(invert(phi), v)
            pts.update(p_cocycle(v))
            pts.update(apply(phi, y) for y in p_cocycle(u))
        return pts

    def defect(self, v: VElement) -> KElement:
        """f·(f∘v^-1)^-1, which is finitely supported."""
        g = self.group
        vi = invert(v)
        out = {y: g.mul(self(y), g.inv(self(apply(vi, y)))) for y in self.defect_candidates(v)}
        return kelement(g, out)


def normalizer_from_k(a: KElement) -> NormalizerMap:
    return NormalizerMap(a.group, 0, a)


def constant(group: FiniteGroup, g: int) -> NormalizerMap:
    return NormalizerMap(group, g)


def parse_normalizer(text: str, group: FiniteGroup) -> NormalizerMap:
    """Factors joined by '*': ``const:g``, ``finite:x=g;...``, ``chiY:zeta``."""
    from .fraction_group import parse_k

    const, fin, ind = 0, kelement(group), []
    for part in text.split("*"):
        part = part.strip()
        if not part:
            continue
        kind, _, body = part.partition(":")
        if kind == "const":
            const = group.mul(const, group.element(body))
        elif kind == "finite":
            fin = fin * parse_k(body, group)
        elif kind == "chiY":
            ind.append((group.element(body), IDENTITY))
        else:
            raise AutomorphismError(f"unknown normalizer factor {part!r}")
    return NormalizerMap(group, const, fin, tuple(ind))


def _k_from_ints(group: FiniteGroup, zeta: int, ints: dict[Dyadic, int]) -> KElement:
    return kelement(group, {x: group.power(zeta, n) for x, n in ints.items()})


def e_apply(zeta: int, g: GElement) -> GElement:
    """a v -> a · zeta^p_v · v."""
    group = g.k.group
    if not group.is_central(zeta):
        raise AutomorphismError("zeta must be central")
    return GElement(g.k * _k_from_ints(group, zeta, p_cocycle(g.v)), g.v)


def ad_apply(f: NormalizerMap, g: GElement) -> GElement:
    """Conjugation by f in the untwisted group: (f a f^-1) · f(f∘v^-1)^-1 · v."""
    group = f.group
    conj = kelement(group, {x: group.conj(f(x), a) for x, a in g.k.values})
    return GElement(conj * f.defect(g.v), g.v)


def a_apply(phi: VElement, beta: GroupMap, g: GElement) -> GElement:
    """a v -> beta(a∘phi^-1) · phi v phi^-1."""
    k = kelement(beta.target, {apply(phi, x): beta(a) for x, a in g.k.values})
    return GElement(k, conjugate(phi, g.v))


@dataclass(frozen=True)
class AutTuple:
    zeta: int
    f: NormalizerMap
    phi: VElement
    beta: GroupMap


def xi_apply(t: AutTuple, g: GElement) -> GElement:
    """E_zeta ∘ ad(f) ∘ A_{phi,beta}."""
    return e_apply(t.zeta, ad_apply(t.f, a_apply(t.phi, t.beta, g)))


def a_inverse(phi: VElement, beta: GroupMap) -> tuple[VElement, GroupMap]:
    return invert(phi), beta.inverse()


def sigma_act(phi: VElement, beta: GroupMap, zeta: int, f: NormalizerMap) -> tuple[int, NormalizerMap]:
    """The pair (zeta', f') with A∘E_zeta∘ad(f)∘A^-1 = E_zeta'∘ad(f')."""
    from .cocycles import gamma_closed_form

    g = f.group
    pi = invert(phi)
    const = beta(f.const)
    fin = kelement(g, {apply(phi, x): beta(a) for x, a in f.finite.values})
    indicators = tuple((beta(z), multiply(phi, psi)) for z, psi in f.indicators)
    slopes = []
    for z, psi in f.slopes:
        # mu_psi∘phi^-1 = mu_{phi psi} - mu_phi + gamma_psi(phi^-1 0)
        bz = beta(z)
        slopes += [(bz, multiply(phi, psi)), (g.inv(bz), phi)]
        const = g.mul(const, g.power(bz, gamma_closed_form(psi, apply(pi, Dyadic(0, 0)))))
    slopes.append((beta(zeta), phi))
    return beta(zeta), NormalizerMap(g, const, fin, indicators, tuple(slopes))


# isomorphisms between groups with different coefficient maps -----------------

def isomone_alpha(alpha: GroupMap, beta: GroupMap) -> GroupMap:
    """beta alpha beta^-1."""
    return beta.inverse().then(alpha).then(beta)


def isomone_apply(beta: GroupMap, g: GElement) -> GElement:
    return GElement(g.k.map_values(beta), g.v)


def isomtwo_alpha(alpha: GroupMap, k: int) -> GroupMap:
    """ad(k) ∘ alpha."""
    return alpha.then(inner(alpha.source, k))


@lru_cache(maxsize=None)
def _k_table(alpha: GroupMap, k: int, n: int) -> int:
    g = alpha.source
    if n == 0:
        return 0
    if n > 0:
        return g.mul(_k_table(alpha, k, n - 1), power(alpha, n - 1)(k))
    m = -n - 1
    return g.mul(_k_table(alpha, k, -m), power(alpha, -(m + 1))(g.inv(k)))


def k_family(alpha: GroupMap, k: int, n: int) -> int:
    """k_0 = e, k_{n+1} = k_n α^n(k), k_{-(m+1)} = k_{-m} α^{-(m+1)}(k^-1)."""
    return _k_table(alpha, k, n)


def isomtwo_defect_at(alpha: GroupMap, k: int, v: VElement, x: Dyadic) -> int:
    """(f c_v π̃_v(f^-1))(v x) evaluated from its definition."""
    g = alpha.source
    tilde = isomtwo_alpha(alpha, k)
    n = slope_at(v, x)
    y = apply(v, x)
    fy = k_family(alpha, k, nu(y))
    cv = g.inv(k_family(alpha, k, n))
    moved = power(tilde, n)(g.inv(k_family(alpha, k, nu(x))))
    return g.prod(fy, cv, moved)


def isomtwo_apply(alpha: GroupMap, k: int, g: GElement) -> GElement:
    """The isomorphism from the (Γ, α) group to the (Γ, ad(k)∘α) group."""
    group = alpha.source
    conj = kelement(group, {x: group.conj(k_family(alpha, k, nu(x)), a) for x, a in g.k.values})
    defect = kelement(group, {apply(g.v, x): isomtwo_defect_at(alpha, k, g.v, x)
                              for x in exception_set(g.v)})
    return GElement(conj * defect, g.v)


def kernel_tuple(group: FiniteGroup, g: int) -> AutTuple:
    """(e, constant g, id, ad(g^-1)), which acts trivially."""
    return AutTuple(0, constant(group, g), IDENTITY, inner(group, group.inv(g)))


def identity_tuple(group: FiniteGroup) -> AutTuple:
    return AutTuple(0, constant(group, 0), IDENTITY, identity_map(group))
