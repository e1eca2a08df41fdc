"""Valuation-corrected slope cocycles on V and their classification.

Functions here return finitely supported integer maps as plain dicts keyed by
Dyadic, with zero entries omitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .dyadic import ZERO, Dyadic, dyadics_up_to, nu
from .finite_group import FiniteGroup
from .vgroup import (
    VElement, apply, find_in_stabilizer, find_transitive, invert, multiply, slope_at,
)


class CocycleError(ValueError):
    pass


def p_cocycle(v: VElement) -> dict[Dyadic, int]:
    """x -> log2 v'(v^-1 x) - nu(x) + nu(v^-1 x).

    Away from the left endpoints of v's domain pieces the slope exactly
    balances the change of valuation, so only their images can carry mass.
    """
    out = {}
    for d, r in v.pairs.items():
        x, y = Dyadic.from_word(d), Dyadic.from_word(r)
        val = len(d) - len(r) - nu(y) + nu(x)
        if val:
            out[y] = val
    return dict(sorted(out.items()))


def p_value(v: VElement, y: Dyadic) -> int:
    """p_v at a single point, straight from the definition."""
    x = apply(invert(v), y)
    return slope_at(v, x) - nu(y) + nu(x)


def p_cocycle_scan(v: VElement, max_exp: int = 12) -> dict[Dyadic, int]:
    """Brute-force p_v over every dyadic with exponent <= max_exp (test oracle)."""
    vi = invert(v)
    out = {}
    for y in dyadics_up_to(max_exp):
        x = apply(vi, y)
        val = slope_at(v, x) - nu(y) + nu(x)
        if val:
            out[y] = val
    return out


def exception_set(v: VElement) -> list[Dyadic]:
    """Points x where log2 v'(x) differs from nu(vx) - nu(x)."""
    out = []
    for d, r in v.pairs.items():
        x, y = Dyadic.from_word(d), Dyadic.from_word(r)
        if len(d) - len(r) != nu(y) - nu(x):
            out.append(x)
    return sorted(out)


def exception_set_scan(v: VElement, max_exp: int = 12) -> list[Dyadic]:
    return [x for x in dyadics_up_to(max_exp) if slope_at(v, x) != nu(apply(v, x)) - nu(x)]


def add_shifted(p: dict[Dyadic, int], q: dict[Dyadic, int], v: VElement) -> dict[Dyadic, int]:
    """p + q∘v^-1."""
    out = dict(p)
    for x, n in q.items():
        y = apply(v, x)
        out[y] = out.get(y, 0) + n
    return dict(sorted((k, n) for k, n in out.items() if n))


def ell(v: VElement, x: Dyadic) -> int:
    """log2 v'(v^-1 x)."""
    return slope_at(v, apply(invert(v), x))


# cocycles valued in a finite abelian group ------------------------------------

# c(v, x) is the value of c_v at the point x
Cocycle = Callable[[VElement, Dyadic], int]


def slope_cocycle(group: FiniteGroup, zeta: int) -> Cocycle:
    return lambda v, x: group.power(zeta, ell(v, x))


def coboundary(group: FiniteGroup, f: Callable[[Dyadic], int]) -> Cocycle:
    """v -> f·(f∘v^-1)^-1."""
    return lambda v, x: group.mul(f(x), group.inv(f(apply(invert(v), x))))


def rebuild_cocycle(group: FiniteGroup, zeta: int, f: Callable[[Dyadic], int]) -> Cocycle:
    """c_v = s(zeta)_v · f · (f∘v^-1)^-1."""
    s, b = slope_cocycle(group, zeta), coboundary(group, f)
    return lambda v, x: group.mul(s(v, x), b(v, x))


def cocycle_defect(group: FiniteGroup, c: Cocycle, v: VElement, w: VElement, points: Iterable[Dyadic]) -> list[Dyadic]:
    """Points where c_{vw} != c_v · c_w∘v^-1."""
    vw, vi = multiply(v, w), invert(v)
    return [x for x in points if c(vw, x) != group.mul(c(v, x), c(w, apply(vi, x)))]


@dataclass(frozen=True)
class Decomposition:
    group: FiniteGroup
    zeta: int
    f: Callable[[Dyadic], int]

    def rebuild(self) -> Cocycle:
        return rebuild_cocycle(self.group, self.zeta, self.f)


def decompose_cocycle(group: FiniteGroup, c: Cocycle,
                      check: Iterable[tuple[VElement, Dyadic]] = ()) -> Decomposition:
    """Split a cocycle into a slope part and a coboundary, normalised so f(0) = e.

    ``check`` lists (v, x) probes at which the reconstruction is compared
    with ``c``; a mismatch means c is not of the expected form.
    """
    if not group.is_abelian():
        raise CocycleError("cocycle classification needs an abelian coefficient group")
    zeta = c(find_in_stabilizer(ZERO, 1), ZERO)
    s = slope_cocycle(group, zeta)

    def f(x: Dyadic) -> int:
        w = find_transitive(ZERO, x)
        return group.mul(c(w, x), group.inv(s(w, x)))

    out = Decomposition(group, zeta, f)
    rebuilt = out.rebuild()
    for v, x in check:
        if rebuilt(v, x) != c(v, x):
            raise CocycleError(f"cocycle is not slope·coboundary at v={v}, x={x}")
    return out


# the correction terms attached to a conjugating element -----------------------

def gamma(phi: VElement, x: Dyadic, v: VElement | None = None) -> int:
    """log2 of (phi^-1 v phi)' at phi^-1(0), minus log2 v'(0), for any v with v(0) = x."""
    if v is None:
        v = find_transitive(ZERO, x)
    if apply(v, ZERO) != x:
        raise CocycleError("the witness must send 0 to x")
    pi = invert(phi)
    u = multiply(pi, multiply(v, phi))
    return slope_at(u, apply(pi, ZERO)) - slope_at(v, ZERO)


def gamma_closed_form(phi: VElement, x: Dyadic) -> int:
    pi = invert(phi)
    return slope_at(phi, apply(pi, ZERO)) - slope_at(phi, apply(pi, x))


def mu(phi: VElement, x: Dyadic) -> int:
    """gamma_phi(x) - nu(phi^-1 x) + nu(x)."""
    return gamma_closed_form(phi, x) - nu(apply(invert(phi), x)) + nu(x)
