"""Seeded invariant battery behind ``thompsonv verify``.

Each trial draws from its own stream derived from (seed, suite, trial index),
so results do not depend on how trials are scheduled.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from . import automorphisms as aut
from . import cocycles as coc
from .classify import check_witness, decide_iso
from .dyadic import ZERO
from .finite_group import CORPUS, automorphisms, bundled, center, endomorphisms, identity_map, inner, inversion
from .forest import (
    compose_forests, compose_generators, decompose_into_generators, format_forest, tensor_forests,
)
from .fraction_group import (
    fraction_multiply, fraction_to_semidirect, g_multiply, jones_act, jones_act_on_trees, theta_t,
)
from .sampling import (
    random_decorated_tree, random_dyadic, random_forest, random_g, random_rep, random_v, rng_for,
)
from .vgroup import IDENTITY, apply, ell_function, format_v, invert, multiply, slope_at


@dataclass
class VerifyReport:
    suite: str
    seed: int
    trials: int
    failures: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures


def _forest_trial(rng):
    f3 = random_forest(rng, rng.randint(1, 3), 6)
    f2 = random_forest(rng, f3.leaf_count, 8)
    f1 = random_forest(rng, f2.leaf_count, 12)
    g2 = random_forest(rng, rng.randint(1, 3), 5)
    g1 = random_forest(rng, g2.leaf_count, 8)
    inputs = {"forests": [format_forest(f) for f in (f1, f2, f3, g1, g2)]}
    if compose_forests(compose_forests(f1, f2), f3) != compose_forests(f1, compose_forests(f2, f3)):
        return "composition not associative", inputs
    if compose_generators(decompose_into_generators(f1), f1.roots) != f1:
        return "generator decomposition does not recompose", inputs
    if compose_forests(tensor_forests(f1, g1), tensor_forests(f2, g2)) != tensor_forests(
            compose_forests(f1, f2), compose_forests(g1, g2)):
        return "tensor does not commute with composition", inputs
    return None


def _v_trial(rng):
    u, v, w = (random_v(rng, 10) for _ in range(3))
    inputs = {"u": format_v(u), "v": format_v(v), "w": format_v(w)}
    if multiply(multiply(u, v), w) != multiply(u, multiply(v, w)):
        return "multiplication not associative", inputs
    if multiply(v, invert(v)) != IDENTITY:
        return "inverse fails", inputs
    vw = multiply(v, w)
    for _ in range(5):
        x = random_dyadic(rng, 10)
        if apply(vw, x) != apply(v, apply(w, x)):
            return f"product disagrees with composition at {x}", inputs
        if slope_at(vw, x) != slope_at(v, apply(w, x)) + slope_at(w, x):
            return f"chain rule fails at {x}", inputs
    if ell_function(vw) != ell_function(v) + ell_function(w).compose(invert(v)):
        return "ell is not a cocycle", inputs
    return None


def _cocycle_trial(rng):
    v, w, phi, psi = (random_v(rng, 7) for _ in range(4))
    inputs = {"v": format_v(v), "w": format_v(w), "phi": format_v(phi), "psi": format_v(psi)}
    if coc.p_cocycle(multiply(v, w)) != coc.add_shifted(coc.p_cocycle(v), coc.p_cocycle(w), v):
        return "p is not a cocycle", inputs
    if sum(coc.p_cocycle(v).values()) != 0:
        return "p does not sum to zero", inputs
    x = random_dyadic(rng, 6)
    inputs["x"] = str(x)
    if coc.gamma(phi, x) != coc.gamma_closed_form(phi, x):
        return "gamma disagrees with its closed form", inputs
    law = coc.gamma(phi, x) + coc.gamma(psi, apply(invert(phi), x)) - coc.gamma(psi, apply(invert(phi), ZERO))
    if coc.gamma(multiply(phi, psi), x) != law:
        return "gamma composition law fails", inputs
    return None


_PAIRS = [("Z4", "id"), ("Z4", "inv"), ("S3", "id"), ("S3", "ad")]


def _alpha(name, kind):
    g = bundled(name)
    return {"id": identity_map, "inv": inversion, "ad": lambda g: inner(g, g.element("(12)"))}[kind](g)


def _fraction_trial(rng):
    name, kind = rng.choice(_PAIRS)
    alpha = _alpha(name, kind)
    group = alpha.source
    rep, v = random_rep(rng, group), random_v(rng, 6)
    inputs = {"group": name, "alpha": kind, "tree": rep.tree.code, "values": list(rep.values), "v": format_v(v)}
    if theta_t(alpha, jones_act_on_trees(alpha, v, rep)) != jones_act(alpha, v, theta_t(alpha, rep)):
        return "wreath action disagrees with the tree action", inputs
    n1, n2 = rng.randint(1, 5), rng.randint(1, 5)
    g1 = (random_decorated_tree(rng, group, n1), random_decorated_tree(rng, group, n1))
    g2 = (random_decorated_tree(rng, group, n2), random_decorated_tree(rng, group, n2))
    lhs = fraction_to_semidirect(*fraction_multiply(g1, g2, alpha), alpha)
    rhs = g_multiply(alpha, fraction_to_semidirect(*g1, alpha), fraction_to_semidirect(*g2, alpha))
    if lhs != rhs:
        inputs["fractions"] = repr((g1, g2))
        return "fraction product does not match the semidirect product", inputs
    return None


def _aut_trial(rng):
    name = rng.choice(["Z4", "S3", "D4", "Z2xZ2"])
    group = bundled(name)
    idm = identity_map(group)
    z = center(group)
    a, b = random_g(rng, group), random_g(rng, group)
    inputs = {"group": name, "a": str(a), "b": str(b)}
    zeta = rng.choice(z)
    if aut.e_apply(zeta, g_multiply(idm, a, b)) != g_multiply(idm, aut.e_apply(zeta, a), aut.e_apply(zeta, b)):
        return "E_zeta is not multiplicative", inputs
    h = rng.randrange(group.order)
    if aut.xi_apply(aut.kernel_tuple(group, h), a) != a:
        return f"kernel tuple for {h} moves a", inputs
    phi, beta = random_v(rng, 5), rng.choice(automorphisms(group))
    order2 = [c for c in z if c and group.mul(c, c) == 0]
    ind = ((rng.choice(order2), IDENTITY),) if order2 and rng.random() < 0.5 else ()
    f = aut.NormalizerMap(group, rng.randrange(group.order), random_g(rng, group).k, ind)
    pi, bi = aut.a_inverse(phi, beta)
    lhs = aut.a_apply(phi, beta, aut.e_apply(zeta, aut.ad_apply(f, aut.a_apply(pi, bi, a))))
    z2, f2 = aut.sigma_act(phi, beta, zeta, f)
    if lhs != aut.xi_apply(aut.AutTuple(z2, f2, IDENTITY, idm), a):
        inputs.update(phi=format_v(phi), beta=str(beta))
        return "sigma does not intertwine", inputs
    k = rng.randrange(group.order)
    tilde = aut.isomtwo_alpha(idm, k)
    if aut.isomtwo_apply(idm, k, g_multiply(idm, a, b)) != g_multiply(
            tilde, aut.isomtwo_apply(idm, k, a), aut.isomtwo_apply(idm, k, b)):
        return f"twist by {k} is not multiplicative", inputs
    return None


def _classify_trial(rng):
    n1, n2 = rng.choice(CORPUS), rng.choice(CORPUS)
    g1, g2 = bundled(n1), bundled(n2)
    a1, a2 = rng.choice(endomorphisms(g1)), rng.choice(endomorphisms(g2))
    inputs = {"g1": n1, "a1": str(a1), "g2": n2, "a2": str(a2)}
    d, back = decide_iso(g1, a1, g2, a2), decide_iso(g2, a2, g1, a1)
    if d.isomorphic != back.isomorphic:
        return "decision is not symmetric", inputs
    if d.isomorphic and not check_witness(d.first, d.second, d.witness):
        return "witness does not verify", inputs
    if not decide_iso(g1, a1, g1, a1).isomorphic:
        return "decision is not reflexive", inputs
    return None


SUITES: dict[str, Callable] = {
    "forest": _forest_trial,
    "v": _v_trial,
    "cocycle": _cocycle_trial,
    "fraction": _fraction_trial,
    "aut": _aut_trial,
    "classify": _classify_trial,
}


def run_suite(suite: str, seed: int, trials: int) -> VerifyReport:
    names = list(SUITES) if suite == "all" else [suite]
    for n in names:
        if n not in SUITES:
            raise ValueError(f"unknown suite {n!r}; choose from all, {', '.join(SUITES)}")
    report = VerifyReport(suite, seed, trials)
    start = time.perf_counter()
    for n in names:
        for i in range(trials):
            result = SUITES[n](rng_for(seed, n, i))
            if result is not None:
                message, inputs = result
                report.failures.append({"suite": n, "trial": i, "seed": seed, "message": message, "inputs": inputs})
    report.wall_time = time.perf_counter() - start
    return report
