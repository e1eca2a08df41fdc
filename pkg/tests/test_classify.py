from itertools import permutations

import pytest

from thompsonv.classify import IsoDecision, Witness, check_witness, decide_iso, limit_oracle, limit_pair
from thompsonv.finite_group import (
    CORPUS, GroupMap, automorphisms, bundled, endomorphisms, identity_map, inner, inversion, load_map,
)

Z3, Z4, Z6, S3 = (bundled(n) for n in ("Z3", "Z4", "Z6", "S3"))


def brute_iso(p, q):
    """Search every bijection and every h directly."""
    a, b = p.group, q.group
    if a.order != b.order:
        return False
    n = a.order
    for rest in permutations(range(1, n)):
        img = (0,) + rest
        if any(img[a.mul(x, y)] != b.mul(img[x], img[y]) for x in range(n) for y in range(n)):
            continue
        back = {v: i for i, v in enumerate(img)}
        for h in range(n):
            if all(q.auto(y) == b.conj(h, img[p.auto(back[y])]) for y in range(n)):
                return True
    return False


def test_limit_examples():
    lp = limit_pair(Z6, load_map("mul:2", Z6))
    assert lp.elements == (0, 2, 4) and lp.stable_index == 1
    assert lp.auto.images == (0, 2, 1)
    lp = limit_pair(Z4, load_map("mul:2", Z4))
    assert lp.group.order == 1 and lp.stable_index == 2
    for alpha in automorphisms(S3):
        lp = limit_pair(S3, alpha)
        assert lp.stable_index == 0 and lp.auto == alpha


@pytest.mark.parametrize("name", CORPUS)
def test_limit_matches_directed_system(name):
    g = bundled(name)
    for alpha in endomorphisms(g):
        lp = limit_pair(g, alpha)
        classes = limit_oracle(g, alpha, g.order + 1)
        assert len(classes) == lp.group.order
        # each class meets the eventual image exactly once
        assert all(len(c & set(lp.elements)) == 1 for c in classes)


def test_fixed_decisions():
    assert not decide_iso(Z3, identity_map(Z3), Z3, inversion(Z3)).isomorphic
    d = decide_iso(S3, inner(S3, S3.element("(12)")), S3, identity_map(S3))
    assert d.isomorphic and check_witness(d.first, d.second, d.witness)
    assert d.second.group.name(d.witness.h) == "(12)"
    assert decide_iso(Z6, load_map("mul:2", Z6), Z3, inversion(Z3)).isomorphic
    assert not decide_iso(Z4, identity_map(Z4), bundled("Z2xZ2"), identity_map(bundled("Z2xZ2"))).isomorphic
    # both collapse to the trivial group
    assert decide_iso(Z4, load_map("mul:2", Z4), Z3, load_map("mul:0", Z3)).isomorphic


def test_witness_checking():
    d = decide_iso(Z3, identity_map(Z3), Z3, inversion(Z3))
    assert not check_witness(d.first, d.second, Witness(identity_map(Z3), 0))
    d = decide_iso(S3, identity_map(S3), S3, identity_map(S3))
    assert d.witness == Witness(identity_map(S3), 0)
    # precomposing with any automorphism still works once h is adjusted
    for beta in automorphisms(S3):
        h = next(h for h in range(6) if check_witness(d.first, d.second, Witness(beta, h)))
        assert check_witness(d.first, d.second, Witness(beta, h))


def test_decisions_match_brute_force():
    pairs = [(bundled(n), a) for n in ("Z2", "Z3", "Z4", "Z6", "Z2xZ2", "S3") for a in endomorphisms(bundled(n))]
    limits = [limit_pair(g, a) for g, a in pairs]
    for i, (g1, a1) in enumerate(pairs):
        for j in range(i, len(pairs)):
            g2, a2 = pairs[j]
            assert decide_iso(g1, a1, g2, a2).isomorphic == brute_iso(limits[i], limits[j])
