import pytest

from thompsonv.dyadic import ZERO, Dyadic, parse_dyadic
from thompsonv.finite_group import GroupMap, bundled, identity_map, inner, inversion
from thompsonv.forest import Forest, Tree, compose_forests, forest
from thompsonv.fraction_group import (
    DecoratedMorphism, FractionError, GElement, TreeRep, cphi_compose, decoration_morphism, embed_k,
    embed_v, format_g, fraction_multiply, fraction_to_semidirect, g_identity, g_invert, g_multiply,
    jones_act, kelement, parse_g, parse_k, plain, refine_rep, theta_inverse, theta_t,
)
from thompsonv.sampling import (
    random_decorated_tree, random_forest, random_g, random_k, random_perm, random_rep, random_v, rng_for,
)
from thompsonv.vgroup import IDENTITY, VElement, invert, parse_v

Z4, S3 = bundled("Z4"), bundled("S3")
X0 = parse_v("10100:11000:1,2,3")
SWAP = parse_v("100:100:2,1")


def k(group, text):
    return parse_k(text, group)


def test_kelement_normal_form():
    a = kelement(Z4, {Dyadic(1, 1): 2, ZERO: 0})
    assert a.support == (Dyadic(1, 1),)
    assert a * a == kelement(Z4)
    assert (a * k(Z4, "0=1")).as_dict() == {ZERO: 1, Dyadic(1, 1): 2}
    with pytest.raises(FractionError):
        kelement(Z4, {ZERO: 7})


def test_jones_action_examples():
    g = S3.element("(12)")
    assert jones_act(identity_map(S3), SWAP, kelement(S3, {parse_dyadic("1/4"): g})) == kelement(
        S3, {parse_dyadic("3/4"): g})
    assert jones_act(inversion(Z4), invert(X0), k(Z4, "0=1")) == k(Z4, "0=3")
    a = random_k(rng_for(1, "k"), Z4)
    assert jones_act(inversion(Z4), IDENTITY, a) == a


def test_jones_action_is_an_action():
    alpha = inner(S3, S3.element("(12)"))
    for seed in range(200):
        rng = rng_for(seed, "action")
        v, w, a = random_v(rng), random_v(rng), random_k(rng, S3)
        from thompsonv.vgroup import multiply
        assert jones_act(alpha, multiply(v, w), a) == jones_act(alpha, v, jones_act(alpha, w, a))


def test_semidirect_group_law():
    alpha = inner(S3, S3.element("(12)"))
    e = g_identity(S3)
    for seed in range(300):
        rng = rng_for(seed, "glaw")
        a, b, c = (random_g(rng, S3) for _ in range(3))
        assert g_multiply(alpha, g_multiply(alpha, a, b), c) == g_multiply(alpha, a, g_multiply(alpha, b, c))
        assert g_multiply(alpha, a, g_invert(alpha, a)) == e
        assert g_multiply(alpha, e, a) == a
    p, q = k(Z4, "0=1;1/2^1=2"), k(Z4, "0=3;3/2^2=1")
    assert g_multiply(inversion(Z4), embed_k(p), embed_k(q)) == embed_k(p * q)
    assert g_multiply(inversion(Z4), embed_v(Z4, X0), embed_v(Z4, SWAP)).v == X0 * SWAP


def test_g_format_round_trip():
    g = GElement(k(S3, "0=(12);1/2^2=(123)"), X0)
    assert parse_g(format_g(g), S3) == g
    assert parse_g("10100:11000:1,2,3", S3) == embed_v(S3, X0)


def test_theta_examples():
    alpha = inversion(Z4)
    assert theta_t(alpha, TreeRep(Tree("10100"), (1, 1, 2))) == k(Z4, "0=3;1/2^1=1;3/2^2=2")
    idm = identity_map(S3)
    rep = TreeRep(Tree("11000"), (1, 2, 3))
    assert theta_t(idm, rep).as_dict() == {ZERO: 1, Dyadic(1, 2): 2, Dyadic(1, 1): 3}
    assert theta_inverse(alpha, kelement(Z4)) == TreeRep(Tree("0"), (0,))
    assert theta_inverse(alpha, k(Z4, "0=2")) == TreeRep(Tree("0"), (2,))


def test_theta_round_trip_and_refinement():
    for seed in range(200):
        rng = rng_for(seed, "theta")
        alpha = [inversion(Z4), inner(S3, S3.element("(12)"))][seed % 2]
        a = random_k(rng, alpha.source, max_exp=7)
        assert theta_t(alpha, theta_inverse(alpha, a)) == a
        # restating on a finer tree does not change the element
        rep = random_rep(rng, alpha.source)
        f = random_forest(rng, rep.tree.leaf_count, rep.tree.leaf_count + 4)
        fine = compose_forests(f, Forest((rep.tree,))).trees[0]
        vals = refine_rep(alpha, rep, fine.leaves)
        assert theta_t(alpha, TreeRep(fine, tuple(vals[w] for w in fine.leaves))) == theta_t(alpha, rep)


def test_decorated_composition_example():
    a0, a1 = inner(S3, S3.element("(12)")), inner(S3, S3.element("(123)"))
    g1, g2 = S3.element("(12)"), S3.element("(13)")
    h = (S3.element("(23)"), S3.element("(123)"), S3.element("(132)"))
    top = DecoratedMorphism(forest(["0", "100"]), (1, 2, 3), h)
    bottom = DecoratedMorphism(forest(["100"]), (2, 1), (g1, g2))
    out = cphi_compose(top, bottom, a0, a1)
    assert out.forest == forest(["11000"])
    assert out.perm == (2, 3, 1)
    assert out.decorations == (S3.mul(h[0], g1), S3.mul(h[1], a0(g2)), S3.mul(h[2], a1(g2)))


def test_decorated_composition_identity_and_associativity():
    a0 = inversion(Z4)
    a1 = GroupMap(Z4, Z4, (0, 0, 0, 0))
    for seed in range(200):
        rng = rng_for(seed, "cphi")
        n = rng.randint(1, 3)
        f3 = random_forest(rng, n, n + 3)
        f2 = random_forest(rng, f3.leaf_count, f3.leaf_count + 3)
        f1 = random_forest(rng, f2.leaf_count, f2.leaf_count + 3)
        ms = [DecoratedMorphism(f, random_perm(rng, f.leaf_count),
                                tuple(rng.randrange(4) for _ in range(f.leaf_count))) for f in (f1, f2, f3)]
        left = cphi_compose(cphi_compose(ms[0], ms[1], a0, a1), ms[2], a0, a1)
        right = cphi_compose(ms[0], cphi_compose(ms[1], ms[2], a0, a1), a0, a1)
        assert left == right
        m = ms[2]
        assert cphi_compose(decoration_morphism((0,) * m.forest.leaf_count), m, a0, a1) == m
        assert cphi_compose(m, decoration_morphism((0,) * m.forest.roots), a0, a1) == m


def test_fractions_to_semidirect():
    alpha = inversion(Z4)
    t, s = forest(["10100"]), forest(["11000"])
    assert fraction_to_semidirect(plain(t), plain(s), alpha) == GElement(kelement(Z4), VElement(
        s.trees[0], t.trees[0], (1, 2, 3)))
    for seed in range(100):
        num = random_decorated_tree(rng_for(seed, "frac"), Z4, 4)
        assert fraction_to_semidirect(num, num, alpha) == g_identity(Z4)


@pytest.mark.parametrize("alpha", [inversion(Z4), identity_map(S3), inner(S3, S3.element("(12)"))],
                         ids=["Z4-inv", "S3-id", "S3-ad"])
def test_fraction_product_transports(alpha):
    group = alpha.source
    for seed in range(200):
        rng = rng_for(seed, "transport")
        n1, n2 = rng.randint(1, 5), rng.randint(1, 5)
        x = (random_decorated_tree(rng, group, n1), random_decorated_tree(rng, group, n1))
        y = (random_decorated_tree(rng, group, n2), random_decorated_tree(rng, group, n2))
        lhs = fraction_to_semidirect(*fraction_multiply(x, y, alpha), alpha)
        rhs = g_multiply(alpha, fraction_to_semidirect(*x, alpha), fraction_to_semidirect(*y, alpha))
        assert lhs == rhs
