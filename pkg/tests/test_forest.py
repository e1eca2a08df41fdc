import pytest

from thompsonv.forest import (
    Forest, ForestError, Sdi, Tree, common_refinement, compose_forests, compose_generators,
    decompose_into_generators, forest, forest_between, format_forest, identity_forest, make_generator,
    parse_forest, parse_tree, refines, tensor_forests, tree_to_sdp,
)
from thompsonv.sampling import random_forest, random_tree, rng_for


def test_tree_validation():
    assert parse_tree("10100").leaf_count == 3
    assert parse_tree("10100").leaves == ("0", "10", "11")
    assert parse_tree("11000").leaves == ("00", "01", "1")
    for bad in ("11", "1000", "", "0102", "01"):
        with pytest.raises(ForestError):
            parse_tree(bad)


def test_from_leaves_inverts_leaves():
    for seed in range(50):
        t = random_tree(rng_for(seed, "tree"), 1 + seed % 9)
        assert Tree.from_leaves(t.leaves) == t
    with pytest.raises(ForestError):
        Tree.from_leaves(["0", "10"])


def test_generators():
    assert make_generator(1, 1) == forest(["100"])
    assert make_generator(2, 3) == forest(["0", "100", "0"])
    with pytest.raises(ForestError):
        make_generator(4, 3)
    with pytest.raises(ForestError):
        make_generator(0, 2)


def test_compose_grafts_onto_the_matching_leaf():
    # the caret lands on the first leaf of the bottom caret
    assert compose_forests(forest(["100", "0"]), forest(["100"])) == forest(["11000"])
    assert compose_forests(forest(["0", "100"]), forest(["100"])) == forest(["10100"])
    f = forest(["10100", "100"])
    assert compose_forests(identity_forest(5), f) == f
    assert compose_forests(f, identity_forest(2)) == f
    with pytest.raises(ForestError):
        compose_forests(forest(["0"]), forest(["100"]))


def test_relation_holds_when_indices_are_apart():
    for n in range(1, 7):
        for j in range(1, n + 1):
            for q in range(j + 2, n + 2):
                lhs = compose_forests(make_generator(q, n + 1), make_generator(j, n))
                rhs = compose_forests(make_generator(j, n + 1), make_generator(q - 1, n))
                assert lhs == rhs, (j, q, n)


def test_relation_fails_for_adjacent_indices():
    # one side grows the right child of the new caret, the other the left child
    for n in range(1, 7):
        for j in range(1, n + 1):
            lhs = compose_forests(make_generator(j + 1, n + 1), make_generator(j, n))
            rhs = compose_forests(make_generator(j, n + 1), make_generator(j, n))
            assert lhs != rhs
            assert lhs.trees[j - 1].code == "10100"
            assert rhs.trees[j - 1].code == "11000"


def test_tensor():
    assert tensor_forests(forest(["100"]), forest(["0"])) == forest(["100", "0"])
    assert tensor_forests(Forest(()), forest(["100"])) == forest(["100"])
    for seed in range(100):
        rng = rng_for(seed, "tensor")
        f2, g2 = random_forest(rng, 2, 5), random_forest(rng, 1, 4)
        f1, g1 = random_forest(rng, f2.leaf_count, 8), random_forest(rng, g2.leaf_count, 6)
        assert compose_forests(tensor_forests(f1, g1), tensor_forests(f2, g2)) == tensor_forests(
            compose_forests(f1, f2), compose_forests(g1, g2))


def test_associativity_and_refinement():
    for seed in range(200):
        rng = rng_for(seed, "assoc")
        h = random_forest(rng, rng.randint(1, 3), 5)
        g = random_forest(rng, h.leaf_count, 8)
        f = random_forest(rng, g.leaf_count, 12)
        assert compose_forests(compose_forests(f, g), h) == compose_forests(f, compose_forests(g, h))
        if h.roots == 1:
            fine = compose_forests(compose_forests(f, g), h).trees[0]
            assert refines(tree_to_sdp(fine), tree_to_sdp(h.trees[0]))


def test_generator_decomposition_recomposes():
    for seed in range(200):
        f = random_forest(rng_for(seed, "gens"), 1 + seed % 3, 10)
        steps = decompose_into_generators(f)
        assert len(steps) == f.leaf_count - f.roots
        assert compose_generators(steps, f.roots) == f


def test_sdp_dictionary():
    assert [str(i) for i in tree_to_sdp(Tree("0"))] == ["[0,1)"]
    assert [str(i) for i in tree_to_sdp(Tree("100"))] == ["[0,1/2)", "[1/2,1)"]
    assert [str(i) for i in tree_to_sdp(Tree("10100"))] == ["[0,1/2)", "[1/2,3/4)", "[3/4,1)"]
    assert Sdi("011").width == pytest.approx(0.125) and str(Sdi("011").left) == "3/2^3"


def test_common_refinement_and_forest_between():
    a, b = Tree("10100"), Tree("11000")
    fine = Tree.from_leaves(common_refinement(a.leaves, b.leaves))
    assert fine.leaves == ("00", "01", "10", "11")
    f = forest_between(a, fine)
    assert compose_forests(f, Forest((a,))).trees[0] == fine
    with pytest.raises(ForestError):
        forest_between(fine, a)


def test_formats_round_trip():
    f = forest(["10100", "0", "100"])
    assert parse_forest(format_forest(f)) == f
    assert format_forest(Forest(())) == ""
    assert parse_forest("") == Forest(())
