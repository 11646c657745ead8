import pytest

from gradedtensor.brauer import (
    BrauerDiagram,
    BrauerElement,
    beta_ij,
    casimir_ad,
    compose_diagrams,
    embed_group_algebra,
    eta_sign,
    from_permutation,
    generator_beta,
    generator_sigma,
    identity_diagram,
    multiply,
    sigma_ij,
)
from gradedtensor.polynomial import Poly
from gradedtensor.young import (
    GroupAlgebraElement,
    YoungDiagram,
    all_perms,
    compose_perms,
    partitions,
    perm_sign,
    young_symmetrizer,
)
from conftest import rand_diagram, rand_element


Z = Poly.x()


def test_diagram_canonicalization_and_validation():
    d = BrauerDiagram(2, ((4, 2), (3, 1)))
    assert d.pairs == ((1, 3), (2, 4))
    with pytest.raises(ValueError):
        BrauerDiagram(2, ((1, 2), (2, 3)))


def test_displayed_permutation_product():
    sigma = BrauerDiagram(4, ((1, 6), (2, 7), (3, 5), (4, 8)))
    tau = BrauerDiagram(4, ((1, 6), (2, 5), (3, 8), (4, 7)))
    prod, loops = compose_diagrams(sigma, tau)
    assert prod.pairs == ((1, 7), (2, 6), (3, 8), (4, 5))
    assert loops == 0


def test_displayed_arc_product_with_loop():
    beta = BrauerDiagram(4, ((1, 3), (2, 4), (5, 6), (7, 8)))
    upsilon = BrauerDiagram(4, ((1, 2), (3, 8), (4, 6), (5, 7)))
    prod, loops = compose_diagrams(beta, upsilon)
    assert prod.pairs == ((1, 2), (3, 4), (5, 6), (7, 8))
    assert loops == 1


def test_identity_is_neutral(rng):
    for _ in range(100):
        d = rand_diagram(rng, 5)
        left, l1 = compose_diagrams(d, identity_diagram(5))
        right, l2 = compose_diagrams(identity_diagram(5), d)
        assert left == d and right == d
        assert l1 == 0 and l2 == 0


def test_permutation_diagram_product_matches_composition(rng):
    for _ in range(50):
        perms = list(all_perms(4))
        p = perms[rng.randrange(len(perms))]
        q = perms[rng.randrange(len(perms))]
        prod, loops = compose_diagrams(from_permutation(p), from_permutation(q))
        assert loops == 0
        assert prod == from_permutation(compose_perms(p, q))


@pytest.mark.parametrize("D", [2, 3, 4, 5])
def test_generator_relations(D):
    one = BrauerElement.one(D)
    for i in range(1, D):
        s = BrauerElement.of_diagram(generator_sigma(D, i))
        b = BrauerElement.of_diagram(generator_beta(D, i))
        assert multiply(s, s) == one
        assert multiply(b, b) == b.scaled(Z)
        assert multiply(s, b) == b
        assert multiply(b, s) == b


def test_generator_specializations():
    assert beta_ij(2, 1, 2) == generator_beta(2, 1)
    assert sigma_ij(3, 1, 3).pairs == ((1, 6), (2, 5), (3, 4))
    assert beta_ij(3, 1, 3).pairs == ((1, 3), (2, 5), (4, 6))
    with pytest.raises(ValueError):
        sigma_ij(3, 2, 2)
    with pytest.raises(ValueError):
        generator_beta(3, 3)


def test_associativity_on_random_triples(rng):
    for _ in range(100):
        e1 = BrauerElement.of_diagram(rand_diagram(rng, 4))
        e2 = BrauerElement.of_diagram(rand_diagram(rng, 4))
        e3 = BrauerElement.of_diagram(rand_diagram(rng, 4))
        assert multiply(multiply(e1, e2), e3) == multiply(e1, multiply(e2, e3))


def test_strand_count_mismatch():
    with pytest.raises(ValueError, match="strand-count mismatch"):
        compose_diagrams(identity_diagram(2), identity_diagram(3))
    with pytest.raises(ValueError, match="strand-count mismatch"):
        multiply(BrauerElement.one(2), BrauerElement.one(3))


def test_casimir_structure():
    a2 = casimir_ad(2)
    assert a2 == BrauerElement.of_diagram(beta_ij(2, 1, 2))
    assert len(casimir_ad(3).terms) == 3
    assert len(casimir_ad(5).terms) == 10
    with pytest.raises(ValueError):
        casimir_ad(1)


@pytest.mark.parametrize("D", [2, 3, 4])
def test_casimir_commutes_with_permutations(D):
    a = casimir_ad(D)
    for p in all_perms(D):
        s = BrauerElement.of_diagram(from_permutation(p))
        assert multiply(s, a) == multiply(a, s)


def test_casimir_commutes_with_symmetrizers():
    for D in (2, 3, 4):
        a = casimir_ad(D)
        for rows in partitions(D):
            c = embed_group_algebra(young_symmetrizer(YoungDiagram(rows)), D)
            assert multiply(a, c) == multiply(c, a)


def test_eta_values():
    assert eta_sign(identity_diagram(4)) == 1
    for D in (2, 3, 4):
        for i in range(1, D):
            assert eta_sign(generator_sigma(D, i)) == -1
            assert eta_sign(generator_beta(D, i)) == 1


@pytest.mark.parametrize("D", [2, 3, 4, 5])
def test_eta_extends_permutation_sign(D):
    for p in all_perms(D):
        assert eta_sign(from_permutation(p)) == perm_sign(p)


def test_embedding_identity_and_multiplicativity(rng):
    assert embed_group_algebra(
        GroupAlgebraElement.of_perm((0, 1, 2)), 3
    ) == BrauerElement.one(3)
    perms = list(all_perms(4))
    for _ in range(50):
        p = perms[rng.randrange(len(perms))]
        q = perms[rng.randrange(len(perms))]
        ep = GroupAlgebraElement.of_perm(p)
        eq = GroupAlgebraElement.of_perm(q)
        lhs = embed_group_algebra(ep * eq, 4)
        rhs = multiply(embed_group_algebra(ep, 4), embed_group_algebra(eq, 4))
        assert lhs == rhs


def test_embedding_of_full_symmetrizer():
    c = embed_group_algebra(young_symmetrizer(YoungDiagram((2,))), 2)
    assert c == BrauerElement.one(2) + BrauerElement.of_diagram(sigma_ij(2, 1, 2))


def test_composition_conserves_points(rng):
    for _ in range(100):
        d1 = rand_diagram(rng, 4)
        d2 = rand_diagram(rng, 4)
        prod, loops = compose_diagrams(d1, d2)
        assert len(prod.pairs) == 4
        assert loops >= 0


def test_element_json_round_trip(rng):
    e = rand_element(rng, 3, n_terms=3, z_degree=2)
    assert BrauerElement.from_json(e.to_json()) == e


def test_diagram_json_round_trip():
    d = beta_ij(3, 1, 3)
    assert BrauerDiagram.from_json(d.to_json()) == d
    assert d.to_json() == {"D": 3, "pairs": [[1, 3], [2, 5], [4, 6]]}
