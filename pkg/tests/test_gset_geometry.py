import pytest
from fractions import Fraction

from tensorpow.characters import (
    character_table,
    regular_character,
    sign_character,
    trivial_character,
)
from tensorpow.exact import Cyclotomic
from tensorpow.groups import (
    Permutation,
    all_subgroups,
    coset_gset,
    cyclic_group,
    decompose_power_gset,
    point_gset,
    principal_gset,
    subgroup_of,
    symmetric_group,
)
from tensorpow.gset_geometry import (
    EquivariantBundle,
    K1Element,
    binomial_identity_check,
    cyclic_product_group,
    induction_adams_check,
    k1_tensor_power,
    restrict_gset,
    sections_pushforward,
    tau_character,
    tensor_power_bundle_direct,
    theorem_pushforward_congruence,
    trivial_bundle,
)


def test_sections_principal_c3_is_regular():
    G = cyclic_group(3)
    E = trivial_bundle(principal_gset(G))
    assert sections_pushforward(E) == regular_character(G)


def test_sections_point_is_identity_on_characters():
    G = symmetric_group(3)
    X = point_gset(G)
    stab = subgroup_of(G, list(G.elements))
    chi = character_table(G).irreducibles[2]
    E = EquivariantBundle(X, [chi])
    assert sections_pushforward(E) == chi


def test_sections_two_point_coset_trivial_plus_sign():
    G = symmetric_group(3)
    C3 = subgroup_of(G, [Permutation.from_cycles(3, [(1, 2, 3)])])
    X = coset_gset(G, C3)
    assert len(X) == 2
    E = trivial_bundle(X)
    assert sections_pushforward(E) == trivial_character(G) + sign_character(G)


def test_sections_additive_and_frobenius():
    G = symmetric_group(3)
    C2 = subgroup_of(G, [Permutation.from_cycles(3, [(1, 2)])])
    X = coset_gset(G, C2)
    orbit = X.orbits()[0]
    stab = subgroup_of(G, X.stabilizer_elements(orbit[0]))
    t = trivial_character(stab)
    s = sign_character(stab)
    Et = EquivariantBundle(X, [t])
    Es = EquivariantBundle(X, [s])
    Ets = EquivariantBundle(X, [t + s])
    assert sections_pushforward(Ets) == sections_pushforward(Et) + sections_pushforward(Es)
    # sections of an induced character pair with restriction
    from tensorpow.characters import restrict
    from tensorpow.groups import Embedding

    emb = Embedding.inclusion(stab, G)
    for chi in character_table(G).irreducibles:
        assert sections_pushforward(Et).inner(chi) == t.inner(restrict(chi, emb))


def test_tensor_power_values_c3_l2():
    G = cyclic_group(3)
    X = principal_gset(G)
    E = trivial_bundle(X)
    CH = cyclic_product_group(2, G)
    chi = tensor_power_bundle_direct(E, 2, CH)
    labels = CH.conjugacy_classes().labels
    by_label = dict(zip(labels, chi.values))
    assert by_label[(0, 0)] == 9
    assert by_label[(1, 0)] == 3
    assert by_label[(0, 1)] == 0
    assert by_label[(1, 1)] == 0


def test_tensor_power_point_base_is_fiber_power():
    G = cyclic_group(4)
    X = point_gset(G)
    stab = subgroup_of(G, list(G.elements))
    chi = character_table(G).irreducibles[1]
    E = EquivariantBundle(X, [chi])
    CH = cyclic_product_group(3, G)
    direct = tensor_power_bundle_direct(E, 3, CH)
    assert direct == tau_character(chi, 3, CH)


def test_congruence_c3_l2_difference_is_cyclic_multiple():
    G = cyclic_group(3)
    rep = theorem_pushforward_congruence(G, 2, "principal")
    assert rep.passed
    diff = rep.lhs - rep.rhs
    CH = cyclic_product_group(2, G)
    by_label = dict(zip(CH.conjugacy_classes().labels, diff.values))
    assert by_label[(0, 0)] == 6  # 9 - 3
    assert all(v == 0 for lab, v in by_label.items() if lab != (0, 0))


def test_congruence_trivial_group_exact_equality():
    from tensorpow.groups import trivial_group

    G = trivial_group()
    rep = theorem_pushforward_congruence(G, 3, "principal")
    assert rep.passed
    assert rep.lhs == rep.rhs


def test_congruence_coset_mode_s3():
    G = symmetric_group(3)
    C2 = subgroup_of(G, [Permutation.from_cycles(3, [(1, 2)])])
    rep = theorem_pushforward_congruence(G, 5, "coset", Gp=C2)
    assert rep.passed
    assert rep.decomposition_counts == (3, 48, 243)


def test_congruence_nontrivial_fiber():
    G = cyclic_group(4)
    C2 = subgroup_of(G, [G.generators[0] ** 2])
    X = coset_gset(G, C2)

    def chooser(XH):
        orbits = XH.orbits()
        chars = []
        for orbit in orbits:
            stab = subgroup_of(XH.group, XH.stabilizer_elements(orbit[0]))
            table = character_table(stab)
            chars.append(table.irreducibles[-1])  # a nontrivial line where available
        return EquivariantBundle(XH, chars)

    rep = theorem_pushforward_congruence(G, 3, "coset", Gp=C2, E_chooser=chooser)
    assert rep.passed


def test_congruence_all_subgroups_c4():
    G = cyclic_group(4)
    decomp = decompose_power_gset(G, 3, "principal")
    for H in all_subgroups(G):
        rep = theorem_pushforward_congruence(G, 3, "principal", H=H, decomp=decomp)
        assert rep.passed


def test_induction_adams_examples():
    G = symmetric_group(3)
    C2 = subgroup_of(G, [Permutation.from_cycles(3, [(1, 2)])])
    phi = sign_character(C2)
    assert induction_adams_check(G, C2, phi, 5)

    assert induction_adams_check(G, G, trivial_character(G), 5)

    C4 = cyclic_group(4)
    C2b = subgroup_of(C4, [C4.generators[0] ** 2])
    defining = character_table(C2b).irreducibles[1]
    assert induction_adams_check(C4, C2b, defining, 3)


def test_induction_adams_rejects_dividing_prime():
    G = symmetric_group(3)
    C2 = subgroup_of(G, [Permutation.from_cycles(3, [(1, 2)])])
    with pytest.raises(ValueError):
        induction_adams_check(G, C2, trivial_character(C2), 3)


def test_binomial_identity():
    assert binomial_identity_check(2)
    assert binomial_identity_check(3)
    assert binomial_identity_check(13)
    with pytest.raises(ValueError):
        binomial_identity_check(4)


def test_k1_tensor_power_closed_form():
    assert k1_tensor_power(2).exponents == (1, -1)
    assert k1_tensor_power(3).exponents == (2, -1, -1)
    assert k1_tensor_power(5).exponents == (4, -1, -1, -1, -1)


def test_k1_trivial_unit():
    assert k1_tensor_power(3, beta_exponent=0).exponents == (0, 0, 0)


def test_k1_group_law():
    a = k1_tensor_power(3, beta_exponent=1)
    b = k1_tensor_power(3, beta_exponent=2)
    assert (a * a).exponents == b.exponents
