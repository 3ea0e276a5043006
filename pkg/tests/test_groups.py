import pytest

from tensorpow.groups import (
    CertificateError,
    ClosureCapExceeded,
    Embedding,
    Permutation,
    all_subgroups,
    coset_gset,
    cyclic_group,
    decompose_power_gset,
    direct_product,
    enumerate_group,
    point_gset,
    power_class_map,
    power_gset,
    principal_gset,
    split_product_element,
    symmetric_group,
    trivial_group,
    young_subgroup,
)


def test_enumerate_sigma3():
    s3 = symmetric_group(3)
    assert s3.order == 6


def test_enumerate_single_4_cycle_gives_c4():
    g = Permutation.from_cycles(4, [(1, 2, 3, 4)])
    G = enumerate_group([g])
    assert G.order == 4


def test_enumerate_s2_x_s2():
    G = direct_product(symmetric_group(2), symmetric_group(2))
    assert G.order == 4


def test_closure_cap_reports_partial_size():
    gens = symmetric_group(7).generators
    with pytest.raises(ClosureCapExceeded) as err:
        enumerate_group(gens, cap=100)
    assert err.value.partial_size > 100


def test_enumeration_deterministic():
    a = symmetric_group(4).elements
    b = symmetric_group(4).elements
    assert a == b


def test_conjugacy_classes_sigma3():
    classes = symmetric_group(3).conjugacy_classes()
    assert sorted(classes.sizes) == [1, 2, 3]
    assert set(classes.labels) == {(1, 1, 1), (2, 1), (3,)}


def test_conjugacy_classes_c5_singletons():
    classes = cyclic_group(5).conjugacy_classes()
    assert len(classes) == 5
    assert all(s == 1 for s in classes.sizes)


def test_conjugacy_classes_sigma4_partitions():
    classes = symmetric_group(4).conjugacy_classes()
    assert len(classes) == 5
    assert sum(classes.sizes) == 24


def test_power_class_map_examples():
    c3 = cyclic_group(3)
    pm = power_class_map(c3, 2)
    classes = c3.conjugacy_classes()
    c = c3.generators[0]
    assert pm[classes.index_of_element(c)] == classes.index_of_element(c * c)

    s3 = symmetric_group(3)
    classes3 = s3.conjugacy_classes()
    swap = Permutation.from_cycles(3, [(1, 2)])
    pm3 = power_class_map(s3, 2)
    assert pm3[classes3.index_of_element(swap)] == classes3.index_of_element(s3.identity)

    s4 = symmetric_group(4)
    classes4 = s4.conjugacy_classes()
    four_cycle = Permutation.from_cycles(4, [(1, 2, 3, 4)])
    pm4 = power_class_map(s4, 2)
    image = classes4.representatives[pm4[classes4.index_of_element(four_cycle)]]
    assert image.cycle_type() == (2, 2)


def test_power_class_map_order_plus_one_is_identity():
    for G in (symmetric_group(3), cyclic_group(6), symmetric_group(4)):
        pm = power_class_map(G, G.order + 1)
        assert all(pm[i] == i for i in pm)


def test_young_subgroup_inclusion_and_blocks():
    H = young_subgroup(3, (1, 2))
    assert H.order == 2
    G = symmetric_group(3)
    emb = Embedding.inclusion(H, G)
    assert all(emb(h) in G for h in H.elements)


def test_embedding_rejects_non_homomorphism():
    H = cyclic_group(2)
    G = symmetric_group(3)
    swap = Permutation.from_cycles(3, [(1, 2)])
    other = Permutation.from_cycles(3, [(1, 3)])
    Embedding(H, G, {H.identity: G.identity, H.generators[0]: swap})  # fine
    with pytest.raises(ValueError):
        Embedding(H, G, {H.identity: swap, H.generators[0]: other})


def test_gset_axioms():
    G = symmetric_group(3)
    for X in (principal_gset(G), coset_gset(G, cyclic_group(3)), point_gset(G)):
        assert X.verify_axioms()


def test_power_gset_axioms_small():
    G = cyclic_group(3)
    X2 = power_gset(principal_gset(G), 2)
    assert X2.verify_axioms()
    assert len(X2) == 9


def test_subgroups_of_sigma3():
    subs = all_subgroups(symmetric_group(3))
    assert sorted(H.order for H in subs) == [1, 2, 2, 2, 3, 6]


def test_decompose_c3_l2_principal():
    d = decompose_power_gset(cyclic_group(3), 2, "principal")
    nx, nm, npow = d.counts()
    assert (nx, nm, npow) == (3, 1, 9)
    assert nx + 2 * nm * nx == npow


def test_decompose_trivial_group_is_diagonal():
    d = decompose_power_gset(trivial_group(), 3, "principal")
    assert len(d.M) == 0
    assert len(d.free_points) == 0


def test_decompose_sigma3_l5_orbit_count():
    d = decompose_power_gset(symmetric_group(3), 5, "principal")
    assert len(d.M) == 259  # (6^4 - 1) / 5


def test_decompose_coset_mode():
    from tensorpow.groups import subgroup_of

    G = symmetric_group(3)
    Gp = subgroup_of(G, [Permutation.from_cycles(3, [(1, 2)])])
    d = decompose_power_gset(G, 5, "coset", Gp)
    # |X| = 3, |X^5| = 243 = 3 + 5*48
    assert d.counts() == (3, 48, 243)


def test_decompose_rejects_dividing_prime():
    with pytest.raises(ValueError):
        decompose_power_gset(cyclic_group(4), 2, "principal")


def test_decompose_c4_l3_and_l5():
    for l, size in ((3, 64), (5, 1024)):
        d = decompose_power_gset(cyclic_group(4), l, "principal")
        assert d.counts()[2] == size
        assert 4 + l * len(d.M) * 4 == size
