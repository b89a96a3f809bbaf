import itertools

import pytest

from narybands import (
    DomainError,
    GroupSpec,
    HomMap,
    InputError,
    ResourceError,
    band_violation,
    brute_force_bands,
    canonical_form,
    check_symmetric,
    compose,
    decompose,
    enumerate_bands,
    extend,
    group_homs,
    make_group,
    nary_homs,
    neutral_elements,
    relabel,
    table_from_function,
)

LABELED_N3 = {1: 1, 2: 3, 3: 18, 4: 197}
ISO_N3 = {1: 1, 2: 2, 3: 4, 4: 14}


def test_make_group_cyclic():
    g = make_group(GroupSpec(3, (3,)), 4)
    for x in range(3):
        for y in range(3):
            assert g.eval((x, y)) == (x + y) % 3
    assert neutral_elements(g) == frozenset({0})


def test_make_group_digit_order():
    # first factor is most significant: element 1 is the generator of the
    # last factor
    g = make_group(GroupSpec(6, (2, 3)), 7)
    assert g.eval((1, 1)) == 2
    assert g.eval((3, 3)) == 0
    assert g.eval((4, 5)) == 0
    assert g.eval((1, 2)) == 0
    assert g.eval((3, 1)) == 4


def test_make_group_validates():
    with pytest.raises(InputError):
        GroupSpec(4, (2,))
    with pytest.raises(InputError):
        make_group(GroupSpec(3, (3,)), 3)  # 3 does not divide 2
    with pytest.raises(InputError):
        make_group(GroupSpec(2, (2,)), 1)


def test_group_spec_normalizes():
    assert GroupSpec(4, (2, 2, 1)).factors == (2, 2)
    assert GroupSpec(6, (3, 2)).factors == (2, 3)


def test_group_homs_counts():
    triv = make_group(GroupSpec(1, ()), 3)
    z2 = make_group(GroupSpec(2, (2,)), 3)
    k4 = make_group(GroupSpec(4, (2, 2)), 3)
    assert len(group_homs(triv, k4)) == 1
    assert len(group_homs(z2, z2)) == 2
    assert len(group_homs(k4, z2)) == 4
    assert len(group_homs(z2, k4)) == 4
    assert len(group_homs(k4, k4)) == 16


def test_group_homs_are_multiplicative():
    z2 = make_group(GroupSpec(2, (2,)), 3)
    k4 = make_group(GroupSpec(4, (2, 2)), 3)
    for phi in group_homs(k4, z2):
        assert phi[0] == 0
        for x in range(4):
            for y in range(4):
                assert phi[k4.eval((x, y))] == z2.eval((phi[x], phi[y]))


def test_nary_homs_golden():
    triv = make_group(GroupSpec(1, ()), 3)
    z2 = make_group(GroupSpec(2, (2,)), 3)
    assert nary_homs(triv, z2, 3) == [(0,), (1,)]
    assert nary_homs(z2, z2, 3) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_nary_homs_are_shifted_group_homs():
    z2 = make_group(GroupSpec(2, (2,)), 3)
    k4 = make_group(GroupSpec(4, (2, 2)), 3)
    expected = set()
    for g2 in range(4):
        for psi in group_homs(z2, k4):
            expected.add(tuple(k4.eval((g2, p)) for p in psi))
    assert set(nary_homs(z2, k4, 3)) == expected
    assert len(nary_homs(k4, z2, 3)) == 8


def test_nary_homs_brute_equivalence():
    specs = [GroupSpec(1, ()), GroupSpec(2, (2,)), GroupSpec(4, (2, 2))]
    for s1 in specs:
        for s2 in specs:
            g1, g2 = make_group(s1, 3), make_group(s2, 3)
            e1, e2 = extend(g1, 2), extend(g2, 2)
            brute = [
                phi
                for phi in itertools.product(range(s2.order), repeat=s1.order)
                if all(
                    phi[e1.eval(args)] == e2.eval(tuple(phi[a] for a in args))
                    for args in itertools.product(range(s1.order), repeat=3)
                )
            ]
            assert brute == nary_homs(g1, g2, 3)


def test_compose_inverts_decompose(f1, f2, min3, xor3):
    for t in (f1, f2, min3, xor3):
        assert compose(decompose(t)).values == t.values


def test_compose_at_higher_arity_is_extension(f2):
    system = decompose(f2)
    assert compose(system, 5).values == extend(f2, 2).values


def test_compose_rejects_bad_arity(f1):
    with pytest.raises(DomainError):
        compose(decompose(f1), 4)  # group exponent 2 does not divide 3


def test_compose_verify_rejects_broken_system():
    # k4-over-z2 band with the connecting map replaced by a non-hom
    def op(x, y, z):
        if max(x, y, z) < 4:
            return x ^ y ^ z
        p = 0
        for a in (x, y, z):
            p ^= 0 if a < 4 else a - 4
        return 4 + p

    system = decompose(table_from_function(3, 6, op))
    broken_map = dict(system.homs)
    broken_map[(0, 1)] = HomMap(0, 1, {0: 4, 1: 5, 2: 4, 3: 4})
    broken = type(system)(
        system.arity, system.partition, system.quotient, system.groups, broken_map
    )
    with pytest.raises(DomainError):
        compose(broken)
    out = compose(broken, verify=False)
    assert band_violation(out) is not None


def test_enumerate_counts():
    for m, expected in LABELED_N3.items():
        catalog = enumerate_bands(m, 3)
        assert catalog.labeled == expected
        assert catalog.iso == ISO_N3[m]
        assert len(catalog.entries) == expected


def test_enumerate_entries_are_bands(catalog_n3):
    for m in (1, 2, 3):
        for t in catalog_n3[m]:
            assert band_violation(t) is None
    assert all(band_violation(t) is None for t in catalog_n3[4][:20])


def test_enumerate_entries_sorted_and_distinct(catalog_n3):
    for m in catalog_n3:
        seen = {t.values for t in catalog_n3[m]}
        assert len(seen) == len(catalog_n3[m])


def test_enumerate_up_to_iso():
    catalog = enumerate_bands(3, 3, up_to_iso=True)
    assert len(catalog.entries) == catalog.iso == 4
    assert catalog.labeled == 18
    for t in catalog.entries:
        assert canonical_form(t).values == t.values
    canons = {t.values for t in catalog.entries}
    assert len(canons) == 4


def test_enumerate_closed_under_relabeling(catalog_n3):
    values = {t.values for t in catalog_n3[3]}
    for t in catalog_n3[3]:
        for perm in itertools.permutations(range(3)):
            assert relabel(t, perm).values in values


def test_enumerate_binary_gives_semilattices():
    # at arity 2 the class groups are trivial, so the catalog is exactly
    # the commutative idempotent associative tables
    for m in (1, 2, 3, 4):
        assert enumerate_bands(m, 2).labeled == brute_force_bands(m, 2).labeled


def test_enumerate_validates_input():
    with pytest.raises(InputError):
        enumerate_bands(0, 3)
    with pytest.raises(InputError):
        enumerate_bands(2, 1)
    with pytest.raises(ResourceError):
        enumerate_bands(6, 3)


def test_brute_force_golden_counts():
    catalog = brute_force_bands(2, 3)
    assert catalog.labeled == 3 and catalog.iso == 2
    values = {t.values for t in catalog.entries}
    ternary_min = table_from_function(3, 2, lambda *a: min(a))
    ternary_max = table_from_function(3, 2, lambda *a: max(a))
    ternary_xor = table_from_function(3, 2, lambda x, y, z: x ^ y ^ z)
    assert values == {ternary_min.values, ternary_max.values, ternary_xor.values}


def test_brute_force_respects_budget():
    with pytest.raises(ResourceError):
        brute_force_bands(4, 3)


def test_brute_force_binary_paths_agree():
    # size 4 goes through the vectorized filter, size 3 through the plain
    # product loop; relabeling size-3 results into size-4 tables they must
    # appear in the bigger catalog
    small = brute_force_bands(3, 2)
    assert small.labeled == 9 and small.iso == 2
    big = brute_force_bands(4, 2)
    assert big.labeled == 76 and big.iso == 5
    for t in big.entries:
        assert check_symmetric(t) is None


def test_catalog_matches_brute_force():
    for m in (1, 2, 3):
        fast = {t.values for t in enumerate_bands(m, 3).entries}
        slow = {t.values for t in brute_force_bands(m, 3).entries}
        assert fast == slow
