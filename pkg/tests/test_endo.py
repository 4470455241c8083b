from itertools import product

import pytest

from iterwreath import (
    AlgebraElement,
    HomSpaceEmpty,
    LevelTooLarge,
    Permutation,
    SubgroupSpec,
    TreeAutomorphism,
    beta,
    centralizer_algebra_basis,
    centralizes,
    conj_action_tensor,
    d_generator_table,
    d_generators,
    end_ind_res_basis,
    factorize,
    full_group,
    group_order,
    identity,
    opposite_check,
    orbit,
    orbit_sum,
    power_table,
    tensor_basis,
)
from iterwreath.endo import TensorBasisElement, id_factor_span_check


def elem(level, text):
    p = Permutation.from_cycle_string(1 << level, text)
    return TreeAutomorphism.from_permutation(level, p)


# --- tensor bases -----------------------------------------------------------

def test_tensor_basis_sizes():
    assert len(tensor_basis(1, 1, 1)) == 4
    assert len(tensor_basis(2, 1, 1)) == 32
    for n, k, l in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (2, 2, 2)]:
        expected = (group_order(n + k - l) * group_order(n)) // group_order(n - l)
        assert len(tensor_basis(n, k, l)) == expected


def test_tensor_basis_without_restriction_is_whole_level():
    basis = tensor_basis(1, 1, 0)
    assert len(basis) == group_order(2)
    assert all(t.coset_b.is_identity and t.coset_indices == () for t in basis)
    assert [t.left for t in basis] == list(full_group(2))


def test_tensor_basis_rejects_over_restriction():
    with pytest.raises(HomSpaceEmpty):
        tensor_basis(1, 1, 2)
    with pytest.raises(HomSpaceEmpty):
        tensor_basis(2, 0, 3)


def test_tensor_basis_rejects_negative_offset():
    with pytest.raises(ValueError):
        tensor_basis(2, 0, 1)


def test_tensor_basis_guard():
    with pytest.raises(LevelTooLarge):
        tensor_basis(4, 1, 0)


def test_coset_rep_reconstruction():
    for t in tensor_basis(2, 1, 1):
        rep = t.coset_rep()
        assert rep.level == 2
        assert rep == t.coset_b * (beta(2, 2) if t.coset_indices == (2,)
                                   else identity(2))


# --- conjugation action on tensors ---------------------------------------------

def test_action_of_identity_fixes_everything():
    for n, k, l in [(1, 1, 1), (2, 1, 1)]:
        e = identity(n)
        for t in tensor_basis(n, k, l):
            assert conj_action_tensor(e, t) == t


def test_action_frozen_example():
    # h * (e (x) e) * h^-1 = h (x) h^-1; nothing crosses over the trivial
    # base, so the right factor renormalizes to the swap representative
    t = TensorBasisElement(identity(1), identity(1), (), 0)
    moved = conj_action_tensor(beta(1, 1), t)
    assert moved == TensorBasisElement(beta(1, 1), identity(1), (1,), 0)
    assert conj_action_tensor(beta(1, 1), moved) == t


def test_action_restricted_to_base_subgroup_is_plain_conjugation():
    # over the level-(n-l) subgroup the bimodule action coincides with
    # conjugating both tensor factors and re-expressing the right one
    basis = tensor_basis(2, 1, 1)
    for h in SubgroupSpec.embedded(1).elements(2):
        for t in basis:
            image = conj_action_tensor(h, t)
            split = factorize(h * t.coset_rep() * h.inverse(), 1)
            assert image.left == h * t.left * h.inverse() * split.base
            assert image.coset_b == split.hats[0]
            assert image.coset_indices == split.indices


def test_action_maps_basis_into_basis():
    for n, k, l in [(1, 1, 1), (2, 1, 1), (1, 2, 1)]:
        basis = set(tensor_basis(n, k, l))
        for h in full_group(n):
            for t in basis:
                assert conj_action_tensor(h, t) in basis


@pytest.mark.parametrize("n,k,l", [(1, 1, 1), (2, 1, 1)])
def test_action_is_left_group_action(n, k, l):
    basis = tensor_basis(n, k, l)
    group = full_group(n)
    for h1, h2 in product(group, repeat=2):
        h12 = h1 * h2
        for t in basis:
            assert conj_action_tensor(h12, t) == conj_action_tensor(
                h1, conj_action_tensor(h2, t))


def test_action_moves_chain_part_of_representative():
    # the root-swap representative times the deepest swap renormalizes with
    # a shifted-copy factor; the acting element lands in the left factor
    from iterwreath.endo import _conj_action_detail

    t = TensorBasisElement(identity(2), identity(2), (2,), 1)
    image, crossed, changed = _conj_action_detail(beta(2, 1), t)
    assert crossed == identity(2)
    assert image.left.cycle_string() == "(1 2)"
    assert image.coset_b.cycle_string() == "(3 4)"
    assert image.coset_indices == (2,)
    assert not changed


# --- endomorphism bases -------------------------------------------------------------

def test_end_basis_full_restriction_level_one():
    eb = end_ind_res_basis(1, 1, 1)
    assert eb.dimension == 4
    assert eb.acting_level == 0
    assert all(len(vec) == 1 for vec in eb.vectors)


def test_end_basis_level_two_dimension_against_fixed_point_oracle():
    eb = end_ind_res_basis(2, 1, 1)
    basis = tensor_basis(2, 1, 1)
    g = SubgroupSpec.embedded(1).generators(2)[0]
    fixed = sum(1 for t in basis if conj_action_tensor(g, t) == t)
    # dimension of the commutant of an order-2 group: (size + fixed) / 2
    assert fixed == 8
    assert eb.dimension == (len(basis) + fixed) // 2 == 20


def test_end_basis_vectors_partition_tensor_basis():
    for n, k, l in [(1, 1, 1), (2, 1, 1)]:
        eb = end_ind_res_basis(n, k, l)
        seen = set()
        for vec in eb.vectors:
            assert not (seen & set(vec))
            seen.update(vec)
        assert seen == set(tensor_basis(n, k, l))


@pytest.mark.parametrize("n,k", [(1, 1), (2, 1), (1, 2)])
def test_end_basis_no_restriction_equals_centralizer_basis(n, k):
    eb = end_ind_res_basis(n, k, 0)
    reference = centralizer_algebra_basis(n, k)
    assert eb.dimension == len(reference)
    assert tuple(eb.vectors) == tuple(reference)


def test_end_basis_records_index_renormalizations():
    for n, k, l in [(1, 1, 1), (2, 1, 1), (1, 2, 1)]:
        eb = end_ind_res_basis(n, k, l)
        assert eb.index_change_count == 0


def test_end_basis_rejects_over_restriction():
    with pytest.raises(HomSpaceEmpty):
        end_ind_res_basis(1, 1, 2)


# --- composition of endomorphism elements ---------------------------------------

def test_identity_tensor_is_a_unit_for_composition():
    from iterwreath.endo import compose_tensor_sums

    unit = {TensorBasisElement(identity(2), identity(2), (), 1): 1}
    for t in tensor_basis(2, 1, 1):
        assert compose_tensor_sums(unit, {t: 1}) == {t: 1}
        assert compose_tensor_sums({t: 1}, unit) == {t: 1}


def test_composition_associates_on_commutant_vectors():
    # middle multiplication is only well defined for commuting sums, so
    # associativity is checked on the orbit-sum vectors themselves
    from iterwreath.endo import compose_tensor_sums

    eb = end_ind_res_basis(2, 1, 1)
    vectors = [dict.fromkeys(vec, 1) for vec in eb.vectors]
    for a in vectors[:6]:
        for b in vectors[:6]:
            for c in vectors[:6]:
                lhs = compose_tensor_sums(compose_tensor_sums(a, b), c)
                rhs = compose_tensor_sums(a, compose_tensor_sums(b, c))
                assert lhs == rhs


def test_composition_matches_convolution_without_restriction():
    # at l = 0 the right factors are trivial, so composing endomorphisms is
    # convolution of the left factors in reversed order
    from iterwreath.endo import compose_tensor_sums

    basis = centralizer_algebra_basis(1, 1)
    x, y = basis[4], basis[5]

    def as_tensor(v):
        return {TensorBasisElement(g, identity(1), (), 1): c
                for g, c in v.terms.items()}

    composed = compose_tensor_sums(as_tensor(x), as_tensor(y))
    reversed_product = y * x
    assert composed == as_tensor(reversed_product)


@pytest.mark.parametrize("n,k,l", [(1, 1, 1), (2, 1, 1), (1, 2, 1)])
def test_end_basis_closure_reported(n, k, l):
    # recorded observation, not a claimed identity: the pairwise
    # compositions of the orbit-sum vectors land in their span
    from iterwreath.endo import end_basis_closure

    closed, witness = end_basis_closure(end_ind_res_basis(n, k, l))
    assert closed and witness is None


def test_end_basis_closure_no_restriction_matches_expansion():
    from iterwreath.endo import end_basis_closure

    closed, _ = end_basis_closure(end_ind_res_basis(1, 1, 0))
    assert closed


# --- orbit stability and centrality ---------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_root_swap_orbit_same_under_both_actions(n):
    root = beta(n + 1, n + 1)
    small = orbit(root, SubgroupSpec.embedded(n))
    big = orbit(root, SubgroupSpec.full())
    assert small.elements == big.elements
    assert small.size == group_order(n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_root_swap_orbit_sum_is_central_one_level_up(n):
    o = orbit_sum(beta(n + 1, n + 1), SubgroupSpec.embedded(n))
    assert centralizes(o, SubgroupSpec.full())


# --- generating sets ----------------------------------------------------------------------

def test_d_generator_table_adjacent_level_one():
    table = d_generator_table(1, 2)
    assert [label for label, _ in table] == ["b1^(0)", "o(b2)"]
    swap, osum = (elt for _, elt in table)
    assert swap == AlgebraElement.of(elem(2, "(3 4)"))
    assert osum == (AlgebraElement.of(elem(2, "(1 3)(2 4)"))
                    + AlgebraElement.of(elem(2, "(1 4)(2 3)")))


def test_d_generator_table_two_levels_up_from_two():
    labels = [label for label, _ in d_generator_table(2, 4)]
    assert labels == ["b1^(0)", "b2^(0)", "b1^(1)", "b2^(1)", "b3^(1)",
                      "o(b3)", "o(b4)", "o(b4 b3)"]


@pytest.mark.parametrize("n,m", [(1, 2), (1, 3), (2, 3), (2, 4)])
def test_d_generators_centralize_embedded_subgroup(n, m):
    sub = SubgroupSpec.embedded(n)
    for g in d_generators(n, m):
        assert centralizes(g, sub)


@pytest.mark.parametrize("n", [1, 2])
def test_root_swap_orbit_sum_commutes_with_shifted_generators(n):
    table = d_generator_table(n, n + 1)
    orbit_sums = [e for label, e in table if label.startswith("o(")]
    gens = [e for label, e in table if label.startswith("b")]
    for o in orbit_sums:
        for g in gens:
            assert o * g == g * o


def test_d_generators_bad_parameters():
    with pytest.raises(ValueError):
        d_generator_table(2, 2)
    with pytest.raises(LevelTooLarge):
        d_generator_table(2, 5)


@pytest.mark.parametrize("n", [1, 2])
def test_class_sums_times_generated_block_span_centralizer(n):
    span_dim, centralizer_dim = id_factor_span_check(n)
    assert span_dim == centralizer_dim


# --- power table ---------------------------------------------------------------------------

def test_power_table_odd_identities():
    powers = power_table(1, 7)
    o = powers[0]
    for k in (3, 5, 7):
        assert powers[k - 1] == o.scaled(1 << (k - 1))


def test_power_table_even_values_recorded():
    powers = power_table(1, 4)
    e = AlgebraElement.one(2)
    z = AlgebraElement.of(elem(2, "(1 2)(3 4)"))
    assert powers[1] == e.scaled(2) + z.scaled(2)
    assert powers[3] == e.scaled(8) + z.scaled(8)
    # even powers are not multiples of the orbit sum
    assert powers[1] != powers[0].scaled(2)


def test_power_table_level_two_runs_and_is_central():
    powers = power_table(2, 3)
    assert len(powers[0].terms) == 8
    assert centralizes(powers[2], SubgroupSpec.full())


def test_power_table_guards():
    with pytest.raises(LevelTooLarge):
        power_table(4, 2)
    with pytest.raises(ValueError):
        power_table(1, 9)
    with pytest.raises(ValueError):
        power_table(1, 0)


# --- opposite algebra ------------------------------------------------------------------------

def test_opposite_check_center_is_commutative():
    report = opposite_check(1, 0)
    assert report.dimension == 2
    assert report.closure_ok and report.transpose_ok
    assert report.left_constants == report.right_constants


def test_opposite_check_adjacent_level_one():
    report = opposite_check(1, 1)
    assert report.dimension == 6
    assert report.closure_ok
    assert report.transpose_ok
    for a in range(6):
        for b in range(6):
            assert report.left_constants[a][b] == report.right_constants[b][a]


def test_opposite_check_guard():
    with pytest.raises(LevelTooLarge):
        opposite_check(3, 1)
