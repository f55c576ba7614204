import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codonbranch.lie_core import (
    FormalCharacter,
    InvalidLabelsError,
    NotACharacterError,
    SemisimpleAlgebra,
    UnsupportedAlgebraError,
    build_root_system,
    casimir2,
    char_add,
    irrep_character,
    peel,
    semisimple,
    sl2,
    vadd,
    virtual_character_decomp,
    vsub,
    weyl_dimension,
)
from oracles import brute_weyl_elements, weyl_quotient_character

ALL_SYSTEMS = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("A", 5),
               ("B", 2), ("C", 2), ("C", 3)]


F = Fraction


@pytest.mark.parametrize("series,rank", ALL_SYSTEMS)
def test_positive_root_counts(series, rank):
    rs = build_root_system(series, rank)
    expected = {"A": rank * (rank + 1) // 2, "B": rank * rank, "C": rank * rank}
    assert len(rs.positive_roots) == expected[series]


@pytest.mark.parametrize("series,rank", ALL_SYSTEMS)
def test_rho_is_sum_of_fundamental_weights(series, rank):
    rs = build_root_system(series, rank)
    acc = (F(0),) * rs.dim
    for w in rs.fundamental_weights:
        acc = vadd(acc, w)
    assert acc == rs.rho0


@pytest.mark.parametrize("series,rank", ALL_SYSTEMS)
def test_weyl_generators_permute_roots(series, rank):
    rs = build_root_system(series, rank)
    all_roots = set(rs.positive_roots) | {vsub((F(0),) * rs.dim, a)
                                          for a in rs.positive_roots}
    for i in range(rs.rank):
        assert {rs.reflect(r, i) for r in all_roots} == all_roots


@pytest.mark.parametrize("series,rank,order", [
    ("A", 1, 2), ("B", 2, 8), ("A", 5, 720), ("C", 2, 8), ("C", 3, 48),
])
def test_weyl_order_against_brute_enumeration(series, rank, order):
    rs = build_root_system(series, rank)
    assert rs.weyl_order == order
    assert len(brute_weyl_elements(rs)) == order


def test_a1_has_one_positive_root():
    rs = sl2()
    assert len(rs.positive_roots) == 1 and rs.weyl_order == 2


def test_unsupported_series():
    with pytest.raises(UnsupportedAlgebraError):
        build_root_system("D", 2)
    with pytest.raises(UnsupportedAlgebraError):
        build_root_system("B", 7)


@pytest.mark.parametrize("series,rank,labels,dim", [
    ("B", 2, (0, 3), 20),        # so(5)
    ("A", 5, (0, 0, 1, 0, 0), 20),
    ("C", 2, (1, 0), 4),
    ("A", 1, (5,), 6),
    ("B", 2, (1, 1), 16),
    ("C", 3, (0, 1, 0), 14),
    ("C", 3, (0, 0, 1), 14),
])
def test_weyl_dimension_values(series, rank, labels, dim):
    assert weyl_dimension(build_root_system(series, rank), labels) == dim


@pytest.mark.parametrize("series,rank", ALL_SYSTEMS)
def test_trivial_rep_dimension(series, rank):
    rs = build_root_system(series, rank)
    assert weyl_dimension(rs, (0,) * rs.rank) == 1


def test_negative_label_rejected():
    with pytest.raises(InvalidLabelsError):
        weyl_dimension(sl2(), (-1,))


def test_sl2_spin1_weight_string():
    ch = irrep_character(sl2(), (2,))
    labels = sorted(2 * w[0] for w in ch.terms)
    assert labels == [-2, 0, 2]
    assert all(m == 1 for m in ch.terms.values())


def test_so5_adjoint16_against_quotient_oracle():
    rs = build_root_system("B", 2)
    ch = irrep_character(rs, (1, 1))
    assert ch.total() == 16
    # zero weight is absent; the inner dominant weight carries multiplicity 2
    assert ch.mult((F(0), F(0))) == 0
    assert ch.mult((F(1, 2), F(1, 2))) == 2
    assert dict(ch.terms) == weyl_quotient_character(rs, (1, 1))


@pytest.mark.parametrize("series,rank,labels", [
    ("A", 2, (1, 1)), ("A", 3, (1, 0, 1)), ("B", 2, (0, 3)), ("C", 2, (1, 1)),
    ("A", 5, (0, 0, 1, 0, 0)), ("C", 3, (1, 0, 0)), ("A", 4, (0, 1, 0, 0)),
])
def test_freudenthal_matches_quotient_oracle(series, rank, labels):
    rs = build_root_system(series, rank)
    assert dict(irrep_character(rs, labels).terms) == \
        weyl_quotient_character(rs, labels)


def test_virtual_character_decomp_cases():
    a1 = sl2()
    assert virtual_character_decomp(a1, (F(0),)) == (1, (0,))
    # label -1, i.e. mu + rho on the wall
    assert virtual_character_decomp(a1, (F(-1, 2),)) is None
    # label -3 reflects to label 1 with a sign
    assert virtual_character_decomp(a1, (F(-3, 2),)) == (-1, (1,))


def test_virtual_character_decomp_dominant_idempotent_and_sign():
    for series, rank, labels in (("B", 2, (2, 1)), ("A", 3, (1, 0, 2)),
                                 ("C", 3, (1, 1, 0))):
        rs = build_root_system(series, rank)
        mu = rs.highest_weight(labels)
        assert virtual_character_decomp(rs, mu) == (1, labels)
        # every single dot-reflection flips the sign (det = -1) and lands on
        # the same labels
        shifted = vadd(mu, rs.rho0)
        for i in range(rs.rank):
            reflected = vsub(rs.reflect(shifted, i), rs.rho0)
            assert virtual_character_decomp(rs, reflected) == (-1, labels)


def test_peel_irreducible_and_sum():
    a1 = sl2()
    alg = SemisimpleAlgebra((a1,))
    ch = alg.character(((2,),))
    assert peel(alg, ch) == [(((2,),), 1)]
    both = char_add(alg.character(((2,),)), alg.character(((0,),)))
    assert sorted(peel(alg, both)) == [(((0,),), 1), (((2,),), 1)]


def test_peel_rejects_virtual_input():
    alg = SemisimpleAlgebra((sl2(),))
    bad = char_add(alg.character(((2,),)), alg.character(((1,),)), sign=-1)
    with pytest.raises(NotACharacterError):
        peel(alg, bad)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([(0,), (1,), (2,), (3,), (4,), (5,)]),
                min_size=1, max_size=5))
def test_peel_recovers_random_sl2_sums(labels):
    alg = SemisimpleAlgebra((sl2(),))
    total = FormalCharacter({})
    expected = {}
    for lab in labels:
        total = char_add(total, alg.character((lab,)))
        expected[(lab,)] = expected.get((lab,), 0) + 1
    assert dict(peel(alg, total)) == expected


@settings(max_examples=25, deadline=None)
@given(st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_peel_recovers_b2_irreps(labels):
    rs = build_root_system("B", 2)
    alg = SemisimpleAlgebra((rs,))
    out = peel(alg, alg.character((labels,)))
    assert out == [((labels,), 1)]


def test_peel_recovers_random_sums_up_to_dim_20():
    import random
    rng = random.Random(7)
    pools = {
        ("A", 2): [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (3, 0)],
        ("B", 2): [(0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (1, 1), (0, 3)],
        ("C", 2): [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)],
        ("A", 3): [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 0, 1), (2, 0, 0),
                   (0, 0, 2), (1, 1, 0)],
    }
    for _ in range(60):
        series, rank = rng.choice(list(pools))
        alg = SemisimpleAlgebra((build_root_system(series, rank),))
        picks = [rng.choice(pools[(series, rank)]) for _ in range(rng.randint(1, 5))]
        picks = [p for p in picks if alg.dimension((p,)) <= 20]
        if not picks:
            continue
        total = FormalCharacter({})
        expected = {}
        for lab in picks:
            total = char_add(total, alg.character((lab,)))
            expected[(lab,)] = expected.get((lab,), 0) + 1
        assert dict(peel(alg, total)) == expected


def test_peel_so5_restriction_example():
    # restriction of so(5) (1,1) to sl(2)+sl(2) via explicit projection
    from codonbranch.embed_chains import branch_embedding
    got = dict(branch_embedding("B2>A1+A1", (1, 1)))
    assert got == {((2,), (1,)): 1, ((1,), (2,)): 1, ((1,), (0,)): 1, ((0,), (1,)): 1}


def test_casimir_values():
    assert casimir2(sl2(), (0,)) == 0
    for two_s in range(1, 6):
        s = F(two_s, 2)
        assert casimir2(sl2(), (two_s,)) == s * (s + 1)
    assert casimir2(build_root_system("B", 2), (1, 1)) == F(15, 2)
    assert casimir2(build_root_system("B", 2), (0, 3)) == F(21, 2)
    assert casimir2(build_root_system("B", 2), (0, 1)) == F(5, 2)


@pytest.mark.parametrize("series,rank", ALL_SYSTEMS)
def test_conjugation_preserves_dimension(series, rank):
    rs = build_root_system(series, rank)
    for labels in itertools.product(range(2), repeat=rs.rank):
        assert weyl_dimension(rs, labels) == \
            weyl_dimension(rs, rs.conjugate(labels))


def test_semisimple_parser():
    alg = semisimple("A1+A1")
    assert len(alg.factors) == 2
    assert alg.dimension(((1,), (1,))) == 4
