import json
import os
from fractions import Fraction

import pytest

from codonbranch.lie_core import vadd, vsub
from codonbranch.super_branch import (
    CATALOG,
    AtypicalError,
    branch_to_even,
    build_super,
    catalog_entry,
    drop_abelian_charges,
    is_typical,
    kac_labels,
    kac_weight,
    typical_dimension,
)

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "codonbranch", "data")

ODD_COUNTS = {"sl(2|1)": 2, "sl(3|1)": 3, "sl(4|1)": 4, "sl(6|1)": 6,
              "sl(2|2)": 4, "sl(3|2)": 6, "osp(2|4)": 4, "osp(2|6)": 6,
              "osp(3|2)": 3, "osp(3|4)": 6, "osp(5|2)": 5, "osp(4|2)": 4}


@pytest.mark.parametrize("kind,count", sorted(ODD_COUNTS.items()))
def test_odd_positive_root_counts(kind, count):
    sa = build_super(kind)
    assert len(sa.odd_positive_roots) == count


def test_even_parts():
    assert build_super("osp(5|2)").factor_names == ("sp(2)", "so(5)")
    assert build_super("osp(4|2)").factor_names == ("sp(2)", "sl(2)", "sl(2)")
    assert build_super("sl(2|1)").factor_names == ("sl(2)",)
    assert build_super("sl(2|1)").charge_count == 1
    assert build_super("osp(3|4)").factor_names == ("sp(4)", "so(3)")


@pytest.mark.parametrize("kind", sorted(ODD_COUNTS))
def test_rho_identity(kind):
    sa = build_super(kind)
    assert sa.rho == vsub(sa.rho0, sa.rho1)


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.key)
def test_kac_label_round_trip(entry):
    sa = entry.build()
    assert kac_labels(sa, kac_weight(sa, entry.labels)) == entry.labels


def test_is_typical_catalog_and_counterexample():
    sa = build_super("osp(5|2)")
    assert is_typical(sa, (Fraction(5, 2), 0, 1))
    sl21 = build_super("sl(2|1)")
    assert is_typical(sl21, (15, 1))
    # direct inner-product scan over the odd roots
    lam_rho = vadd(kac_weight(sl21, (15, 0)), sl21.rho)
    products = [sl21.sdot(lam_rho, b) for b in sl21.odd_positive_roots]
    assert any(p == 0 for p in products)
    assert not is_typical(sl21, (15, 0))


def test_atypical_dimension_raises():
    with pytest.raises(AtypicalError):
        typical_dimension(build_super("sl(2|1)"), (15, 0))


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.key)
def test_typical_dimension_is_64(entry):
    assert typical_dimension(entry.build(), entry.labels) == 64


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.key)
def test_alias_weights_are_typical_dim_64(entry):
    sa = entry.build()
    for alias in entry.aliases:
        assert is_typical(sa, alias)
        assert typical_dimension(sa, alias) == 64


def _branch_map(sa, labels):
    return {e.labels: (e.mult, e.dim(sa)) for e in branch_to_even(sa, labels)}


def _golden_rows():
    rows = {}
    for t in (1, 2, 3):
        with open(os.path.join(DATA, f"table{t}.json"), encoding="utf-8") as fh:
            doc = json.load(fh)
        for row in doc["rows"]:
            rows[(row["algebra"], row["highest_weight"])] = row["entries"]
    return rows


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.key)
def test_first_step_branching_matches_golden_tables(entry):
    from codonbranch.tables import render_hw, render_labels
    sa = entry.build()
    got = sorted((render_labels(e.labels), e.mult, e.dim(sa))
                 for e in branch_to_even(sa, entry.labels))
    golden = _golden_rows()[(entry.algebra, render_hw(entry.labels))]
    want = sorted((e["labels"], e["mult"], e["dim"]) for e in golden)
    assert got == want


def test_charge_drop_merges_sl61_trivials():
    entry = catalog_entry("sl(6|1)")
    sa = entry.build()
    pre = branch_to_even(sa, entry.labels, drop_charges=False)
    trivial_pre = [e for e in pre if e.labels == ((0, 0, 0, 0, 0),)]
    assert len(trivial_pre) == 2 and all(e.mult == 1 for e in trivial_pre)
    assert len({e.weight for e in trivial_pre}) == 2  # distinct charges
    post = drop_abelian_charges(sa, pre)
    trivial_post = [e for e in post if e.labels == ((0, 0, 0, 0, 0),)]
    assert len(trivial_post) == 1 and trivial_post[0].mult == 2


def test_charge_drop_merges_sl31_pair():
    entry = catalog_entry("sl(3|1)")
    sa = entry.build()
    pre = branch_to_even(sa, entry.labels, drop_charges=False)
    pair = [e for e in pre if e.labels == ((1, 1),)]
    assert len(pair) == 2
    post = drop_abelian_charges(sa, pre)
    assert {e.mult for e in post if e.labels == ((1, 1),)} == {2}


def test_charge_drop_is_identity_for_type_two():
    entry = catalog_entry("osp(5|2)")
    sa = entry.build()
    pre = branch_to_even(sa, entry.labels, drop_charges=False)
    post = drop_abelian_charges(sa, pre)
    assert [(e.labels, e.mult) for e in post] == [(e.labels, e.mult) for e in pre]


def test_total_dimension_preserved_by_charge_drop():
    for entry in CATALOG:
        sa = entry.build()
        pre = branch_to_even(sa, entry.labels, drop_charges=False)
        post = drop_abelian_charges(sa, pre)
        assert sum(e.mult * e.dim(sa) for e in pre) == \
            sum(e.mult * e.dim(sa) for e in post) == 64


def _dim_stats(sa, labels):
    stats = {}
    for e in branch_to_even(sa, labels):
        stats[e.dim(sa)] = stats.get(e.dim(sa), 0) + e.mult
    return stats


def test_conjugate_alias_sl41_is_factorwise_conjugate():
    entry = catalog_entry("sl(4|1)")
    sa = entry.build()
    base = _branch_map(sa, entry.labels)
    (alias,) = entry.aliases
    conj = {tuple(rs.conjugate(lab) for rs, lab in
                  zip(sa.factor_systems, labels)): v
            for labels, v in base.items()}
    assert _branch_map(sa, alias) == conj


def test_conjugate_alias_sl22_swaps_the_two_sl2_factors():
    # conjugation of sl(2|2) acts through the diagram automorphism that
    # exchanges the two even sl(2) blocks; sl(2) labels are self-conjugate
    entry = catalog_entry("sl(2|2)(3,2,0)")
    sa = entry.build()
    base = _branch_map(sa, entry.labels)
    (alias,) = entry.aliases
    swapped = {(labels[1], labels[0]): v for labels, v in base.items()}
    assert _branch_map(sa, alias) == swapped
    assert _dim_stats(sa, alias) == _dim_stats(sa, entry.labels)


def test_osp42_equivalent_weights_share_branchings_up_to_triality():
    import itertools
    for key in ("osp(4|2)(5,0,0)", "osp(4|2)(7/2,0,1)"):
        entry = catalog_entry(key)
        sa = entry.build()
        base = _branch_map(sa, entry.labels)
        for alias in entry.aliases:
            other = _branch_map(sa, alias)
            images = [{tuple(labels[i] for i in perm): v
                       for labels, v in base.items()}
                      for perm in itertools.permutations(range(3))]
            assert other in images
            assert _dim_stats(sa, alias) == _dim_stats(sa, entry.labels)


def test_bad_algebra_names_rejected():
    from codonbranch.lie_core import InvalidLabelsError
    with pytest.raises(InvalidLabelsError):
        build_super("sl(9|4)")
    with pytest.raises(InvalidLabelsError):
        build_super("so(5)")


def test_wrong_label_count_rejected():
    from codonbranch.lie_core import InvalidLabelsError
    with pytest.raises(InvalidLabelsError):
        kac_weight(build_super("osp(5|2)"), (1, 2))
