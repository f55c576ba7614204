import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codonbranch.embed_chains import (
    CHAINS,
    ChainError,
    apply_chain,
    branch_embedding,
    builtin_registry,
    diagonal_clebsch,
    export_registry,
    first_step_distribution,
    validate_registry,
)
from codonbranch.lie_core import weyl_dimension


def test_registry_self_test():
    assert validate_registry()


def test_registry_contents():
    names = {e.name for e in builtin_registry()}
    assert names == {"A3>A2", "A3>C2", "A3>A1+A1", "C2>A1+A1", "C2>A1",
                     "A5>A4", "A5>A3", "A5>C3", "A5>A2", "A5>A1+A3",
                     "A5>A2+A2", "A5>A1+A2", "A2>A1(1)", "A2>A1(2)",
                     "B2>A1+A1", "B2>A1"}


@pytest.mark.parametrize("name,labels,expected", [
    ("C2>A1+A1", (1, 0), {((1,), (0,)): 1, ((0,), (1,)): 1}),
    ("C2>A1", (1, 0), {((3,),): 1}),
    ("B2>A1+A1", (0, 1), {((1,), (0,)): 1, ((0,), (1,)): 1}),
    ("B2>A1", (1, 1), {((7,),): 1, ((5,),): 1, ((1,),): 1}),
    ("C2>A1+A1", (0, 1), {((1,), (1,)): 1, ((0,), (0,)): 1}),
    ("A2>A1(1)", (1, 0), {((1,),): 1, ((0,),): 1}),
    ("A2>A1(2)", (1, 0), {((2,),): 1}),
])
def test_branch_examples(name, labels, expected):
    assert dict(branch_embedding(name, labels)) == expected


def test_trivial_rep_restricts_trivially():
    for emb in builtin_registry():
        trivial = (0,) * emb.source.rank
        out = dict(branch_embedding(emb.name, trivial))
        assert out == {tuple((0,) * t.rank for t in emb.targets): 1}


def _source_irreps_upto(rs, max_dim=64, bound=3):
    for labels in itertools.product(range(bound + 1), repeat=rs.rank):
        if weyl_dimension(rs, labels) <= max_dim:
            yield labels


@pytest.mark.parametrize("emb", builtin_registry(), ids=lambda e: e.name)
def test_dimension_preservation(emb):
    alg = emb.target_algebra()
    for labels in _source_irreps_upto(emb.source):
        out = branch_embedding(emb.name, labels)
        assert sum(m * alg.dimension(l) for l, m in out) == \
            weyl_dimension(emb.source, labels)


@pytest.mark.parametrize("emb", builtin_registry(), ids=lambda e: e.name)
def test_conjugation_equivariance(emb):
    alg = emb.target_algebra()
    for labels in _source_irreps_upto(emb.source):
        direct = sorted((alg.conjugate(l), m)
                        for l, m in branch_embedding(emb.name, labels))
        conjugated = sorted(branch_embedding(emb.name, emb.source.conjugate(labels)))
        assert direct == conjugated


def test_diagonal_clebsch_examples():
    assert diagonal_clebsch(1, 2) == ((3,), (1,))
    assert diagonal_clebsch(1, 1) == ((2,), (0,))
    assert diagonal_clebsch(4, 0) == ((4,),)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8))
def test_diagonal_clebsch_dimension_sum(a, b):
    assert sum(c[0] + 1 for c in diagonal_clebsch(a, b)) == (a + 1) * (b + 1)


def test_diagonal_clebsch_rejects_negative():
    with pytest.raises(ChainError):
        diagonal_clebsch(-1, 2)


def test_first_step_distribution_total():
    for key in ("sl(2|1)", "osp(5|2)", "osp(2|6)"):
        assert first_step_distribution(key).total_dim() == 64


@pytest.mark.parametrize("chain", CHAINS, ids=lambda c: c.chain_id)
def test_dimension_conserved_along_every_chain(chain):
    dist = first_step_distribution(chain.rep_key)
    assert dist.total_dim() == 64
    from codonbranch.embed_chains import apply_step
    for step in chain.steps:
        dist = apply_step(dist, step)
        assert dist.total_dim() == 64


@pytest.mark.parametrize("cid,count", [
    ("osp(5|2)/3", 14), ("osp(3|4)/3", 9), ("osp(4|2)(5,0,0)/3", 8),
    ("osp(5|2)/1", 10), ("osp(3|4)/1", 8),
])
def test_chain_subspace_counts(cid, count):
    dist = apply_chain(cid)
    assert sum(e.mult for e in dist.entries) == count


def test_unknown_chain_id_lists_known_ids():
    with pytest.raises(ChainError) as err:
        apply_chain("nope/1")
    assert "osp(5|2)/3" in str(err.value)


def test_chain_history_depth_matches_stages():
    dist = apply_chain("osp(5|2)/3")
    assert len(dist.stages) == 3
    for e in dist.entries:
        assert len(e.history) == 2


def test_diagonal_requires_sl2_stage():
    from codonbranch.embed_chains import ChainStep, apply_step
    dist = first_step_distribution("osp(5|2)")
    with pytest.raises(ChainError):
        apply_step(dist, ChainStep("diagonal", pair=(0, 1)))


def test_restrict_requires_matching_factor():
    from codonbranch.embed_chains import ChainStep, apply_step
    dist = first_step_distribution("osp(5|2)")
    with pytest.raises(ChainError):
        apply_step(dist, ChainStep("restrict", embedding="C2>A1", factor=1))


def test_export_registry_is_stable_and_complete():
    text = export_registry()
    assert text == export_registry()
    for emb in builtin_registry():
        assert f"embedding {emb.name}" in text
