import random

import pytest

from codonbranch.embed_chains import CHAINS, apply_chain
from codonbranch.phase2 import PhaseOp, apply_op, available_ops, phase2_stats
from codonbranch.search import (
    apply_plan,
    can_yield_triplet,
    full_search,
    match_target,
    prune,
    reachable_triplet_counts,
    report_to_dict,
    solve_freezing,
)


@pytest.fixture(scope="module")
def report():
    return full_search()


def _stats(chain_id, plan=()):
    return phase2_stats(apply_plan(chain_id, plan))


def test_prune_examples(report):
    sl31 = [a for a in report.algebras if a.key == "sl(3|1)"][0]
    assert "TotalPairing" in sl31.phase1_violations
    osp26 = [a for a in report.algebras if a.key == "osp(2|6)"][0]
    assert "TooManySinglets" in osp26.phase1_violations
    osp32 = report.chain_report("osp(3|2)/1")
    assert "D3TooSmall" in osp32.verdict_codes
    sl41 = report.chain_report("sl(4|1)/1")
    assert {"TooManySinglets", "TooManyOdd"} <= set(sl41.verdict_codes)


def test_match_target_examples():
    assert not match_target(_stats("osp(5|2)/3"))  # contains dims 8 and 9
    near = _stats("osp(5|2)/1", ["strong:2"])
    assert near.histogram() == {6: 3, 4: 5, 3: 4, 2: 5, 1: 4}
    assert not match_target(near)


def test_enumerate_quoted_nodes():
    assert (_stats("osp(5|2)/3", ["soft:3"]).n_multiplets,
            _stats("osp(5|2)/3", ["soft:3"]).d3) == (18, 24)
    s = _stats("osp(5|2)/1", ["strong:1"])
    assert (s.n_multiplets, s.d3) == (18, 36)
    s = _stats("osp(4|2)(7/2,0,1)/1", ["soft:1"])
    assert (s.n_multiplets, s.d3) == (11, 36)


def test_solve_freezing_table6():
    state = apply_plan("osp(5|2)/3", ["soft:3"])
    masks = solve_freezing(state, PhaseOp("soft", "12"))
    assert len(masks) == 1
    assert set(masks[0].frozen) == {("2-(±2)", 6, 1), ("2-0", 3, 2), ("2-(±1)", 6, 2)}


def test_solve_freezing_tables_7_and_8_unique():
    state = apply_plan("osp(5|2)/3", ["soft:3"])
    m7 = solve_freezing(state, PhaseOp("strong", "12"))
    assert len(m7) == 1
    assert set(m7[0].frozen) == {("1-(±1)", 4, 2), ("2-(±2)", 6, 1), ("2-0", 3, 2),
                                 ("2-(±1)", 6, 2), ("1-(±2)", 4, 1), ("1-0", 2, 2),
                                 ("3-0", 4, 2)}
    m8 = solve_freezing(state, PhaseOp("strong_after_soft", "3"))
    assert len(m8) == 1
    assert set(m8[0].frozen) == {("2-(±2)", 6, 1), ("0-(±2)", 2, 1), ("2-(±1)", 6, 2),
                                 ("1-(±2)", 4, 1), ("0-(±3)", 2, 1), ("0-(±1)", 2, 1)}


def test_freezing_impossible_when_singlets_locked_in():
    # distribution already carrying more singlets than the target allows
    state = apply_plan("sl(2|1)/1", [])
    masks = solve_freezing(state, PhaseOp("strong", "1"))
    assert masks == []


def test_final_state_matches_target_for_each_scheme(report):
    from codonbranch.search import final_state
    chain = report.chain_report("osp(5|2)/3")
    assert len(chain.schemes) == 3
    for scheme in chain.schemes:
        state = apply_plan("osp(5|2)/3", list(scheme.plan))
        for mask in scheme.masks:
            final = final_state(state, scheme.final_op, mask)
            stats = phase2_stats(final)
            assert match_target(stats)
            assert stats.n_multiplets == 21
            assert final.total_dim() == 64


def test_triplet_reachability_facts():
    # sl(2|2) chain end: (5)-(0) can never make a triplet, (3)-(2) makes 0 or 4
    assert not can_yield_triplet((("u", 5), ("u", 0)))
    assert reachable_triplet_counts((("u", 3), ("u", 2))) == frozenset({0, 4})
    assert reachable_triplet_counts((("u", 2), ("u", 1))) == frozenset({0, 2})
    # osp(3|4) chain 1: the dimension-12 (1)-(0)-(5) cannot break into triplets
    assert not can_yield_triplet((("u", 1), ("u", 0), ("u", 5)))
    # osp(5|2) chain 2: (0)-(5) cannot; (2)-(3) can (0 or 4)
    assert not can_yield_triplet((("u", 0), ("u", 5)))
    assert reachable_triplet_counts((("u", 2), ("u", 3))) == frozenset({0, 4})


def test_survivors_exactly_three(report):
    survivors = report.survivors()
    assert len(survivors) == 3
    assert {s.chain_id for s in survivors} == {"osp(5|2)/3"}
    finals = {s.final_op.render(): s.full_break_count for s in survivors}
    assert finals == {"soft:12": 26, "strong:12": 42, "strong_after_soft:3": 28}
    for s in survivors:
        assert [op.render() for op in s.plan] == ["soft:3"]
        assert len(s.masks) >= 1


def test_near_misses_recorded(report):
    c1 = report.chain_report("osp(5|2)/1")
    hists = {tuple(sorted(h.items())) for _, h in c1.near_misses}
    assert tuple(sorted({6: 3, 4: 5, 3: 4, 2: 5, 1: 4}.items())) in hists
    c3 = report.chain_report("osp(5|2)/3")
    hists3 = {tuple(sorted(h.items())) for _, h in c3.near_misses}
    assert tuple(sorted({6: 2, 4: 7, 3: 2, 2: 8, 1: 2}.items())) in hists3


def test_report_complete_and_deterministic(report):
    seen = []
    for a in report.algebras:
        for c in a.chains:
            seen.append(c.chain_id)
            assert c.verdict_codes or c.schemes
    assert sorted(seen) == sorted(c.chain_id for c in CHAINS)
    assert report_to_dict(report) == report_to_dict(full_search())


def test_six_algebras_reach_the_second_phase(report):
    reached = set()
    for a in report.algebras:
        for c in a.chains:
            dist = apply_chain(c.chain_id)
            if dist.stage.all_sl2() and not prune(c.end_stats, 1):
                reached.add(a.key.split("(")[0] + "(" + a.key.split("(")[1])
    names = {k.split(")")[0] + ")" for k in reached}
    assert names == {"sl(2|1)", "sl(2|2)", "osp(3|2)", "osp(3|4)", "osp(5|2)",
                     "osp(4|2)"}


def test_pruned_nodes_are_sound(report):
    """Spot check: no pruned subtree hides a target match within two more ops."""
    pruned = []
    for a in report.algebras:
        for c in a.chains:
            for plan, violations in c.pruned:
                pruned.append((c.chain_id, plan))
    rng = random.Random(99)
    sample = rng.sample(pruned, min(20, len(pruned)))
    for chain_id, plan in sample:
        state = apply_plan(chain_id, list(plan))
        frontier = [(state, 0)]
        while frontier:
            st, depth = frontier.pop()
            if depth >= 2:
                continue
            for op in available_ops(st):
                child = apply_op(st, op)
                if all(e.dim() <= 6 for e in child.entries):
                    assert solve_freezing(st, op) == []
                frontier.append((child, depth + 1))


def test_enumeration_respects_plan_constraints(report):
    c1 = report.chain_report("osp(5|2)/1")
    for node in c1.option_nodes:
        per_slot = {}
        for op in node.plan:
            per_slot.setdefault(op.slot, []).append(op.kind)
        for kinds in per_slot.values():
            assert kinds.count("soft") <= 1
            assert kinds.count("strong") + kinds.count("strong_after_soft") <= 1
            if "strong_after_soft" in kinds:
                assert kinds.index("soft") < kinds.index("strong_after_soft")
