"""Command-line interface: branchings, chains, schemes, search, golden tables."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import tables as tables_mod
from .embed_chains import ChainError, apply_chain
from .lie_core import InvalidLabelsError
from .phase2 import distribution_stats, phase2_stats
from .search import (
    apply_plan,
    full_search,
    match_target,
    report_summary,
    report_to_dict,
)
from .super_branch import CATALOG, branch_to_even, build_super


def _parse_hw(text: str):
    return tuple(Fraction(tok) for tok in text.split(","))


def _data_dir() -> str:
    env = os.environ.get("CODONBRANCH_DATA")
    if env:
        return env
    return os.path.join(os.path.dirname(__file__), "data")


def _catalog_diagram(entry):
    from .young_forms import osp_superdiagram_from_labels, sl_superdiagram
    if entry.diagram_rows:
        return sl_superdiagram(entry.diagram_rows)
    if entry.algebra in ("osp(4|2)", "osp(5|2)"):
        return osp_superdiagram_from_labels(entry.algebra, entry.labels)
    return None


def cmd_list_catalog(args) -> int:
    from .young_forms import render_diagram
    for e in CATALOG:
        sa = e.build()
        branch = branch_to_even(sa, e.labels)
        total = sum(x.mult * x.dim(sa) for x in branch)
        hw = ",".join(str(x) for x in e.labels)
        print(f"{e.key:22s} table {e.table}  highest weight ({hw})  dim {total}")
        if args.diagrams:
            diagram = _catalog_diagram(e)
            if diagram is not None:
                for line in render_diagram(diagram).splitlines():
                    print("    " + line)
    return 0


def cmd_branch(args) -> int:
    sa = build_super(args.algebra)
    hw = _parse_hw(args.hw)
    branch = branch_to_even(sa, hw)
    rows = [{"labels": tables_mod.render_labels(e.labels), "mult": e.mult,
             "dim": e.dim(sa)} for e in branch]
    if args.format == "structured":
        print(json.dumps({"algebra": args.algebra, "highest_weight": args.hw,
                          "entries": rows}, indent=1))
    elif args.format == "csv":
        print("stage,label,dim,multiplicity,d3_running")
        d3 = 0
        for r in rows:
            if r["dim"] % 3 == 0:
                d3 += r["dim"] * r["mult"]
            print(f"{args.algebra},{r['labels']},{r['dim']},{r['mult']},{d3}")
    else:
        print(f"{args.algebra} ({args.hw}) -> " + "+".join(sa.factor_names))
        for r in rows:
            mult = f"{r['mult']} x " if r["mult"] != 1 else ""
            print(f"  {mult}{r['labels']}  d={r['dim']}")
    return 0


def cmd_chain(args) -> int:
    dist = apply_chain(args.chain_id)
    stats = distribution_stats(dist)
    if args.format == "structured":
        doc = {"chain": args.chain_id,
               "stages": ["+".join(s.names) for s in dist.stages],
               "entries": [{"labels": dist.stage.render(e.labels),
                            "dim": dist.stage.dimension(e.labels), "mult": e.mult,
                            "history": [dist.stages[i].render(h)
                                        for i, h in enumerate(e.history)]}
                           for e in dist.entries],
               "stats": {"multiplets": stats.n_multiplets, "d3": stats.d3}}
        print(json.dumps(doc, indent=1))
    elif args.format == "csv":
        print("stage,label,dim,multiplicity,d3_running")
        d3 = 0
        stage = "+".join(dist.stage.names)
        for e in dist.entries:
            d = dist.stage.dimension(e.labels)
            if d % 3 == 0:
                d3 += d * e.mult
            print(f"{stage},{dist.stage.render(e.labels)},{d},{e.mult},{d3}")
    else:
        print(f"{args.chain_id}: " + " -> ".join("+".join(s.names) for s in dist.stages))
        for e in dist.entries:
            print(f"  {dist.stage.render(e.labels)}  d={dist.stage.dimension(e.labels)}")
        print(f"{stats.n_multiplets} multiplets, d3 = {stats.d3}")
    return 0


def cmd_phase2(args) -> int:
    plan = [tok for tok in (args.plan or "").split(",") if tok]
    state = apply_plan(args.chain_id, plan)
    stats = phase2_stats(state)
    if args.format == "structured":
        doc = {"chain": args.chain_id, "plan": plan,
               "entries": [{"state": e.render(), "dim": e.dim(), "mult": e.mult}
                           for e in state.entries],
               "stats": {"multiplets": stats.n_multiplets, "d3": stats.d3,
                         "histogram": {str(d): n for d, n in stats.dim_histogram},
                         "matches_target": match_target(stats)}}
        print(json.dumps(doc, indent=1))
    else:
        for e in state.entries:
            mult = f"{e.mult} x " if e.mult != 1 else ""
            print(f"  {mult}{e.render()}  d={e.dim()}")
        print(f"{stats.n_multiplets} multiplets, d3 = {stats.d3}, "
              f"histogram {dict(stats.dim_histogram)}")
    return 0


def cmd_search(args) -> int:
    rep = full_search()
    if args.algebra:
        rep.algebras = [a for a in rep.algebras if a.key.startswith(args.algebra)]
    if args.format == "structured":
        print(json.dumps(report_to_dict(rep), indent=1, ensure_ascii=False))
    else:
        print(report_summary(rep), end="")
    return 0


def cmd_tables(args) -> int:
    doc = tables_mod.build_table(args.id)
    if args.format == "structured":
        print(tables_mod.emit_json(doc), end="")
    elif args.format == "csv":
        print(tables_mod.render_csv(doc), end="")
    else:
        print(tables_mod.render_text(doc), end="")
    return 0


def cmd_verify_golden(args) -> int:
    data = _data_dir()
    failures = 0
    for t in range(1, 10):
        path = os.path.join(data, f"table{t}.json")
        try:
            with open(path, encoding="utf-8") as fh:
                want = tables_mod.parse_json(fh.read())
        except OSError as exc:
            print(f"table {t}: cannot read fixture: {exc}")
            failures += 1
            continue
        got = tables_mod.build_table(t)
        diffs = tables_mod.table_diff(got, want)
        if diffs:
            failures += 1
            print(f"table {t}: MISMATCH")
            for d in diffs:
                print(f"    {d}")
        else:
            print(f"table {t}: ok")
    from .embed_chains import export_registry
    reg_path = os.path.join(data, "embeddings.txt")
    try:
        with open(reg_path, encoding="utf-8") as fh:
            if fh.read() != export_registry():
                failures += 1
                print("embeddings.txt: MISMATCH")
            else:
                print("embeddings.txt: ok")
    except OSError as exc:
        failures += 1
        print(f"embeddings.txt: cannot read fixture: {exc}")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="codonbranch",
        description="Branching schemes of 64-dimensional typical codon "
                    "representations of basic classical Lie superalgebras.")
    sub = p.add_subparsers(dest="command", required=True)

    lc = sub.add_parser("list-catalog", help="list the codon representations")
    lc.add_argument("--diagrams", action="store_true",
                    help="show the superdiagram shapes where a conversion exists")

    b = sub.add_parser("branch", help="first-step branching of one representation")
    b.add_argument("--algebra", required=True, help='e.g. "osp(5|2)"')
    b.add_argument("--hw", required=True, help='comma-separated labels, e.g. "5/2,0,1"')
    b.add_argument("--format", choices=("text", "structured", "csv"), default="text")

    c = sub.add_parser("chain", help="apply a registered symmetry-breaking chain")
    c.add_argument("--chain-id", required=True)
    c.add_argument("--format", choices=("text", "structured", "csv"), default="text")

    ph = sub.add_parser("phase2", help="apply second-phase breaking operations")
    ph.add_argument("--chain-id", required=True)
    ph.add_argument("--plan", default="",
                    help='comma-separated ops like "soft:3,strong:12"')
    ph.add_argument("--format", choices=("text", "structured"), default="text")

    s = sub.add_parser("search", help="run the full scheme search")
    s.add_argument("--algebra", default="", help="restrict to one algebra key prefix")
    s.add_argument("--format", choices=("text", "structured"), default="text")

    t = sub.add_parser("tables", help="emit one of the branching tables 1..9")
    t.add_argument("--id", type=int, required=True, choices=range(1, 10))
    t.add_argument("--format", choices=("text", "structured", "csv"), default="text")

    sub.add_parser("verify-golden", help="recompute tables and diff the fixtures")
    return p


_COMMANDS = {
    "list-catalog": cmd_list_catalog,
    "branch": cmd_branch,
    "chain": cmd_chain,
    "phase2": cmd_phase2,
    "search": cmd_search,
    "tables": cmd_tables,
    "verify-golden": cmd_verify_golden,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ChainError, InvalidLabelsError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
