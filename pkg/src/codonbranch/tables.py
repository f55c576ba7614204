"""Branching-table construction, rendering, and golden-fixture comparison.

Tables 1-3 are the first-step branchings per algebra; tables 4, 5 and 9 are
chain branchings rendered as trees (one column per stage); tables 6-8 show
the three surviving second-phase schemes, with the multiplets frozen at the
last step marking the rows they would otherwise have produced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .embed_chains import apply_chain
from .phase2 import (
    Multiplet,
    PhaseOp,
    apply_op,
    break_multiplet,
    from_distribution,
)
from .search import FreezeMask, freeze_groups, solve_freezing
from .super_branch import branch_to_even, catalog_entry


def render_labels(labels) -> str:
    return "-".join("(" + ",".join(str(v) for v in lab) + ")" for lab in labels)


def render_hw(labels) -> str:
    return ",".join(str(x) for x in labels)


@dataclass
class Node:
    label: str
    dim: int
    mult: int = 1
    frozen: bool = False
    neutral: bool = False
    children: list = field(default_factory=list)

    def to_dict(self):
        d = {"label": self.label, "dim": self.dim}
        if self.mult != 1:
            d["mult"] = self.mult
        if self.frozen:
            d["frozen"] = True
        if self.neutral:
            d["neutral"] = True
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(d["label"], d["dim"], d.get("mult", 1), d.get("frozen", False),
                   d.get("neutral", False),
                   [cls.from_dict(c) for c in d.get("children", ())])

    def canonical(self):
        """Comparison form: freeze marks count only where freezing has an
        effect (a node whose single piece keeps its dimension is a no-op),
        and only on nodes that break (leaves inherit their parent's mark)."""
        noop = len(self.children) == 1 and self.children[0].dim == self.dim
        frozen = self.frozen and bool(self.children) and not noop
        return (self.label, self.dim, self.mult, frozen,
                tuple(sorted(c.canonical() for c in self.children)))


@dataclass
class TableDoc:
    table: int
    title: str
    columns: tuple
    rows: list  # Node list (trees) or flat row dicts for tables 1-3
    kind: str   # "branch" | "chain" | "scheme"
    meta: dict = field(default_factory=dict)

    def to_dict(self):
        rows = [r.to_dict() if isinstance(r, Node) else r for r in self.rows]
        return {"table": self.table, "title": self.title, "kind": self.kind,
                "columns": list(self.columns), "meta": self.meta, "rows": rows}

    @classmethod
    def from_dict(cls, d):
        rows = [Node.from_dict(r) if d["kind"] != "branch" else r
                for r in d["rows"]]
        return cls(d["table"], d["title"], tuple(d["columns"]), rows,
                   d["kind"], d.get("meta", {}))


def emit_json(doc: TableDoc) -> str:
    return json.dumps(doc.to_dict(), indent=1, sort_keys=True) + "\n"


def parse_json(text: str) -> TableDoc:
    return TableDoc.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# tables 1-3: first-step branchings

_TABLE_REPS = {
    1: ["sl(2|1)", "sl(3|1)", "sl(4|1)", "sl(6|1)"],
    2: ["sl(2|2)(3,2,0)", "sl(2|2)(1,3,1)", "sl(3|2)", "osp(2|4)", "osp(2|6)"],
    3: ["osp(3|2)", "osp(3|4)", "osp(5|2)", "osp(4|2)(5,0,0)", "osp(4|2)(7/2,0,1)"],
}

_TABLE_CHAINS = {4: "osp(3|4)/3", 5: "osp(5|2)/3", 9: "osp(4|2)(5,0,0)/3"}

_TABLE_SCHEMES = {6: ("osp(5|2)/3", ("soft:3",), "soft:12"),
                  7: ("osp(5|2)/3", ("soft:3",), "strong:12"),
                  8: ("osp(5|2)/3", ("soft:3",), "strong_after_soft:3")}


def build_branch_table(table: int) -> TableDoc:
    rows = []
    for key in _TABLE_REPS[table]:
        entry = catalog_entry(key)
        sa = entry.build()
        branch = branch_to_even(sa, entry.labels)
        rows.append({
            "algebra": entry.algebra,
            "highest_weight": render_hw(entry.labels),
            "entries": [{"labels": render_labels(e.labels), "mult": e.mult,
                         "dim": e.dim(sa)} for e in branch],
        })
    return TableDoc(table, f"first-step branching (table {table})",
                    ("algebra", "highest_weight", "labels", "dim"), rows, "branch")


def _chain_tree(chain_id: str):
    dist = apply_chain(chain_id)
    columns = tuple("+".join(s.names) for s in dist.stages)
    root_children: list = []
    index: dict = {}
    for e in dist.entries:
        path = e.history + (e.labels,)
        parent_key = ()
        children = root_children
        for depth, labels in enumerate(path):
            stage = dist.stages[depth]
            key = parent_key + (labels,)
            if key not in index:
                node = Node(stage.render(labels), stage.dimension(labels), e.mult)
                index[key] = node
                children.append(node)
            elif depth == len(path) - 1:
                index[key].mult += e.mult
            node = index[key]
            children = node.children
            parent_key = key
    return columns, root_children


def build_chain_table_doc(table: int) -> TableDoc:
    chain_id = _TABLE_CHAINS[table]
    columns, tree = _chain_tree(chain_id)
    return TableDoc(table, f"chain branching (table {table})", columns, tree,
                    "chain", {"chain": chain_id})


def build_scheme_table(table: int, display_mask: FreezeMask | None = None) -> TableDoc:
    chain_id, plan, final = _TABLE_SCHEMES[table]
    state = from_distribution(apply_chain(chain_id))
    for token in plan:
        kind, _, slot = token.partition(":")
        state = apply_op(state, PhaseOp(kind, slot))
    kind, _, slot = final.partition(":")
    final_op = PhaseOp(kind, slot)
    masks = solve_freezing(state, final_op)
    if display_mask is None:
        if len(masks) != 1:
            raise ValueError(f"table {table}: expected a unique mask, got {len(masks)}")
        display_mask = masks[0]
    frozen_groups = {g for g, _, _ in display_mask.frozen}
    neutral_groups = {g.render() for g in freeze_groups(state, final_op) if g.neutral}

    index: dict = {}
    roots: list = []
    for e in state.entries:
        # Columns: sl(2)^3 labels, merged-slot labels, current state, pieces.
        sl3 = e.history[1]
        merged = e.history[2]
        path = [("-".join(str(l[0]) for l in sl3), _labels_dim(sl3)),
                ("-".join(str(l[0]) for l in merged), _labels_dim(merged))]
        parent_key = ()
        children = roots
        for label, dim in path:
            key = parent_key + (label,)
            if key not in index:
                node = Node(label, dim)
                index[key] = node
                children.append(node)
            node = index[key]
            children = node.children
            parent_key = key
        render = e.render()
        me = Node(render, e.dim(), e.mult,
                  frozen=render in frozen_groups,
                  neutral=render in neutral_groups)
        children.append(me)
        for piece in break_multiplet(Multiplet(e.slots, 1, ()), final_op.kind,
                                     state.slot_names.index(final_op.slot)):
            me.children.append(Node(piece.render(), piece.dim(),
                                    frozen=me.frozen, neutral=me.neutral))
    columns = ("sl(2)^3", "+".join(state.slot_names), "after " + " ".join(plan),
               "final " + final)
    return TableDoc(table, f"second-phase scheme (table {table})", columns, roots,
                    "scheme", {"chain": chain_id, "plan": list(plan), "final": final,
                               "mask": display_mask.render()})


def _labels_dim(labels):
    d = 1
    for lab in labels:
        d *= lab[0] + 1
    return d


def build_table(table: int) -> TableDoc:
    if table in _TABLE_REPS:
        return build_branch_table(table)
    if table in _TABLE_CHAINS:
        return build_chain_table_doc(table)
    if table in _TABLE_SCHEMES:
        return build_scheme_table(table)
    raise KeyError(f"no table {table}; valid ids are 1..9")


# ---------------------------------------------------------------------------
# rendering


def render_text(doc: TableDoc) -> str:
    out = [f"table {doc.table}: {doc.title}"]
    if doc.kind == "branch":
        for row in doc.rows:
            out.append(f"{row['algebra']}  highest weight ({row['highest_weight']})")
            for e in row["entries"]:
                mult = f"{e['mult']} x " if e["mult"] != 1 else ""
                out.append(f"    {mult}{e['labels']}  d={e['dim']}")
    else:
        out.append("columns: " + " -> ".join(doc.columns))
        if "mask" in doc.meta:
            out.append("frozen at last step: " + doc.meta["mask"])

        def walk(node, depth):
            mark = "  *frozen*" if node.frozen else ""
            mult = f"{node.mult} x " if node.mult != 1 else ""
            out.append("    " * depth + f"{mult}{node.label}  d={node.dim}{mark}")
            for c in sorted(node.children, key=lambda n: (-n.dim, n.label)):
                walk(c, depth + 1)

        for node in doc.rows:
            walk(node, 0)
    return "\n".join(out) + "\n"


def render_csv(doc: TableDoc) -> str:
    lines = ["stage,label,dim,multiplicity,d3_running"]
    if doc.kind == "branch":
        running: dict = {}
        for row in doc.rows:
            stage = row["algebra"] + "(" + row["highest_weight"] + ")"
            running[stage] = 0
            for e in row["entries"]:
                if e["dim"] % 3 == 0:
                    running[stage] += e["dim"] * e["mult"]
                lines.append(f"{stage},{e['labels']},{e['dim']},{e['mult']},{running[stage]}")
    else:
        per_stage = [0] * len(doc.columns)

        def walk(node, depth):
            if node.dim % 3 == 0:
                per_stage[depth] += node.dim * node.mult
            lines.append(f"{doc.columns[depth]},{node.label},{node.dim},"
                         f"{node.mult},{per_stage[depth]}")
            for c in sorted(node.children, key=lambda n: (-n.dim, n.label)):
                walk(c, depth + 1)

        for node in doc.rows:
            walk(node, 0)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# golden comparison


def table_diff(got: TableDoc, want: TableDoc) -> list:
    """Cell-level differences between two table documents."""
    diffs = []
    if got.table != want.table or got.kind != want.kind:
        return [f"table identity differs: {got.table}/{got.kind} vs {want.table}/{want.kind}"]
    if got.kind == "branch":
        for grow, wrow in zip(got.rows, want.rows):
            if grow["algebra"] != wrow["algebra"] or \
                    grow["highest_weight"] != wrow["highest_weight"]:
                diffs.append(f"row header: {grow['algebra']} vs {wrow['algebra']}")
                continue
            gset = sorted((e["labels"], e["mult"], e["dim"]) for e in grow["entries"])
            wset = sorted((e["labels"], e["mult"], e["dim"]) for e in wrow["entries"])
            if gset != wset:
                for cell in sorted(set(wset) - set(gset)):
                    diffs.append(f"{grow['algebra']}: missing {cell}")
                for cell in sorted(set(gset) - set(wset)):
                    diffs.append(f"{grow['algebra']}: unexpected {cell}")
        if len(got.rows) != len(want.rows):
            diffs.append(f"row count {len(got.rows)} vs {len(want.rows)}")
        return diffs
    gset = sorted(n.canonical() for n in got.rows)
    wset = sorted(n.canonical() for n in want.rows)
    if gset != wset:
        for cell in wset:
            if cell not in gset:
                diffs.append(f"missing subtree {cell[0]} d={cell[1]}")
        for cell in gset:
            if cell not in wset:
                diffs.append(f"unexpected subtree {cell[0]} d={cell[1]}")
        if not diffs:
            diffs.append("tree structure differs")
    return diffs
