"""Second-phase breaking calculus on direct sums of sl(2) factors.

Each sl(2) slot of a multiplet is in one of three states:

* ``("u", 2s)``   unbroken spin-s factor, dimension 2s+1;
* ``("o", 2|m|)`` soft-broken (Lz^2 eigenvalue label), dimension 2 when
  |m| > 0 and 1 when m = 0; the +-m pair counts as one multiplet;
* ``("s", 2m)``   strong-broken (Lz eigenvalue label, signed), dimension 1.

Values are stored doubled so half-integer spins stay integral.  Breaking
operations apply distribution-wide; exempting individual multiplets is the
job of final-step freezing in the search layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .embed_chains import Distribution
from .lie_core import build_root_system, casimir2, fr

Slot = tuple  # (state, value)


class SlotError(ValueError):
    """Breaking applied to a slot in the wrong state."""


def slot_dim(slot: Slot) -> int:
    state, v = slot
    if state == "u":
        return v + 1
    if state == "o":
        return 2 if v else 1
    if state == "s":
        return 1
    raise SlotError(f"unknown slot state {slot}")


def slot_conjugate(slot: Slot) -> Slot:
    state, v = slot
    return ("s", -v) if state == "s" else slot


def render_slot(slot: Slot) -> str:
    state, v = slot
    if state == "u":
        return str(v)
    if v == 0:
        return "0"
    if state == "o":
        return f"(±{v})"
    return f"(+{v})" if v > 0 else f"(-{-v})"


def soft_break_slot(slot: Slot):
    """Soft breaking of one unbroken slot: s doublets, plus a singlet when
    the spin is integral."""
    state, v = slot
    if state != "u":
        raise SlotError(f"soft breaking needs an unbroken slot, got {slot}")
    return [("o", k) for k in range(v, -1, -2)]


def strong_break_slot(slot: Slot):
    """Strong breaking: an unbroken slot shatters into 2s+1 singlets; a soft
    slot splits its +-m pair."""
    state, v = slot
    if state == "u":
        return [("s", k) for k in range(v, -v - 1, -2)]
    if state == "o":
        return [("s", v), ("s", -v)] if v else [("s", 0)]
    raise SlotError(f"slot already strong-broken: {slot}")


@dataclass(frozen=True)
class Multiplet:
    """Product of slot states with a multiplicity and its ancestry."""

    slots: tuple
    mult: int
    history: tuple

    def dim(self) -> int:
        d = 1
        for s in self.slots:
            d *= slot_dim(s)
        return d

    def render(self) -> str:
        return "-".join(render_slot(s) for s in self.slots)

    def conjugate(self) -> "Multiplet":
        return Multiplet(tuple(slot_conjugate(s) for s in self.slots),
                         self.mult, self.history)


@dataclass(frozen=True)
class Phase2State:
    """A distribution of multiplets over named sl(2) slots."""

    slot_names: tuple
    stages: tuple    # StageAlgebra history from the chain, for ancestry lookups
    entries: tuple   # Multiplet

    def count(self) -> int:
        return sum(e.mult for e in self.entries)

    def total_dim(self) -> int:
        return sum(e.mult * e.dim() for e in self.entries)


def from_distribution(dist: Distribution) -> Phase2State:
    """Adopt an all-sl(2) chain end as the phase-2 starting state."""
    stage = dist.stage
    if not stage.all_sl2():
        raise SlotError(f"stage {stage.names} is not a sum of sl(2) factors")
    entries = []
    for e in dist.entries:
        slots = tuple(("u", lab[0]) for lab in e.labels)
        entries.append(Multiplet(slots, e.mult, e.history + (e.labels,)))
    return Phase2State(stage.names, dist.stages, tuple(entries))


def break_multiplet(m: Multiplet, kind: str, idx: int):
    """All pieces of one multiplet under a soft or strong break of slot ``idx``."""
    if kind == "soft":
        pieces = soft_break_slot(m.slots[idx])
    elif kind in ("strong", "strong_after_soft"):
        pieces = strong_break_slot(m.slots[idx])
    else:
        raise SlotError(f"unknown breaking kind {kind!r}")
    return [Multiplet(m.slots[:idx] + (p,) + m.slots[idx + 1:], m.mult, m.history)
            for p in pieces]


@dataclass(frozen=True)
class PhaseOp:
    """One distribution-wide breaking operation, by slot name."""

    kind: str  # "soft" | "strong" | "strong_after_soft"
    slot: str

    def render(self) -> str:
        return f"{self.kind}:{self.slot}"


def apply_op(state: Phase2State, op: PhaseOp) -> Phase2State:
    idx = state.slot_names.index(op.slot)
    want = {"soft": "u", "strong": "u", "strong_after_soft": "o"}[op.kind]
    for e in state.entries:
        if e.slots[idx][0] != want:
            raise SlotError(
                f"{op.render()} needs state {want!r} in slot {op.slot}, "
                f"found {e.slots[idx]}")
    entries = []
    for e in state.entries:
        entries.extend(break_multiplet(e, op.kind, idx))
    return Phase2State(state.slot_names, state.stages, tuple(entries))


def available_ops(state: Phase2State):
    """Operations applicable to the current slot states (uniform across entries)."""
    ops = []
    for i, name in enumerate(state.slot_names):
        st = state.entries[0].slots[i][0] if state.entries else "u"
        if st == "u":
            ops.append(PhaseOp("soft", name))
            ops.append(PhaseOp("strong", name))
        elif st == "o":
            ops.append(PhaseOp("strong_after_soft", name))
    return ops


@dataclass(frozen=True)
class Stats:
    """Summary statistics driving the exclusion criteria."""

    n_multiplets: int
    d3: int
    n_singlets: int
    n_odd: int
    total_pairing: bool
    dim_histogram: tuple  # sorted ((dim, count), ...)

    def histogram(self) -> dict:
        return dict(self.dim_histogram)


def _pairing(items) -> bool:
    """items: iterable of (key, conjugate key, count)."""
    counts: dict = {}
    for key, conj, n in items:
        cls = min(key, conj)
        counts[cls] = counts.get(cls, 0) + n
    return bool(counts) and all(n % 2 == 0 for n in counts.values())


def phase2_stats(state: Phase2State) -> Stats:
    dims = {}
    d3 = singlets = odd = 0
    pairing_items = []
    for e in state.entries:
        d = e.dim()
        dims[d] = dims.get(d, 0) + e.mult
        if d % 3 == 0:
            d3 += d * e.mult
        if d == 1:
            singlets += e.mult
        if d % 2 == 1:
            odd += e.mult
        pairing_items.append((e.slots, e.conjugate().slots, e.mult))
    return Stats(state.count(), d3, singlets, odd, _pairing(pairing_items),
                 tuple(sorted(dims.items(), reverse=True)))


def distribution_stats(dist: Distribution) -> Stats:
    dims = {}
    d3 = singlets = odd = 0
    pairing_items = []
    stage = dist.stage
    total = 0
    for e in dist.entries:
        d = stage.dimension(e.labels)
        total += e.mult
        dims[d] = dims.get(d, 0) + e.mult
        if d % 3 == 0:
            d3 += d * e.mult
        if d == 1:
            singlets += e.mult
        if d % 2 == 1:
            odd += e.mult
        pairing_items.append((e.labels, stage.conjugate(e.labels), e.mult))
    return Stats(total, d3, singlets, odd, _pairing(pairing_items),
                 tuple(sorted(dims.items(), reverse=True)))


@dataclass(frozen=True)
class Couplings:
    """Coefficients of the model Hamiltonian, all exact rationals."""

    h0: Fraction = Fraction(0)
    lam: Fraction = Fraction(0)
    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a12: Fraction = Fraction(0)
    b3: Fraction = Fraction(0)
    g12: Fraction = Fraction(0)

    @classmethod
    def of(cls, *vals):
        return cls(*(fr(v) for v in vals))


class AncestryError(ValueError):
    """Multiplet history lacks a stage the Hamiltonian needs."""


def _stage_labels(state: Phase2State, m: Multiplet, names) -> tuple:
    for stage, labels in zip(state.stages, m.history):
        if stage.names == names:
            return labels
    raise AncestryError(f"no ancestor stage {names} in {m.history}")


def _spin_term(two_s: int) -> Fraction:
    s = Fraction(two_s, 2)
    return s * (s + 1)


def _mz2(slot: Slot, what: str) -> Fraction:
    state, v = slot
    if state == "u":
        raise AncestryError(f"{what} needs a broken slot, found unbroken {slot}")
    return Fraction(v, 2) ** 2


def hamiltonian_eigenvalue(state: Phase2State, m: Multiplet, c: Couplings) -> Fraction:
    """Eigenvalue of the model Hamiltonian on one final multiplet.

    H = H0 + lam C2(so(5)) + a1 L1^2 + a2 L2^2 + a3 L3^2 + a12 (L1+L2)^2
        + b3 L3z^2 + g12 ((L1+L2)^2 - 2) (L1z+L2z)^2,
    with L^2 eigenvalues s(s+1) and the (L1+L2)^2 - 2 factor read as
    s12(s12+1) - 2.
    """
    so5 = _stage_labels(state, m, ("sp(2)", "so(5)"))[1]
    spins = _stage_labels(state, m, ("1", "2", "3"))
    value = c.h0 + c.lam * casimir2(build_root_system("B", 2), so5)
    for coeff, lab in zip((c.a1, c.a2, c.a3), spins):
        value += coeff * _spin_term(lab[0])
    s12 = None
    if c.a12 or c.g12:
        s12 = _stage_labels(state, m, ("12", "3"))[0][0]
        value += c.a12 * _spin_term(s12)
    if c.b3:
        idx = state.slot_names.index("3")
        value += c.b3 * _mz2(m.slots[idx], "b3 term")
    if c.g12:
        idx = state.slot_names.index("12")
        value += c.g12 * (_spin_term(s12) - 2) * _mz2(m.slots[idx], "g12 term")
    return value
