"""Stabilization moves on trisection states.

A stabilization enlarges one handlebody H_i by a neighbourhood of a
boundary-parallel arc lying in the opposite surface S_jk.  At the level
of the data kept here the move comes in two flavours, according to
whether the arc ends on one component of the boundary link or on two:

====================  ===========================  =========================
arc                   legal when                   effect
====================  ===========================  =========================
SameComponent(c)      g_jk >= 1                    g_jk -= 1; c splits into
                                                   two fresh components
DistinctComponents    b >= 2                       g_ij += 1; g_ik += 1; the
(c1, c2)                                           pair merges into one
                                                   fresh component
====================  ===========================  =========================

Either way h_i grows by exactly 1 while h_j and h_k are unchanged, and b
changes by exactly 1.  Formal destabilizations run the same arithmetic
backwards; they certify nothing about an actual destabilizing disk, and
every destabilized state carries that caveat in its label.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations

from .core import (
    SurfaceGenera,
    TrisectionError,
    TrisectionState,
    other_two,
)

DESTAB_CAVEAT = (
    "formal destab: parameter-level inverse only; no destabilizing disk certified"
)


class IllegalMove(TrisectionError):
    """The move's legality condition fails in the given state."""


@dataclass(frozen=True, slots=True)
class SameComponent:
    """Arc with both endpoints on one boundary-link component."""

    component: str


@dataclass(frozen=True, slots=True)
class DistinctComponents:
    """Arc joining two different boundary-link components (unordered pair)."""

    first: str
    second: str

    def __post_init__(self) -> None:
        if self.first == self.second:
            raise ValueError("a DistinctComponents arc needs two distinct components")
        if self.second < self.first:
            lo, hi = self.second, self.first
            object.__setattr__(self, "first", lo)
            object.__setattr__(self, "second", hi)


Arc = SameComponent | DistinctComponents


@dataclass(frozen=True, slots=True)
class StabMove:
    """Stabilize handlebody ``handlebody`` along ``arc`` in its opposite surface."""

    handlebody: int
    arc: Arc

    def __post_init__(self) -> None:
        other_two(self.handlebody)


@dataclass(frozen=True, slots=True)
class DestabMove:
    """Formal inverse of a stabilization; same shape as :class:`StabMove`.

    A ``DistinctComponents`` arc re-merges the named pair and undoes a
    SameComponent stabilization; a ``SameComponent`` arc splits the named
    component and undoes a DistinctComponents stabilization.
    """

    handlebody: int
    arc: Arc

    def __post_init__(self) -> None:
        other_two(self.handlebody)


@dataclass(frozen=True, slots=True)
class MoveRecord:
    """One applied move: operation, parameters, and the labels it touched."""

    op: str
    handlebody: int
    arc: Arc
    created: tuple[str, ...]
    removed: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.op not in ("stab", "destab", "fake_stab"):
            raise ValueError(f"unknown move op {self.op!r}")
        other_two(self.handlebody)


MoveScript = tuple[MoveRecord, ...]


def legal_moves(state: TrisectionState) -> list[StabMove]:
    """All legal stabilizations, in a fixed order.

    For each handlebody index in ascending order: the SameComponent moves
    (one per component, components sorted) when the opposite surface has
    positive genus, then the DistinctComponents moves (one per unordered
    pair, pairs sorted) when b >= 2.
    """
    moves: list[StabMove] = []
    labels = sorted(state.link.components)
    for i in (1, 2, 3):
        if state.genera.opposite(i) >= 1:
            moves.extend(StabMove(i, SameComponent(c)) for c in labels)
        if state.b >= 2:
            moves.extend(
                StabMove(i, DistinctComponents(lo, hi))
                for lo, hi in combinations(labels, 2)
            )
    return moves


def is_legal(state: TrisectionState, move: StabMove | DestabMove) -> bool:
    try:
        _check_legal(state, move)
    except IllegalMove:
        return False
    return True


def _check_legal(state: TrisectionState, move: StabMove | DestabMove) -> None:
    i = move.handlebody
    j, k = other_two(i)
    arc = move.arc
    if isinstance(arc, SameComponent):
        present = (arc.component,)
    else:
        present = (arc.first, arc.second)
    for label in present:
        if label not in state.link.components:
            raise IllegalMove(f"component {label!r} is not in the boundary link")
    if isinstance(move, StabMove):
        if isinstance(arc, SameComponent) and state.genera.between(j, k) < 1:
            raise IllegalMove(
                f"stabilizing H{i} along a one-component arc needs g{j}{k} >= 1"
            )
        if isinstance(arc, DistinctComponents) and state.b < 2:
            raise IllegalMove(
                f"stabilizing H{i} along a two-component arc needs b >= 2"
            )
    else:
        if isinstance(arc, DistinctComponents) and state.b < 2:
            raise IllegalMove(f"formal destab of H{i} merging components needs b >= 2")
        if isinstance(arc, SameComponent) and (
            state.genera.between(i, j) < 1 or state.genera.between(i, k) < 1
        ):
            raise IllegalMove(
                f"formal destab of H{i} splitting a component needs "
                f"g{min(i, j)}{max(i, j)} >= 1 and g{min(i, k)}{max(i, k)} >= 1"
            )


def apply_stabilization(state: TrisectionState, move: StabMove) -> TrisectionState:
    """Apply one stabilization, returning the new state.

    Raises :class:`IllegalMove` when the arc's legality condition fails
    or names a missing component.  The applied record is appended to the
    state's history.
    """
    if not isinstance(move, StabMove):
        raise IllegalMove(f"expected a StabMove, got {type(move).__name__}")
    _check_legal(state, move)
    i = move.handlebody
    j, k = other_two(i)
    arc = move.arc
    if isinstance(arc, SameComponent):
        link, created = state.link.split(arc.component)
        genera = state.genera.with_between(j, k, state.genera.between(j, k) - 1)
        removed: tuple[str, ...] = (arc.component,)
    else:
        link, merged = state.link.merge(arc.first, arc.second)
        genera = state.genera.with_between(i, j, state.genera.between(i, j) + 1)
        genera = genera.with_between(i, k, genera.between(i, k) + 1)
        created = (merged,)
        removed = (arc.first, arc.second)
    record = MoveRecord("stab", i, arc, created, removed)
    new = replace(state, genera=genera, link=link, history=state.history + (record,))
    _assert_single_move_delta(state, new, i)
    return new


def apply_destabilization(state: TrisectionState, move: DestabMove) -> TrisectionState:
    """Apply one formal destabilization, returning the new state.

    This is parameter bookkeeping only: legality means the genus and
    boundary arithmetic can run backwards, not that a destabilizing disk
    exists.  The result's label records that caveat.
    """
    if not isinstance(move, DestabMove):
        raise IllegalMove(f"expected a DestabMove, got {type(move).__name__}")
    _check_legal(state, move)
    i = move.handlebody
    j, k = other_two(i)
    arc = move.arc
    if isinstance(arc, DistinctComponents):
        link, merged = state.link.merge(arc.first, arc.second)
        genera = state.genera.with_between(j, k, state.genera.between(j, k) + 1)
        created: tuple[str, ...] = (merged,)
        removed: tuple[str, ...] = (arc.first, arc.second)
    else:
        link, created = state.link.split(arc.component)
        genera = state.genera.with_between(i, j, state.genera.between(i, j) - 1)
        genera = genera.with_between(i, k, genera.between(i, k) - 1)
        removed = (arc.component,)
    record = MoveRecord("destab", i, arc, created, removed)
    label = state.label
    if DESTAB_CAVEAT not in label:
        label = f"{label} | {DESTAB_CAVEAT}" if label else DESTAB_CAVEAT
    new = TrisectionState(genera, link, state.history + (record,), label)
    _assert_single_move_delta(new, state, i)
    return new


def _assert_single_move_delta(before: TrisectionState, after: TrisectionState, i: int) -> None:
    # Shared tripwire: ``after`` must sit exactly one stabilization above
    # ``before`` on handlebody i.
    j, k = other_two(i)
    assert after.handlebody_genus(i) == before.handlebody_genus(i) + 1
    assert after.handlebody_genus(j) == before.handlebody_genus(j)
    assert after.handlebody_genus(k) == before.handlebody_genus(k)
    assert abs(after.b - before.b) == 1


def inverse_of(record: MoveRecord) -> StabMove | DestabMove:
    """The move undoing an applied record, phrased in the record's output labels.

    A stab that split a component is undone by the destab re-merging the
    two labels it created, and vice versa.  Compound ``fake_stab`` records
    have no single inverse move.
    """
    if record.op == "stab":
        if isinstance(record.arc, SameComponent):
            return DestabMove(record.handlebody, DistinctComponents(*record.created))
        return DestabMove(record.handlebody, SameComponent(record.created[0]))
    if record.op == "destab":
        if isinstance(record.arc, DistinctComponents):
            return StabMove(record.handlebody, SameComponent(record.created[0]))
        return StabMove(record.handlebody, DistinctComponents(*record.created))
    raise ValueError("a fake_stab record has no single inverse move")


def canonical_same_arc(state: TrisectionState) -> SameComponent:
    """The SameComponent arc on the lexicographically smallest component."""
    return SameComponent(min(state.link.components))


def canonical_distinct_arc(state: TrisectionState) -> DistinctComponents:
    """The DistinctComponents arc on the lexicographically smallest pair."""
    lo, hi = sorted(state.link.components)[:2]
    return DistinctComponents(lo, hi)


def fake_heegaard_stab(state: TrisectionState) -> TrisectionState:
    """Stabilize H2 and then H1 so that only the Heegaard surface changes.

    The compound imitates a standard stabilization of the splitting
    surface S12: the net effect on (g12, g13, g23, b) is exactly
    (+1, 0, 0, 0), so the profile moves by (+1,+1,0;0).  Two variants,
    chosen by the current b.  The first arc always lies in S13 (opposite
    H2) and the second in S23 (opposite H1):

    * b == 1: a one-component arc for H2 (needs g13 >= 1), then the
      two-component arc for H1 joining the pair the split just created.
    * b >= 2: a two-component arc for H2 on the smallest pair, then a
      one-component arc for H1 on the component that merge created.

    Both constituent moves are recorded in the history.  Raises
    :class:`IllegalMove` when neither variant applies (b == 1 and
    g13 == 0, as in the trivial state).
    """
    if state.b == 1:
        if state.genera.g13 < 1:
            raise IllegalMove(
                "fake Heegaard stabilization with b == 1 needs g13 >= 1"
            )
        mid = apply_stabilization(state, StabMove(2, canonical_same_arc(state)))
        result = apply_stabilization(mid, StabMove(1, canonical_distinct_arc(mid)))
    else:
        mid = apply_stabilization(state, StabMove(2, canonical_distinct_arc(state)))
        fresh = mid.history[-1].created[0]
        result = apply_stabilization(mid, StabMove(1, SameComponent(fresh)))
    delta = (
        result.genera.g12 - state.genera.g12,
        result.genera.g13 - state.genera.g13,
        result.genera.g23 - state.genera.g23,
        result.b - state.b,
    )
    assert delta == (1, 0, 0, 0)
    return result


def canonical_balance_move(state: TrisectionState) -> StabMove:
    """Stabilize the currently smallest handlebody (largest index on ties).

    The arc lies in the surface shared by the other two handlebodies; a
    two-component arc is chosen whenever b >= 2.  This is the move
    :func:`balance` repeats, and on an already balanced state it is the
    canonical way to grow the common genus by one.
    """
    profile = state.profile
    ordered = sorted((1, 2, 3), key=lambda i: (-profile.genus(i), i))
    target = ordered[-1]
    if state.b >= 2:
        return StabMove(target, canonical_distinct_arc(state))
    return StabMove(target, canonical_same_arc(state))


def balance(state: TrisectionState) -> tuple[TrisectionState, MoveScript]:
    """Stabilize minimal handlebodies until all three genera agree.

    Each move raises the current minimum h by one, so the result has
    h' = max(h1, h2, h3) and the script has length 3*max - (h1+h2+h3).
    Two-component arcs are preferred whenever b >= 2, which keeps
    b' <= max(b, 2).  One-component arcs are always available in the
    remaining case: with b == 1 and h_i > h_k the shared surface S_ij
    satisfies 2*g_ij = h_i + h_j - h_k > 0.
    """
    start = state
    while not state.is_balanced:
        state = apply_stabilization(state, canonical_balance_move(state))
    script = state.history[len(start.history):]
    before, after = start.profile, state.profile
    expected_h = max(before.h1, before.h2, before.h3)
    assert (after.h1, after.h2, after.h3) == (expected_h,) * 3
    assert after.b <= max(before.b, 2)
    assert len(script) == 3 * expected_h - before.sum_h()
    return state, script


def drive_opposite_to_disk(
    state: TrisectionState, i: int
) -> tuple[TrisectionState, MoveScript]:
    """Stabilize H_i until its opposite surface S_jk is a disk (g_jk = 0, b = 1).

    Canonical order: a two-component arc whenever b >= 2, otherwise a
    one-component arc.  The script has length 2*g_jk + b - 1, i.e. the
    number of arcs in a maximal boundary-parallel system cutting S_jk
    into a disk.
    """
    j, k = other_two(i)
    start = state
    while not (state.genera.between(j, k) == 0 and state.b == 1):
        if state.b >= 2:
            move = StabMove(i, canonical_distinct_arc(state))
        else:
            move = StabMove(i, canonical_same_arc(state))
        state = apply_stabilization(state, move)
    script = state.history[len(start.history):]
    assert len(script) == 2 * start.genera.between(j, k) + start.b - 1
    return state, script


def build_heegaard(
    state: TrisectionState, i: int
) -> tuple[TrisectionState, int, MoveScript]:
    """Stabilize H_i until the trisection collapses to a Heegaard splitting.

    Once S_jk is a disk, H_j and H_k glue to a single handlebody and the
    splitting surface is the boundary of the enlarged H_i, so the
    splitting genus is the final h_i = h_j + h_k of the input.  Returns
    (final state, splitting genus, script).  On a balanced (h;b) input
    the script has exactly h moves and the genus is 2h.
    """
    j, k = other_two(i)
    final, script = drive_opposite_to_disk(state, i)
    genus = final.handlebody_genus(i)
    assert genus == state.handlebody_genus(j) + state.handlebody_genus(k)
    return final, genus, script
