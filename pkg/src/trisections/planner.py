"""Deterministic planning of a common stabilization for two trisections.

Any two trisections of the same manifold become isotopic after enough
stabilizations.  The planner emits one concrete, replayable script per
side realizing the standard route:

1. balance both sides, force b <= 2, and equalize the balanced genera
   (so both present the same (h;b));
2. stabilize H1 on each side until S23 is a disk, collapsing each
   trisection onto a Heegaard splitting;
3. apply ``rs_bound`` fake Heegaard stabilizations to each side.  The
   number of genuine Heegaard stabilizations needed to make the two
   splittings isotopic is not computable from the data held here, so it
   is a caller-supplied bound;
4. stabilize H3 until S12 is a disk;
5. stabilize H2 until S13 is a disk.

Every step is monotone (stabilizations only) and both sides end at
identical genera and profile.  The per-step scripts are packaged in a
:class:`PlanReport`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    OutOfDomain,
    Profile,
    SurfaceGenera,
    TrisectionError,
    TrisectionState,
    is_feasible,
    profile_of,
)
from .moves import (
    DestabMove,
    IllegalMove,
    MoveRecord,
    MoveScript,
    StabMove,
    apply_destabilization,
    apply_stabilization,
    balance,
    build_heegaard,
    canonical_balance_move,
    fake_heegaard_stab,
)


class TrivialInput(TrisectionError):
    """The planner refuses the trivial trisection as an input."""


class InfeasibleInput(TrisectionError):
    """A planner input fails the feasibility arithmetic."""


@dataclass(frozen=True, slots=True)
class PlanSteps:
    """The five per-side scripts, keyed by plan step."""

    step1_balance: MoveScript
    step2_build: MoveScript
    step3_fake: MoveScript
    step4_s12_to_disk: MoveScript
    step5_s13_to_disk: MoveScript

    def concatenated(self) -> MoveScript:
        return (
            self.step1_balance
            + self.step2_build
            + self.step3_fake
            + self.step4_s12_to_disk
            + self.step5_s13_to_disk
        )


@dataclass(frozen=True, slots=True)
class PlanReport:
    """Outcome of :func:`plan_common_stabilization`: scripts and endpoint."""

    rs_bound: int
    final_profile: Profile
    final_genera: SurfaceGenera
    a: PlanSteps
    b: PlanSteps


def replay(state: TrisectionState, script: MoveScript) -> TrisectionState:
    """Fold a script over a state, one record at a time.

    Record ops map to :func:`~trisections.moves.apply_stabilization`,
    :func:`~trisections.moves.apply_destabilization` and
    :func:`~trisections.moves.fake_heegaard_stab`.  An illegal record
    raises :class:`~trisections.moves.IllegalMove` naming the failing
    step (1-based).
    """
    for step, record in enumerate(script, start=1):
        try:
            if record.op == "stab":
                state = apply_stabilization(state, StabMove(record.handlebody, record.arc))
            elif record.op == "destab":
                state = apply_destabilization(state, DestabMove(record.handlebody, record.arc))
            elif record.op == "fake_stab":
                state = fake_heegaard_stab(state)
            else:
                raise IllegalMove(f"unknown op {record.op!r}")
        except IllegalMove as error:
            raise IllegalMove(f"script step {step}: {error}") from error
    return state


def _balance_capped(state: TrisectionState) -> TrisectionState:
    # Step-1 core for one side: balance, then knock b down to at most 2,
    # one canonical two-component stabilization plus re-balance per round.
    state, _ = balance(state)
    while state.b > 2:
        state = apply_stabilization(state, canonical_balance_move(state))
        state, _ = balance(state)
    return state


def _raise_balanced(state: TrisectionState) -> TrisectionState:
    # One climb round: grow the common genus of a balanced state by one.
    state = apply_stabilization(state, canonical_balance_move(state))
    state, _ = balance(state)
    return state


def _compound_record(before: TrisectionState, after: TrisectionState) -> MoveRecord:
    # One fake_stab record summarizing the two constituent moves between
    # ``before`` and ``after``: net component turnover, the H1 arc.
    removed = tuple(c for c in before.link.components if c not in after.link.components)
    created = tuple(c for c in after.link.components if c not in before.link.components)
    return MoveRecord("fake_stab", 1, after.history[-1].arc, created, removed)


def plan_common_stabilization(
    a: TrisectionState, b: TrisectionState, rs_bound: int
) -> PlanReport:
    """Plan stabilization scripts carrying both inputs to one endpoint.

    Pre-conditions: both inputs are non-trivial and ``rs_bound >= 0``.
    The report's two script bundles replay from the respective inputs to
    states with identical genera and profile.  Whether the endpoints are
    actually isotopic depends on ``rs_bound`` being large enough, which
    the caller must supply; the combinatorics here is exact either way.
    """
    if not isinstance(rs_bound, int) or rs_bound < 0:
        raise OutOfDomain(f"rs_bound must be a nonnegative integer, got {rs_bound!r}")
    for name, state in (("a", a), ("b", b)):
        if not is_feasible(profile_of(state)):
            raise InfeasibleInput(f"input {name} has an infeasible profile")
        if state.is_trivial:
            raise TrivialInput(
                f"input {name} is the trivial trisection; it admits no stabilization"
            )

    # Step 1: balance, cap b at 2, then equalize the balanced genera.
    # Raising the smaller side one genus per round must end with equal b
    # too: both b values lie in {1, 2} and share the parity opposite to h.
    side_a = _balance_capped(a)
    side_b = _balance_capped(b)
    while side_a.profile.h1 != side_b.profile.h1:
        if side_a.profile.h1 < side_b.profile.h1:
            side_a = _raise_balanced(side_a)
        else:
            side_b = _raise_balanced(side_b)
    assert side_a.profile == side_b.profile and side_a.b <= 2
    step1 = (
        side_a.history[len(a.history):],
        side_b.history[len(b.history):],
    )

    # Step 2: collapse each side onto a Heegaard splitting along S23.
    side_a, _, step2_a = build_heegaard(side_a, 1)
    side_b, _, step2_b = build_heegaard(side_b, 1)
    for side in (side_a, side_b):
        assert side.genera.g23 == 0 and side.b == 1
    assert len(step2_a) >= 1 and len(step2_b) >= 1

    # Step 3: the caller-supplied number of fake Heegaard stabilizations.
    step3_a: list[MoveRecord] = []
    step3_b: list[MoveRecord] = []
    for _ in range(rs_bound):
        after = fake_heegaard_stab(side_a)
        step3_a.append(_compound_record(side_a, after))
        side_a = after
    for _ in range(rs_bound):
        after = fake_heegaard_stab(side_b)
        step3_b.append(_compound_record(side_b, after))
        side_b = after

    # Steps 4 and 5: make S12 and then S13 into disks.
    side_a, _, step4_a = build_heegaard(side_a, 3)
    side_b, _, step4_b = build_heegaard(side_b, 3)
    side_a, _, step5_a = build_heegaard(side_a, 2)
    side_b, _, step5_b = build_heegaard(side_b, 2)

    assert side_a.genera == side_b.genera
    assert profile_of(side_a) == profile_of(side_b)
    return PlanReport(
        rs_bound=rs_bound,
        final_profile=profile_of(side_a),
        final_genera=side_a.genera,
        a=PlanSteps(step1[0], step2_a, tuple(step3_a), step4_a, step5_a),
        b=PlanSteps(step1[1], step2_b, tuple(step3_b), step4_b, step5_b),
    )
