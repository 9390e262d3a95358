"""Brute-force exploration of the stabilization move graph.

Component labels never affect which moves are legal or how genera move,
so for search the engine shrinks a state to its parameter shadow: the
node (g12, g13, g23, b).  Each node has at most six successors (per
handlebody: one SameComponent move when the opposite surface has genus,
one DistinctComponents move when b >= 2), and every move raises
h1 + h2 + h3 by exactly 1, so the move graph is graded by that sum and
breadth-first search depth equals the sum difference.

The full labeled engine reappears only when a parameter path is realized
as a replayable :class:`~trisections.moves.MoveScript` on canonical
labels.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TypeVar

from .core import (
    LinkComponentSet,
    Profile,
    SurfaceGenera,
    TrisectionState,
    genera_from_profile,
    is_feasible,
    other_two,
)
from .moves import (
    MoveScript,
    StabMove,
    apply_stabilization,
    balance,
    build_heegaard,
    canonical_balance_move,
    canonical_distinct_arc,
    canonical_same_arc,
)

# A parameter-level move: (handlebody index, "same" | "distinct").
ParamMove = tuple[int, str]

_T = TypeVar("_T")
_U = TypeVar("_U")


@dataclass(frozen=True, slots=True, order=True)
class MoveGraphNode:
    """A trisection state with its component labels erased."""

    g12: int
    g13: int
    g23: int
    b: int

    def __post_init__(self) -> None:
        if min(self.g12, self.g13, self.g23) < 0 or self.b < 1:
            raise ValueError(f"not a valid parameter node: {self!r}")

    @classmethod
    def from_state(cls, state: TrisectionState) -> MoveGraphNode:
        g = state.genera
        return cls(g.g12, g.g13, g.g23, state.b)

    @classmethod
    def from_profile(cls, profile: Profile) -> MoveGraphNode:
        g = genera_from_profile(profile)
        return cls(g.g12, g.g13, g.g23, profile.b)

    def genera(self) -> SurfaceGenera:
        return SurfaceGenera(self.g12, self.g13, self.g23)

    def profile(self) -> Profile:
        return self.to_state().profile

    def to_state(self, label: str = "") -> TrisectionState:
        """The canonical labeled state for this node: components c0 .. c<b-1>."""
        return TrisectionState(self.genera(), LinkComponentSet.fresh(self.b), (), label)

    def sum_h(self) -> int:
        return 2 * (self.g12 + self.g13 + self.g23) + 3 * (self.b - 1)

    @property
    def is_trivial(self) -> bool:
        return (self.g12, self.g13, self.g23, self.b) == (0, 0, 0, 1)

    def successors(self) -> list[tuple[ParamMove, MoveGraphNode]]:
        """Legal parameter moves and their targets, in a fixed order.

        Per handlebody: the SameComponent effect (opposite genus down, b
        up) when the opposite surface has genus, then the
        DistinctComponents effect (both adjacent genera up, b down) when
        b >= 2.  Spelled out per index because search spends its time here.
        """
        g12, g13, g23, b = self.g12, self.g13, self.g23, self.b
        out: list[tuple[ParamMove, MoveGraphNode]] = []
        if g23 >= 1:
            out.append(((1, "same"), MoveGraphNode(g12, g13, g23 - 1, b + 1)))
        if b >= 2:
            out.append(((1, "distinct"), MoveGraphNode(g12 + 1, g13 + 1, g23, b - 1)))
        if g13 >= 1:
            out.append(((2, "same"), MoveGraphNode(g12, g13 - 1, g23, b + 1)))
        if b >= 2:
            out.append(((2, "distinct"), MoveGraphNode(g12 + 1, g13, g23 + 1, b - 1)))
        if g12 >= 1:
            out.append(((3, "same"), MoveGraphNode(g12 - 1, g13, g23, b + 1)))
        if b >= 2:
            out.append(((3, "distinct"), MoveGraphNode(g12, g13 + 1, g23 + 1, b - 1)))
        return out


def feasible_nodes(max_sum: int) -> list[MoveGraphNode]:
    """Every parameter node with h1 + h2 + h3 <= max_sum, lexicographic."""
    out: list[MoveGraphNode] = []
    top = max_sum // 2
    for g12 in range(top + 1):
        for g13 in range(top - g12 + 1):
            for g23 in range(top - g12 - g13 + 1):
                genus_sum = g12 + g13 + g23
                b_max = (max_sum - 2 * genus_sum) // 3 + 1
                for b in range(1, b_max + 1):
                    out.append(MoveGraphNode(g12, g13, g23, b))
    return out


def _pmap(fn: Callable[[_T], _U], items: Sequence[_T], threads: int) -> list[_U]:
    # Order-preserving map; the thread pool is an opt-in that must not
    # change any output.
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def bfs_reachable(
    start: MoveGraphNode, max_sum: int, threads: int = 1
) -> dict[MoveGraphNode, int]:
    """All nodes reachable from ``start`` by stabilizations with sum_h <= max_sum.

    Returns a mapping from node to breadth-first depth (equal to the
    sum_h difference, since every move adds 1).  Keys iterate in
    lexicographic order.
    """
    depths: dict[MoveGraphNode, int] = {}
    if start.sum_h() > max_sum:
        return depths
    depths[start] = 0
    frontier = [start]
    depth = 0
    while frontier:
        depth += 1
        expansions = _pmap(MoveGraphNode.successors, frontier, threads)
        next_frontier: list[MoveGraphNode] = []
        for successors in expansions:
            for _, node in successors:
                if node.sum_h() > max_sum or node in depths:
                    continue
                depths[node] = depth
                next_frontier.append(node)
        frontier = next_frontier
    return {node: depths[node] for node in sorted(depths)}


def realize_path(
    state: TrisectionState, path: Iterable[ParamMove]
) -> tuple[TrisectionState, MoveScript]:
    """Apply a parameter path to a labeled state with canonical arc choices.

    SameComponent moves take the lexicographically smallest component,
    DistinctComponents moves the smallest pair.
    """
    start_length = len(state.history)
    for i, kind in path:
        if kind == "distinct":
            arc = canonical_distinct_arc(state)
        elif kind == "same":
            arc = canonical_same_arc(state)
        else:
            raise ValueError(f"unknown parameter move kind {kind!r}")
        state = apply_stabilization(state, StabMove(i, arc))
    return state, state.history[start_length:]


def shortest_path(
    start: MoveGraphNode, goal: MoveGraphNode, depth_bound: int
) -> list[ParamMove] | None:
    """A shortest parameter-move path from ``start`` to ``goal``, or None.

    Breadth-first search capped at ``depth_bound`` moves.  Realize the
    result against a labeled state with :func:`realize_path`.
    """
    if start == goal:
        return []
    distance = goal.sum_h() - start.sum_h()
    if distance <= 0 or distance > depth_bound:
        return None
    parents: dict[MoveGraphNode, tuple[MoveGraphNode, ParamMove]] = {}
    queue: deque[tuple[MoveGraphNode, int]] = deque([(start, 0)])
    seen = {start}
    while queue:
        node, depth = queue.popleft()
        if depth == distance:
            continue
        for move, successor in node.successors():
            if successor in seen or successor.sum_h() > goal.sum_h():
                continue
            seen.add(successor)
            parents[successor] = (node, move)
            if successor == goal:
                path: list[ParamMove] = []
                cursor = successor
                while cursor != start:
                    cursor, step = parents[cursor]
                    path.append(step)
                path.reverse()
                return path
            queue.append((successor, depth + 1))
    return None


def shortest_script(
    start: MoveGraphNode, goal: MoveGraphNode, depth_bound: int
) -> MoveScript | None:
    """A shortest stabilization script from ``start`` to ``goal``, or None.

    The length is the certified graph distance (the grading makes it
    goal.sum_h() - start.sum_h() whenever the goal is reachable).  The
    script is realized on the canonical labeling of ``start``, so it
    replays from ``start.to_state()`` or any state with the same labels.
    """
    path = shortest_path(start, goal, depth_bound)
    if path is None:
        return None
    final, script = realize_path(start.to_state(), path)
    assert MoveGraphNode.from_state(final) == goal
    return script


def common_stabilization_search(
    a: MoveGraphNode, b: MoveGraphNode, max_sum: int
) -> tuple[MoveGraphNode, MoveScript, MoveScript] | None:
    """A common stabilization of two nodes with minimal sum_h, plus witnesses.

    Searches all nodes with sum_h <= max_sum reachable from both sides;
    among common nodes the one with minimal sum_h (ties broken
    lexicographically) is returned together with one shortest script
    from each input, realized on the inputs' canonical labelings.
    Returns None when no common node exists within the bound.
    """
    from_a = bfs_reachable(a, max_sum)
    from_b = bfs_reachable(b, max_sum)
    common = sorted(set(from_a) & set(from_b), key=lambda n: (n.sum_h(), n))
    if not common:
        return None
    node = common[0]
    script_a = shortest_script(a, node, from_a[node])
    script_b = shortest_script(b, node, from_b[node])
    assert script_a is not None and script_b is not None
    return node, script_a, script_b


@dataclass(frozen=True, slots=True)
class PropertyResult:
    """Outcome of one verified property over a node range."""

    name: str
    max_sum: int
    passed: bool
    counterexamples: tuple[MoveGraphNode, ...]
    slack: int | None = None


@dataclass(frozen=True, slots=True)
class VerificationReport:
    max_sum: int
    entries: tuple[PropertyResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(entry.passed for entry in self.entries)


def verify_properties(max_sum: int, threads: int = 1) -> VerificationReport:
    """Check the engine's structural properties over all nodes with sum_h <= max_sum.

    Five properties: feasibility matches brute-force enumeration of
    genera; balance postconditions; built-splitting move counts and
    genus; the trivial node is the only moveless one; and every
    non-trivial pair admits a common stabilization (witnessed through a
    shared balanced hub node, whose overshoot past max_sum is reported
    as the slack).
    """
    nodes = feasible_nodes(max_sum)
    entries = (
        _check_feasibility_enumeration(max_sum, nodes),
        _check_balance_postconditions(max_sum, nodes, threads),
        _check_built_splitting_counts(max_sum, nodes, threads),
        _check_trivial_only_moveless(max_sum, nodes),
        _check_common_stabilization(max_sum, nodes, threads),
    )
    return VerificationReport(max_sum, entries)


def _check_feasibility_enumeration(
    max_sum: int, nodes: list[MoveGraphNode]
) -> PropertyResult:
    # is_feasible must agree with "some genera quadruple presents this
    # profile" over every profile in range, and with the closed-form
    # balanced characterization (h + b odd and b <= h + 1).
    presented = {node.profile() for node in nodes}
    bad: list[MoveGraphNode] = []
    ok = True
    for h1 in range(max_sum + 1):
        for h2 in range(max_sum - h1 + 1):
            for h3 in range(max_sum - h1 - h2 + 1):
                for b in range(1, max_sum + 3):
                    profile = Profile(h1, h2, h3, b)
                    if is_feasible(profile) != (profile in presented):
                        ok = False
                        bad.append(MoveGraphNode.from_profile(profile))
    for h in range(max_sum + 1):
        for b in range(1, max_sum + 2):
            profile = Profile(h, h, h, b)
            expected = (h + b) % 2 == 1 and b <= h + 1
            if is_feasible(profile) != expected:
                ok = False
    return PropertyResult("feasibility-matches-enumeration", max_sum, ok, tuple(bad))


def _check_balance_postconditions(
    max_sum: int, nodes: list[MoveGraphNode], threads: int
) -> PropertyResult:
    def check(node: MoveGraphNode) -> bool:
        before = node.profile()
        top = max(before.h1, before.h2, before.h3)
        state, script = balance(node.to_state())
        after = state.profile
        return (
            (after.h1, after.h2, after.h3) == (top, top, top)
            and after.b <= max(before.b, 2)
            and len(script) == 3 * top - before.sum_h()
        )

    flags = _pmap(check, nodes, threads)
    bad = tuple(node for node, good in zip(nodes, flags) if not good)
    return PropertyResult("balance-postconditions", max_sum, not bad, bad)


def _check_built_splitting_counts(
    max_sum: int, nodes: list[MoveGraphNode], threads: int
) -> PropertyResult:
    def check(node: MoveGraphNode) -> bool:
        before = node.to_state()
        for i in (1, 2, 3):
            j, k = other_two(i)
            _, genus, script = build_heegaard(before, i)
            if genus != before.handlebody_genus(j) + before.handlebody_genus(k):
                return False
            if len(script) != 2 * before.genera.between(j, k) + before.b - 1:
                return False
        return True

    flags = _pmap(check, nodes, threads)
    bad = tuple(node for node, good in zip(nodes, flags) if not good)
    return PropertyResult("built-splitting-counts", max_sum, not bad, bad)


def _check_trivial_only_moveless(
    max_sum: int, nodes: list[MoveGraphNode]
) -> PropertyResult:
    bad = tuple(node for node in nodes if (not node.successors()) != node.is_trivial)
    return PropertyResult("trivial-only-moveless", max_sum, not bad, bad)


def _balanced_capped(state: TrisectionState) -> TrisectionState:
    # Balance, then keep knocking b down to at most 2: one canonical
    # two-component stabilization followed by re-balancing per round.
    state, _ = balance(state)
    while state.b > 2:
        state = apply_stabilization(state, canonical_balance_move(state))
        state, _ = balance(state)
    return state


def _check_common_stabilization(
    max_sum: int, nodes: list[MoveGraphNode], threads: int
) -> PropertyResult:
    # Constructive witness: every non-trivial node balances into b <= 2
    # and then climbs one genus per round, so all of them reach the one
    # balanced hub node at the maximum of those heights.  Any pair meets
    # there, at sum_h = max_sum + slack.
    nontrivial = [node for node in nodes if not node.is_trivial]
    if not nontrivial:
        return PropertyResult("common-stabilization-exists", max_sum, True, (), 0)

    reduced = _pmap(lambda node: _balanced_capped(node.to_state()), nontrivial, threads)
    hub_h = max(state.profile.h1 for state in reduced)

    def climbs_to_hub(state: TrisectionState) -> bool:
        while state.profile.h1 < hub_h:
            state = apply_stabilization(state, canonical_balance_move(state))
            state, _ = balance(state)
        profile = state.profile
        return (profile.h1, profile.h2, profile.h3) == (hub_h,) * 3 and profile.b <= 2

    flags = _pmap(climbs_to_hub, reduced, threads)
    bad = tuple(node for node, good in zip(nontrivial, flags) if not good)
    slack = 3 * hub_h - max_sum
    return PropertyResult("common-stabilization-exists", max_sum, not bad, bad, slack)
