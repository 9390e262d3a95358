"""Parameter-level move graph: enumeration, BFS, shortest scripts, verification.

The parameter shadow must agree with the labeled engine move for move,
so several tests cross-check node successors against legal_moves applied
to canonically labeled states.
"""

from __future__ import annotations

import pytest

from trisections.core import Profile, is_feasible, koda_ozawa, state_from_profile
from trisections.explorer import (
    MoveGraphNode,
    PropertyResult,
    VerificationReport,
    bfs_reachable,
    common_stabilization_search,
    feasible_nodes,
    realize_path,
    shortest_path,
    shortest_script,
    verify_properties,
)
from trisections.moves import StabMove, apply_stabilization, legal_moves


def _replay_records(node: MoveGraphNode, script) -> MoveGraphNode:
    state = node.to_state()
    for record in script:
        state = apply_stabilization(state, StabMove(record.handlebody, record.arc))
    return MoveGraphNode.from_state(state)

HEEGAARD2 = MoveGraphNode(2, 0, 0, 1)
OPENBOOK1 = MoveGraphNode(1, 1, 1, 1)
KODA = MoveGraphNode(0, 0, 1, 2)
TRIVIAL = MoveGraphNode(0, 0, 0, 1)


def _all_profiles(max_sum: int) -> list[Profile]:
    out = []
    for h1 in range(max_sum + 1):
        for h2 in range(max_sum + 1 - h1):
            for h3 in range(max_sum + 1 - h1 - h2):
                for b in range(1, max_sum + 2):
                    out.append(Profile(h1, h2, h3, b))
    return out


# -- nodes ----------------------------------------------------------------------


def test_node_round_trips_through_profiles_and_states():
    for node in feasible_nodes(8):
        assert MoveGraphNode.from_profile(node.profile()) == node
        assert MoveGraphNode.from_state(node.to_state()) == node
        assert node.sum_h() == node.profile().sum_h()


def test_node_from_state_matches_koda_ozawa():
    assert MoveGraphNode.from_state(koda_ozawa()) == KODA


def test_node_rejects_negative_parameters():
    with pytest.raises(ValueError):
        MoveGraphNode(-1, 0, 0, 1)
    with pytest.raises(ValueError):
        MoveGraphNode(0, 0, 0, 0)


def test_node_ordering_is_lexicographic():
    assert MoveGraphNode(0, 0, 1, 2) < MoveGraphNode(0, 1, 0, 1)
    assert MoveGraphNode(1, 0, 0, 1) < MoveGraphNode(1, 0, 0, 2)


def test_trivial_node_has_no_successors():
    assert TRIVIAL.successors() == []
    assert TRIVIAL.is_trivial


def test_successor_grading():
    for node in feasible_nodes(10):
        for _, successor in node.successors():
            assert successor.sum_h() == node.sum_h() + 1


def test_successors_match_labeled_engine():
    # collapse the labeled moves of the canonical state to (index, kind)
    # pairs with their resulting nodes; the parameter shadow must agree
    for node in feasible_nodes(8):
        state = node.to_state()
        labeled: dict[tuple[int, str], MoveGraphNode] = {}
        for move in legal_moves(state):
            kind = "same" if type(move.arc).__name__ == "SameComponent" else "distinct"
            result = MoveGraphNode.from_state(apply_stabilization(state, move))
            previous = labeled.setdefault((move.handlebody, kind), result)
            assert previous == result  # arc choice never affects parameters
        assert dict(node.successors()) == labeled


def test_feasible_nodes_matches_profile_enumeration():
    for max_sum in (0, 3, 6, 9):
        nodes = feasible_nodes(max_sum)
        assert nodes == sorted(nodes)
        assert len(set(nodes)) == len(nodes)
        feasible_count = sum(
            1
            for profile in _all_profiles(max_sum)
            if profile.sum_h() <= max_sum and is_feasible(profile)
        )
        assert len(nodes) == feasible_count
        assert all(node.sum_h() <= max_sum for node in nodes)


# -- breadth-first search ---------------------------------------------------------


def test_bfs_finds_the_balanced_node_two_moves_up():
    reached = bfs_reachable(HEEGAARD2, 8)
    assert reached[HEEGAARD2] == 0
    assert reached[OPENBOOK1] == 2


def test_bfs_depth_equals_sum_difference():
    for start in (HEEGAARD2, KODA, TRIVIAL):
        for node, depth in bfs_reachable(start, 10).items():
            assert depth == node.sum_h() - start.sum_h()


def test_bfs_layers_are_closed_under_successors():
    # certify the BFS layer by layer: every successor of a reached node
    # is reached one layer deeper (or earlier), and every non-start node
    # has a reached predecessor
    reached = bfs_reachable(KODA, 11)
    for node, depth in reached.items():
        for _, successor in node.successors():
            if successor.sum_h() <= 11:
                assert reached[successor] == depth + 1
    predecessors = {KODA}
    for node, depth in reached.items():
        if depth == 0:
            continue
        assert any(
            parent in reached
            and reached[parent] == depth - 1
            and any(s == node for _, s in parent.successors())
            for parent in reached
        )


def test_bfs_respects_the_bound_and_sorts_keys():
    reached = bfs_reachable(HEEGAARD2, 7)
    assert all(node.sum_h() <= 7 for node in reached)
    assert list(reached) == sorted(reached)


def test_bfs_with_start_beyond_bound_is_empty():
    assert bfs_reachable(HEEGAARD2, 3) == {}


def test_bfs_from_trivial_reaches_only_itself():
    assert bfs_reachable(TRIVIAL, 9) == {TRIVIAL: 0}


def test_bfs_threads_do_not_change_the_answer():
    assert bfs_reachable(KODA, 12, threads=4) == bfs_reachable(KODA, 12)


# -- paths and scripts --------------------------------------------------------------


def test_realize_path_applies_canonical_arcs():
    state = koda_ozawa()
    final, script = realize_path(state, [(1, "distinct"), (1, "same")])
    assert MoveGraphNode.from_state(final) == MoveGraphNode(1, 1, 0, 2)
    assert len(script) == 2
    assert script[0].removed == ("c0", "c1")


def test_realize_path_rejects_unknown_kind():
    with pytest.raises(ValueError):
        realize_path(koda_ozawa(), [(1, "both")])


def test_shortest_path_between_equal_nodes_is_empty():
    assert shortest_path(KODA, KODA, 5) == []


def test_shortest_path_heegaard_to_balanced():
    path = shortest_path(HEEGAARD2, OPENBOOK1, 8)
    assert path == [(3, "same"), (3, "distinct")]


def test_shortest_path_cannot_go_down_the_grading():
    assert shortest_path(OPENBOOK1, HEEGAARD2, 8) is None


def test_shortest_path_respects_depth_bound():
    assert shortest_path(HEEGAARD2, OPENBOOK1, 1) is None


def test_shortest_script_replays_to_the_goal():
    script = shortest_script(HEEGAARD2, OPENBOOK1, 8)
    assert script is not None and len(script) == 2
    assert _replay_records(HEEGAARD2, script) == OPENBOOK1


def test_shortest_paths_exist_exactly_for_reachable_nodes():
    reached = bfs_reachable(KODA, 9)
    for node in feasible_nodes(9):
        path = shortest_path(KODA, node, 9)
        if node in reached:
            assert path is not None and len(path) == reached[node]
        else:
            assert path is None


# -- common stabilizations -----------------------------------------------------------


def test_common_stabilization_of_a_node_with_itself():
    assert common_stabilization_search(KODA, KODA, 10) == (KODA, (), ())


def test_common_stabilization_heegaard_vs_koda():
    result = common_stabilization_search(HEEGAARD2, KODA, 12)
    assert result is not None
    node, script_a, script_b = result
    assert len(script_a) == node.sum_h() - HEEGAARD2.sum_h()
    assert len(script_b) == node.sum_h() - KODA.sum_h()
    assert _replay_records(HEEGAARD2, script_a) == node
    assert _replay_records(KODA, script_b) == node


def test_common_stabilization_is_minimal():
    result = common_stabilization_search(HEEGAARD2, KODA, 12)
    assert result is not None
    node = result[0]
    # no strictly smaller node is reachable from both inputs
    for candidate in feasible_nodes(node.sum_h()):
        if (candidate.sum_h(), candidate) < (node.sum_h(), node):
            both = shortest_path(HEEGAARD2, candidate, 12) is not None and (
                shortest_path(KODA, candidate, 12) is not None
            )
            assert not both


def test_common_stabilization_is_symmetric_in_its_node():
    forward = common_stabilization_search(HEEGAARD2, KODA, 12)
    backward = common_stabilization_search(KODA, HEEGAARD2, 12)
    assert forward is not None and backward is not None
    assert forward[0] == backward[0]


def test_common_stabilization_with_trivial_input_fails():
    assert common_stabilization_search(TRIVIAL, KODA, 12) is None
    assert common_stabilization_search(HEEGAARD2, TRIVIAL, 12) is None


def test_common_stabilization_none_within_tight_bound():
    assert common_stabilization_search(HEEGAARD2, MoveGraphNode(0, 0, 2, 1), 4) is None


# -- property verification -------------------------------------------------------------


def test_verify_properties_passes_on_small_range():
    report = verify_properties(8)
    assert isinstance(report, VerificationReport)
    assert report.all_passed
    assert [entry.name for entry in report.entries] == [
        "feasibility-matches-enumeration",
        "balance-postconditions",
        "built-splitting-counts",
        "trivial-only-moveless",
        "common-stabilization-exists",
    ]
    assert all(entry.counterexamples == () for entry in report.entries)


def test_verify_reports_hub_slack_only_for_common_stabilization():
    report = verify_properties(6)
    for entry in report.entries:
        if entry.name == "common-stabilization-exists":
            assert entry.slack is not None and entry.slack >= 0
        else:
            assert entry.slack is None


def test_verify_threads_do_not_change_the_report():
    assert verify_properties(7, threads=4) == verify_properties(7)


def test_property_result_is_plain_data():
    entry = PropertyResult("demo", 4, True, ())
    assert entry.passed and entry.slack is None
