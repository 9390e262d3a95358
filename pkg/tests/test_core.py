"""Profile arithmetic, feasibility, link genealogy, and the constructor catalogue.

The genus solver is checked against a brute-force enumeration oracle: for a
given profile we scan all small genus triples and keep those satisfying the
three handlebody-genus equations.  The closed form must agree exactly, and
must reject precisely when the scan finds nothing.
"""

from __future__ import annotations

import itertools

import pytest

from trisections.core import (
    CONSTRUCTORS,
    GenealogyEvent,
    Infeasible,
    LinkComponentSet,
    OutOfDomain,
    Profile,
    SurfaceGenera,
    TrisectionState,
    connect_sum_equal_genus,
    construct,
    euler_defect,
    from_heegaard,
    genera_from_profile,
    is_feasible,
    koda_ozawa,
    open_book,
    split_heegaard,
    state_from_profile,
    surface_bundle,
    trivial,
    tunnel_system,
)


def _oracle_genera(profile: Profile, search_bound: int = 12) -> list[SurfaceGenera]:
    """All genus triples matching the profile, by exhaustive scan.

    The bound 12 covers every profile with h1+h2+h3 <= 10: each genus is
    at most (h_i + h_j)/2 there.
    """
    h1, h2, h3, b = profile.as_tuple()
    found = []
    for g12, g13, g23 in itertools.product(range(search_bound), repeat=3):
        if (
            g12 + g13 + b - 1 == h1
            and g12 + g23 + b - 1 == h2
            and g13 + g23 + b - 1 == h3
        ):
            found.append(SurfaceGenera(g12=g12, g13=g13, g23=g23))
    return found


def _all_profiles(max_sum: int) -> list[Profile]:
    out = []
    for h1 in range(max_sum + 1):
        for h2 in range(max_sum + 1 - h1):
            for h3 in range(max_sum + 1 - h1 - h2):
                for b in range(1, max_sum + 2):
                    out.append(Profile(h1, h2, h3, b))
    return out


# -- profiles and feasibility -------------------------------------------------


def test_profile_str_uses_semicolon_before_link_count():
    assert str(Profile(2, 2, 0, 1)) == "(2,2,0;1)"
    assert str(Profile(4, 10, 6, 1)) == "(4,10,6;1)"


def test_profile_rejects_bad_values():
    with pytest.raises(ValueError):
        Profile(-1, 0, 0, 1)
    with pytest.raises(ValueError):
        Profile(0, 0, 0, 0)


@pytest.mark.parametrize(
    "profile, expected",
    [
        (Profile(2, 2, 0, 1), SurfaceGenera(g12=2, g13=0, g23=0)),
        (Profile(1, 2, 2, 2), SurfaceGenera(g12=0, g13=0, g23=1)),
        (Profile(0, 0, 0, 1), SurfaceGenera(g12=0, g13=0, g23=0)),
        (Profile(4, 10, 6, 1), SurfaceGenera(g12=4, g13=0, g23=6)),
    ],
)
def test_genera_from_profile_frozen_examples(profile, expected):
    assert genera_from_profile(profile) == expected


@pytest.mark.parametrize(
    "profile",
    [
        Profile(1, 1, 1, 1),  # even total
        Profile(6, 3, 3, 3),  # parity fine, one genus negative
        Profile(1, 1, 1, 4),  # balanced with odd total, but b too large
    ],
)
def test_genera_from_profile_rejects_infeasible(profile):
    with pytest.raises(Infeasible):
        genera_from_profile(profile)


def test_genera_solver_matches_enumeration_oracle():
    for profile in _all_profiles(10):
        solutions = _oracle_genera(profile)
        if is_feasible(profile):
            assert solutions == [genera_from_profile(profile)]
        else:
            assert solutions == []


def test_oracle_never_finds_two_solutions():
    # the three defining equations pin the genera, so uniqueness is forced
    for profile in _all_profiles(10):
        assert len(_oracle_genera(profile)) <= 1


def test_feasibility_requires_odd_total():
    for profile in _all_profiles(10):
        if (profile.h1 + profile.h2 + profile.h3 + profile.b) % 2 == 0:
            assert not is_feasible(profile)


def test_balanced_feasibility_boundary():
    # (h,h,h;b) works exactly when h+b is odd and b <= h+1; parity alone
    # is not enough because b > h+1 forces a negative genus
    for h in range(13):
        for b in range(1, 14):
            profile = Profile(h, h, h, b)
            assert is_feasible(profile) == ((h + b) % 2 == 1 and b <= h + 1)
    assert not is_feasible(Profile(1, 1, 1, 4))


def test_euler_defect_vanishes_on_states():
    for profile in _all_profiles(9):
        if is_feasible(profile):
            assert euler_defect(state_from_profile(profile)) == 0


def test_state_from_profile_round_trips():
    for profile in _all_profiles(8):
        if not is_feasible(profile):
            continue
        state = state_from_profile(profile)
        assert state.profile == profile
        assert state.b == profile.b
        assert state.link.components == tuple(f"c{i}" for i in range(profile.b))


def test_state_from_profile_rejects_infeasible():
    with pytest.raises(Infeasible):
        state_from_profile(Profile(1, 1, 1, 1))


def test_handlebody_genus_matches_defining_formula():
    state = state_from_profile(Profile(3, 4, 6, 2))
    g = state.genera
    assert state.handlebody_genus(1) == g.g12 + g.g13 + state.b - 1
    assert state.handlebody_genus(2) == g.g12 + g.g23 + state.b - 1
    assert state.handlebody_genus(3) == g.g13 + g.g23 + state.b - 1


def test_surface_euler_characteristic():
    state = state_from_profile(Profile(1, 2, 2, 2))  # genera (0,0,1)
    assert state.surface_euler_characteristic(1, 2) == 2 - 0 - 2
    assert state.surface_euler_characteristic(2, 3) == 2 - 2 - 2


# -- link component bookkeeping -----------------------------------------------


def test_link_split_and_merge_generate_fresh_labels():
    link = LinkComponentSet.fresh(1)
    assert link.components == ("c0",)
    link, created = link.split("c0")
    assert created == ("c1", "c2")
    assert link.components == ("c1", "c2")
    link, merged = link.merge("c1", "c2")
    assert merged == "c3"
    assert link.components == ("c3",)
    # identifiers are never reused even after their component is gone
    link, created = link.split("c3")
    assert created == ("c4", "c5")


def test_link_operations_validate_their_arguments():
    link = LinkComponentSet.fresh(2)
    with pytest.raises(ValueError):
        link.split("c9")
    with pytest.raises(ValueError):
        link.merge("c0", "c9")
    with pytest.raises(ValueError):
        link.merge("c0", "c0")


def test_link_genealogy_records_every_event():
    link = LinkComponentSet.fresh(2)
    link, (first, second) = link.split("c0")
    link, merged = link.merge(first, "c1")
    assert link.genealogy == (
        GenealogyEvent("genesis", (), ("c0", "c1")),
        GenealogyEvent("split", ("c0",), (first, second)),
        GenealogyEvent("merge", (first, "c1"), (merged,)),
    )


def test_genealogy_replay_reproduces_components():
    link = LinkComponentSet.fresh(3)
    link, _ = link.split("c1")
    link, _ = link.merge("c0", "c2")
    link, _ = link.split("c5")
    assert link.replay_genealogy() == link.components


def test_genealogy_event_shape_validation():
    with pytest.raises(ValueError):
        GenealogyEvent("split", ("c0", "c1"), ("c2",))
    with pytest.raises(ValueError):
        GenealogyEvent("twist", ("c0",), ("c1", "c2"))


# -- constructor catalogue ----------------------------------------------------


def test_trivial_state():
    state = trivial()
    assert state.profile == Profile(0, 0, 0, 1)
    assert state.genera == SurfaceGenera(g12=0, g13=0, g23=0)
    assert state.is_trivial


@pytest.mark.parametrize("g", range(7))
def test_from_heegaard_profile(g):
    state = from_heegaard(g)
    assert state.profile == Profile(g, g, 0, 1)
    assert state.genera == SurfaceGenera(g12=g, g13=0, g23=0)


@pytest.mark.parametrize("g,h", [(g, h) for g in range(7) for h in range(g + 1)])
def test_split_heegaard_profile(g, h):
    assert split_heegaard(g, h).profile == Profile(g, h, g - h, 1)


def test_split_heegaard_rejects_oversized_split():
    with pytest.raises(OutOfDomain):
        split_heegaard(2, 3)


@pytest.mark.parametrize("g", range(7))
def test_open_book_profile(g):
    state = open_book(g)
    assert state.profile == Profile(2 * g, 2 * g, 2 * g, 1)
    assert state.genera == SurfaceGenera(g12=g, g13=g, g23=g)


@pytest.mark.parametrize("m", range(7))
def test_tunnel_system_profile(m):
    assert tunnel_system(m).profile == Profile(1, m, m + 1, 1)


@pytest.mark.parametrize("g", range(7))
def test_connect_sum_equal_genus_profile(g):
    state = connect_sum_equal_genus(g)
    assert state.profile == Profile(g, g, g, g + 1)
    assert state.genera == SurfaceGenera(g12=0, g13=0, g23=0)


@pytest.mark.parametrize("g", range(1, 7))
def test_surface_bundle_profile(g):
    state = surface_bundle(g)
    expected_b = 1 if g % 2 == 0 else 3
    assert state.profile == Profile(2 * g, g + 1, g + 1, expected_b)
    assert ("note:" in state.label) == (g % 2 == 1)


def test_surface_bundle_odd_note_explains_the_substitution():
    label = surface_bundle(3).label
    assert "(2g,g,g;3)" in label
    assert "(2g,g+1,g+1;3)" in label


def test_surface_bundle_rejects_zero_fiber_genus():
    with pytest.raises(OutOfDomain):
        surface_bundle(0)


def test_koda_ozawa_profile():
    state = koda_ozawa()
    assert state.profile == Profile(1, 2, 2, 2)
    assert state.genera == SurfaceGenera(g12=0, g13=0, g23=1)


def test_construct_dispatch_matches_direct_calls():
    assert construct("trivial") == trivial()
    assert construct("from-heegaard", (3,)) == from_heegaard(3)
    assert construct("split-heegaard", (4, 1)) == split_heegaard(4, 1)
    assert construct("open-book", (2,)) == open_book(2)
    assert construct("tunnel", (5,)) == tunnel_system(5)
    assert construct("connect-sum", (2,)) == connect_sum_equal_genus(2)
    assert construct("surface-bundle", (3,)) == surface_bundle(3)
    assert construct("koda-ozawa") == koda_ozawa()


def test_construct_rejects_unknown_kind_and_bad_arity():
    with pytest.raises(OutOfDomain):
        construct("lens-space")
    with pytest.raises(OutOfDomain):
        construct("from-heegaard")
    with pytest.raises(OutOfDomain):
        construct("trivial", (1,))


def test_constructor_table_covers_every_kind():
    assert sorted(CONSTRUCTORS) == [
        "connect-sum",
        "from-heegaard",
        "koda-ozawa",
        "open-book",
        "split-heegaard",
        "surface-bundle",
        "trivial",
        "tunnel",
    ]


def test_constructor_states_are_all_feasible():
    for g in range(7):
        assert is_feasible(from_heegaard(g).profile)
        assert is_feasible(open_book(g).profile)
        assert is_feasible(connect_sum_equal_genus(g).profile)
        assert is_feasible(tunnel_system(g).profile)
        if g >= 1:
            assert is_feasible(surface_bundle(g).profile)


def test_negative_parameters_rejected():
    with pytest.raises(OutOfDomain):
        from_heegaard(-1)
    with pytest.raises(OutOfDomain):
        tunnel_system(-1)
    with pytest.raises(OutOfDomain):
        connect_sum_equal_genus(-1)
    with pytest.raises(OutOfDomain):
        open_book(-1)


def test_states_start_with_empty_history():
    assert from_heegaard(2).history == ()
    assert koda_ozawa().history == ()


def test_state_equality_includes_link():
    a = from_heegaard(2)
    assert a == from_heegaard(2)
    widened = TrisectionState(
        genera=a.genera, link=LinkComponentSet.fresh(2), history=(), label=a.label
    )
    assert a != widened
