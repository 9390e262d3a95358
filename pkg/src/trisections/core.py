"""Combinatorial states for trisections of closed orientable 3-manifolds.

A trisection cuts a closed orientable 3-manifold into three handlebodies
H1, H2, H3.  Any two of them meet in a connected compact surface (S12,
S13 or S23), and all three meet in a link B common to the boundaries of
the three surfaces.  Writing g12, g13, g23 for the surface genera and b
for the number of components of B, the handlebody genera are determined:

    h_i = g_ij + g_ik + b - 1        ({i, j, k} = {1, 2, 3})

This module keeps only that combinatorial shadow: the three surface
genera, the named components of B, and everything derivable from them.
It does not encode embeddings or attaching maps.  States are immutable;
the move calculus in :mod:`trisections.moves` produces new states.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

HANDLEBODIES = (1, 2, 3)

_ID_PATTERN = re.compile(r"^c(0|[1-9][0-9]*)$")


class TrisectionError(Exception):
    """Base class for domain errors raised by the engine."""


class Infeasible(TrisectionError):
    """A genus/boundary quadruple admits no consistent surface genera."""


class OutOfDomain(TrisectionError):
    """A constructor parameter lies outside the constructor's domain."""


_OTHER_TWO = {1: (2, 3), 2: (1, 3), 3: (1, 2)}


def other_two(i: int) -> tuple[int, int]:
    """Return the two handlebody indices distinct from ``i``, ascending."""
    pair = _OTHER_TWO.get(i)
    if pair is None:
        raise ValueError(f"handlebody index must be 1, 2 or 3, got {i!r}")
    return pair


@dataclass(frozen=True, slots=True, order=True)
class SurfaceGenera:
    """Genera of the three pairwise intersection surfaces S12, S13, S23."""

    g12: int
    g13: int
    g23: int

    def __post_init__(self) -> None:
        for name in ("g12", "g13", "g23"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")

    def between(self, i: int, j: int) -> int:
        """Genus of the surface where handlebodies ``i`` and ``j`` meet."""
        return getattr(self, _pair_field(i, j))

    def opposite(self, i: int) -> int:
        """Genus of the surface not touching handlebody ``i``."""
        j, k = other_two(i)
        return self.between(j, k)

    def with_between(self, i: int, j: int, value: int) -> SurfaceGenera:
        return replace(self, **{_pair_field(i, j): value})

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.g12, self.g13, self.g23)

    def total(self) -> int:
        return self.g12 + self.g13 + self.g23


def _pair_field(i: int, j: int) -> str:
    if i == j or i not in HANDLEBODIES or j not in HANDLEBODIES:
        raise ValueError(f"expected two distinct handlebody indices, got {i!r}, {j!r}")
    lo, hi = sorted((i, j))
    return f"g{lo}{hi}"


@dataclass(frozen=True, slots=True, order=True)
class Profile:
    """Handlebody genera and boundary-component count ``(h1,h2,h3;b)``."""

    h1: int
    h2: int
    h3: int
    b: int

    def __post_init__(self) -> None:
        for name in ("h1", "h2", "h3"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
        if not isinstance(self.b, int) or self.b < 1:
            raise ValueError(f"b must be a positive integer, got {self.b!r}")

    def genus(self, i: int) -> int:
        return (self.h1, self.h2, self.h3)[i - 1]

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.h1, self.h2, self.h3, self.b)

    def sum_h(self) -> int:
        return self.h1 + self.h2 + self.h3

    @property
    def is_balanced(self) -> bool:
        return self.h1 == self.h2 == self.h3

    @property
    def is_trivial(self) -> bool:
        return self.as_tuple() == (0, 0, 0, 1)

    def __str__(self) -> str:
        return f"({self.h1},{self.h2},{self.h3};{self.b})"


@dataclass(frozen=True, slots=True)
class GenealogyEvent:
    """One step in the life of the boundary link's components.

    ``kind`` is ``genesis`` (initial components, no parents), ``split``
    (one parent, two children) or ``merge`` (two parents, one child).
    """

    kind: str
    parents: tuple[str, ...]
    children: tuple[str, ...]

    def __post_init__(self) -> None:
        shapes = {"genesis": None, "split": (1, 2), "merge": (2, 1)}
        if self.kind not in shapes:
            raise ValueError(f"unknown genealogy event kind {self.kind!r}")
        shape = shapes[self.kind]
        if self.kind == "genesis":
            if self.parents or not self.children:
                raise ValueError("genesis events have no parents and at least one child")
        elif (len(self.parents), len(self.children)) != shape:
            raise ValueError(f"{self.kind} event must have shape {shape}")


@dataclass(frozen=True, slots=True)
class LinkComponentSet:
    """The components of the boundary link B, with their genealogy.

    Components carry opaque sequential identifiers ``c0``, ``c1``, ...;
    ``next_id`` is the counter for the next fresh label, and labels are
    never reused.  ``components`` is ordered by creation.  ``genealogy``
    records every genesis/split/merge and replays to the current set,
    which is what makes move scripts replayable.
    """

    components: tuple[str, ...]
    next_id: int
    genealogy: tuple[GenealogyEvent, ...]

    def __post_init__(self) -> None:
        if len(self.components) < 1:
            raise ValueError("the boundary link must have at least one component")
        if len(set(self.components)) != len(self.components):
            raise ValueError("component identifiers must be unique")
        for label in self.components:
            number = _id_number(label)
            if number >= self.next_id:
                raise ValueError(f"component {label!r} is not below next_id={self.next_id}")

    @classmethod
    def fresh(cls, count: int) -> LinkComponentSet:
        """A brand new set of ``count`` components ``c0`` .. ``c<count-1>``."""
        if count < 1:
            raise ValueError("need at least one component")
        labels = tuple(f"c{n}" for n in range(count))
        return cls(labels, count, (GenealogyEvent("genesis", (), labels),))

    @property
    def b(self) -> int:
        return len(self.components)

    def split(self, component: str) -> tuple[LinkComponentSet, tuple[str, str]]:
        """Replace ``component`` by two fresh components.

        Pre-condition: ``component`` is present.
        """
        if component not in self.components:
            raise ValueError(f"unknown component {component!r}")
        first = f"c{self.next_id}"
        second = f"c{self.next_id + 1}"
        kept = tuple(c for c in self.components if c != component)
        event = GenealogyEvent("split", (component,), (first, second))
        new = LinkComponentSet(kept + (first, second), self.next_id + 2, self.genealogy + (event,))
        return new, (first, second)

    def merge(self, first: str, second: str) -> tuple[LinkComponentSet, str]:
        """Replace the two named components by one fresh component.

        Pre-condition: both components are present and distinct.
        """
        if first == second:
            raise ValueError("cannot merge a component with itself")
        for label in (first, second):
            if label not in self.components:
                raise ValueError(f"unknown component {label!r}")
        merged = f"c{self.next_id}"
        kept = tuple(c for c in self.components if c not in (first, second))
        event = GenealogyEvent("merge", (first, second), (merged,))
        new = LinkComponentSet(kept + (merged,), self.next_id + 1, self.genealogy + (event,))
        return new, merged

    def replay_genealogy(self) -> tuple[str, ...]:
        """Recompute the component set by replaying the genealogy."""
        current: list[str] = []
        seen: set[str] = set()
        for event in self.genealogy:
            for parent in event.parents:
                if parent not in current:
                    raise ValueError(f"genealogy replays a missing parent {parent!r}")
                current.remove(parent)
            for child in event.children:
                if child in seen:
                    raise ValueError(f"genealogy reuses identifier {child!r}")
                seen.add(child)
                current.append(child)
        return tuple(current)


def _id_number(label: str) -> int:
    match = _ID_PATTERN.match(label)
    if match is None:
        raise ValueError(f"component identifiers look like 'c12', got {label!r}")
    return int(match.group(1))


@dataclass(frozen=True, slots=True)
class TrisectionState:
    """A trisection presented by surface genera plus boundary components.

    ``history`` is the move script that produced this state from its
    construction (see :mod:`trisections.moves` for the record type), and
    ``label`` is a free-form description of where the state came from.
    """

    genera: SurfaceGenera
    link: LinkComponentSet
    history: tuple = field(default=())
    label: str = ""

    def __post_init__(self) -> None:
        # h_i >= 0 holds automatically (genera >= 0, b >= 1); the Euler
        # count below is an algebraic identity.  Both are tripwires for
        # corrupted construction, not reachable failure modes.  Spelled
        # out arithmetically: states are built once per applied move.
        g, b = self.genera, self.link.b
        h_sum = 2 * (g.g12 + g.g13 + g.g23) + 3 * (b - 1)
        if min(g.g12 + g.g13, g.g12 + g.g23, g.g13 + g.g23) + b - 1 < 0:
            raise ValueError("derived handlebody genus is negative")
        chi_sum = 3 * 2 - 2 * (g.g12 + g.g13 + g.g23) - 3 * b
        if (3 - h_sum) - chi_sum != 0:
            raise ValueError("Euler-characteristic bookkeeping is inconsistent")

    @property
    def b(self) -> int:
        return self.link.b

    def handlebody_genus(self, i: int) -> int:
        j, k = other_two(i)
        return self.genera.between(i, j) + self.genera.between(i, k) + self.b - 1

    @property
    def profile(self) -> Profile:
        return Profile(
            self.handlebody_genus(1),
            self.handlebody_genus(2),
            self.handlebody_genus(3),
            self.b,
        )

    @property
    def is_balanced(self) -> bool:
        return self.profile.is_balanced

    @property
    def is_trivial(self) -> bool:
        return self.profile.is_trivial

    def surface_euler_characteristic(self, i: int, j: int) -> int:
        """Euler characteristic of S_ij: a genus-g surface with b boundary circles."""
        return 2 - 2 * self.genera.between(i, j) - self.b

    def relabeled(self, label: str) -> TrisectionState:
        return replace(self, label=label)


def euler_defect(state: TrisectionState) -> int:
    """sum_i (1 - h_i) - sum_{i<j} chi(S_ij); zero for every valid state."""
    profile_sum = sum(state.handlebody_genus(i) for i in HANDLEBODIES)
    chi_sum = sum(
        state.surface_euler_characteristic(i, j) for i, j in ((1, 2), (1, 3), (2, 3))
    )
    return (3 - profile_sum) - chi_sum


def profile_of(state: TrisectionState) -> Profile:
    """The ``(h1,h2,h3;b)`` quadruple presented by ``state``."""
    return state.profile


def genera_from_profile(profile: Profile) -> SurfaceGenera:
    """Invert the genus formula, recovering (g12, g13, g23) from (h1,h2,h3;b).

    Adding the defining relations pairwise gives

        g_ij = (h_i + h_j - h_k + 1 - b) / 2

    so the solution is unique when it exists.  Raises :class:`Infeasible`
    when any right-hand side is negative or fails to be an integer (the
    three share one parity, tied to h1 + h2 + h3 + b being odd).
    """
    h = {1: profile.h1, 2: profile.h2, 3: profile.h3}
    if (profile.h1 + profile.h2 + profile.h3 + profile.b) % 2 == 0:
        raise Infeasible(f"profile {profile} fails the parity condition")
    values: dict[str, int] = {}
    for i, j in ((1, 2), (1, 3), (2, 3)):
        (k,) = {1, 2, 3} - {i, j}
        doubled = h[i] + h[j] - h[k] + 1 - profile.b
        if doubled < 0:
            raise Infeasible(f"profile {profile} forces g{i}{j} = {doubled}/2 < 0")
        values[f"g{i}{j}"] = doubled // 2
    return SurfaceGenera(**values)


def is_feasible(profile: Profile) -> bool:
    """Whether some trisection state presents this profile."""
    try:
        genera_from_profile(profile)
    except Infeasible:
        return False
    return True


def state_from_profile(profile: Profile, label: str = "") -> TrisectionState:
    """A fresh state presenting ``profile``, components ``c0`` .. ``c<b-1>``."""
    genera = genera_from_profile(profile)
    return TrisectionState(genera, LinkComponentSet.fresh(profile.b), (), label)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise OutOfDomain(message)


def trivial() -> TrisectionState:
    """The trisection of the 3-sphere by three balls: profile (0,0,0;1)."""
    return state_from_profile(Profile(0, 0, 0, 1), "trivial")


def from_heegaard(genus: int) -> TrisectionState:
    """Thicken one side of a genus-g Heegaard splitting: profile (g,g,0;1)."""
    _require(genus >= 0, f"Heegaard genus must be >= 0, got {genus}")
    return state_from_profile(
        Profile(genus, genus, 0, 1), f"from-heegaard(genus={genus})"
    )


def split_heegaard(genus: int, lower: int) -> TrisectionState:
    """Split a genus-g handlebody into genus-h and genus-(g-h) pieces: (g,h,g-h;1)."""
    _require(genus >= 0, f"Heegaard genus must be >= 0, got {genus}")
    _require(0 <= lower <= genus, f"need 0 <= lower <= genus, got lower={lower}")
    return state_from_profile(
        Profile(genus, lower, genus - lower, 1),
        f"split-heegaard(genus={genus},lower={lower})",
    )


def open_book(page_genus: int) -> TrisectionState:
    """An open book with genus-g pages and connected binding: (2g,2g,2g;1)."""
    _require(page_genus >= 0, f"page genus must be >= 0, got {page_genus}")
    g = page_genus
    return state_from_profile(
        Profile(2 * g, 2 * g, 2 * g, 1), f"open-book(page-genus={g})"
    )


def tunnel_system(tunnels: int) -> TrisectionState:
    """A knot exterior with an m-tunnel unknotting system: (1,m,m+1;1)."""
    _require(tunnels >= 0, f"tunnel count must be >= 0, got {tunnels}")
    m = tunnels
    return state_from_profile(Profile(1, m, m + 1, 1), f"tunnel(tunnels={m})")


def connect_sum_equal_genus(summand_genus: int) -> TrisectionState:
    """Connected sum of two genus-g pieces glued along g+1 spheres: (g,g,g;g+1)."""
    _require(summand_genus >= 0, f"summand genus must be >= 0, got {summand_genus}")
    g = summand_genus
    return state_from_profile(
        Profile(g, g, g, g + 1), f"connect-sum(summand-genus={g})"
    )


_SURFACE_BUNDLE_NOTE = (
    "note: for odd fiber genus g the quadruple (2g,g,g;3) is infeasible "
    "(it forces g23 = -1), so this constructor uses the arithmetically "
    "consistent (2g,g+1,g+1;3) instead"
)


def surface_bundle(fiber_genus: int) -> TrisectionState:
    """A surface bundle over the circle with genus-g fibers.

    Profile (2g, g+1, g+1; 1) for even g and (2g, g+1, g+1; 3) for odd g.
    The odd case carries a note in its label, surfaced by the CLI ``show``
    command: the superficially natural quadruple (2g,g,g;3) fails the genus
    arithmetic, so the feasible (2g,g+1,g+1;3) is used.
    """
    _require(fiber_genus >= 1, f"fiber genus must be >= 1, got {fiber_genus}")
    g = fiber_genus
    label = f"surface-bundle(fiber-genus={g})"
    if g % 2 == 0:
        return state_from_profile(Profile(2 * g, g + 1, g + 1, 1), label)
    return state_from_profile(
        Profile(2 * g, g + 1, g + 1, 3), f"{label}; {_SURFACE_BUNDLE_NOTE}"
    )


def koda_ozawa() -> TrisectionState:
    """The (1,2,2;2) family whose middle surface is a twice-punctured torus.

    These states are known not to arise by stabilizing anything smaller,
    which makes them useful seeds for move-calculus experiments.
    """
    return state_from_profile(Profile(1, 2, 2, 2), "koda-ozawa")


# CLI-facing catalogue: kind -> (constructor, parameter names).
CONSTRUCTORS: dict[str, tuple] = {
    "trivial": (trivial, ()),
    "from-heegaard": (from_heegaard, ("genus",)),
    "split-heegaard": (split_heegaard, ("genus", "lower")),
    "open-book": (open_book, ("page_genus",)),
    "tunnel": (tunnel_system, ("tunnels",)),
    "connect-sum": (connect_sum_equal_genus, ("summand_genus",)),
    "surface-bundle": (surface_bundle, ("fiber_genus",)),
    "koda-ozawa": (koda_ozawa, ()),
}


def construct(kind: str, params: tuple[int, ...] = ()) -> TrisectionState:
    """Dispatch to the named constructor.  Raises OutOfDomain for bad input."""
    if kind not in CONSTRUCTORS:
        known = ", ".join(sorted(CONSTRUCTORS))
        raise OutOfDomain(f"unknown constructor {kind!r}; known kinds: {known}")
    fn, names = CONSTRUCTORS[kind]
    if len(params) != len(names):
        expected = ", ".join(names) if names else "none"
        raise OutOfDomain(
            f"constructor {kind!r} takes parameters ({expected}), got {len(params)}"
        )
    return fn(*params)
