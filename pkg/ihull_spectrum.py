"""The idempotent semilattice E(S), its characters, and the ultracharacter census.

Members of E(S) are constructible sets; a ``Semilattice`` keeps them in a
fixed order with numpy meet and order tables. On a finite semilattice every
filter is principal, so filters are listed as up-sets of nonzero members and
checked against a subset-enumeration oracle on small inputs.

Characters and filters are interchangeable: ``char_of`` and ``filter_of``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import numpy as np

from ihull_errors import CapExceededError, PreconditionError, ValidationError
from ihull_hull import (
    ONE,
    Hull,
    SOrOne,
    conjugate_backward,
    conjugate_forward,
    constructible_sets,
    range_set,
    source_set,
)
from ihull_semigroup import Semigroup, classify_element
from ihull_strings import (
    StringSet,
    all_strings,
    asymptotically_contained,
    is_open,
    is_string,
    string_top,
)

logger = logging.getLogger("ihull.spectrum")

Filter = frozenset[int]


class Semilattice:
    """Finite meet-semilattice of sets with a bottom (the empty set)."""

    def __init__(self, members: Sequence[frozenset]):
        self.members: tuple[frozenset, ...] = tuple(members)
        self._index = {X: i for i, X in enumerate(self.members)}
        if len(self._index) != len(self.members):
            raise ValidationError("semilattice members must be distinct")
        if frozenset() not in self._index:
            raise ValidationError("semilattice must contain the empty set")
        self.zero = self._index[frozenset()]

        n = len(self.members)
        meet = np.empty((n, n), dtype=np.intp)
        for i, X in enumerate(self.members):
            for j, Y in enumerate(self.members):
                k = self._index.get(X & Y)
                if k is None:
                    raise ValidationError("members are not closed under intersection")
                meet[i, j] = k
        meet.setflags(write=False)
        self.meet = meet
        leq = meet == np.arange(n)[:, None]
        leq.setflags(write=False)
        # leq[i, j]: member i is contained in member j
        self.leq = leq

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"Semilattice(n={len(self)})"

    def index(self, X: Iterable) -> int:
        try:
            return self._index[frozenset(X)]
        except KeyError:
            raise PreconditionError(f"{set(X)} is not a member") from None

    @cached_property
    def nonzero(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self)) if i != self.zero)

    def up(self, e: int) -> Filter:
        return frozenset(int(j) for j in np.flatnonzero(self.leq[e]))

    def below(self, x: int, strict: bool = False) -> list[int]:
        """Nonzero members under x."""
        return [
            y for y in self.nonzero if self.leq[y, x] and not (strict and y == x)
        ]


def semilattice_of(
    S: Semigroup, hull: Hull | None = None, cap: int = 100000
) -> Semilattice:
    return Semilattice(constructible_sets(S, hull=hull, cap=cap))


# ---- filters and characters ----

@dataclass(frozen=True)
class Character:
    """0/1 value per semilattice member, in member order."""

    values: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.values[i]

    @cached_property
    def support(self) -> Filter:
        return frozenset(i for i, v in enumerate(self.values) if v)


def char_of(E: Semilattice, xi: Filter) -> Character:
    return Character(tuple(1 if i in xi else 0 for i in range(len(E))))


def filter_of(phi: Character) -> Filter:
    return phi.support


def char_leq(phi: Character, psi: Character) -> bool:
    return all(a <= b for a, b in zip(phi.values, psi.values))


def is_filter(E: Semilattice, xi: Iterable[int]) -> bool:
    xi = frozenset(xi)
    if not xi or E.zero in xi:
        return False
    upward = all(E.up(x) <= xi for x in xi)
    closed = all(int(E.meet[x, y]) in xi for x in xi for y in xi)
    return upward and closed


def is_character(E: Semilattice, phi: Character) -> bool:
    return is_filter(E, phi.support)


def filter_generator(E: Semilattice, xi: Filter) -> int:
    """The least member of a filter."""
    return min(xi, key=lambda x: len(E.members[x]))


def filters(E: Semilattice) -> list[Filter]:
    """Every filter, as the principal up-set of each nonzero member."""
    return [E.up(e) for e in E.nonzero]


def filters_bruteforce(E: Semilattice, limit: int = 12) -> list[Filter]:
    n = len(E.nonzero)
    if n > limit:
        raise CapExceededError("oracle semilattice size", limit)
    found = []
    for size in range(1, n + 1):
        for subset in combinations(E.nonzero, size):
            if is_filter(E, subset):
                found.append(frozenset(subset))
    return found


def is_ultra(E: Semilattice, xi: Filter, by_maximality: bool = False) -> bool:
    """e not in xi forces some f in xi with e ∧ f = 0; or, maximality among filters."""
    if by_maximality:
        return not any(xi < other for other in filters(E))
    return all(
        any(E.meet[e, f] == E.zero for f in xi)
        for e in E.nonzero
        if e not in xi
    )


def ultrafilters(E: Semilattice) -> list[Filter]:
    return [xi for xi in filters(E) if is_ultra(E, xi)]


def ultracharacters(E: Semilattice) -> list[Character]:
    return [char_of(E, xi) for xi in ultrafilters(E)]


def is_tight(E: Semilattice, phi: Character) -> bool:
    """No x with phi(x) = 1 is covered by members below it where phi vanishes."""
    for x in phi.support:
        zeros = [y for y in E.below(x) if not phi(y)]
        if covers(E, zeros, x):
            return False
    return True


def covers(E: Semilattice, Z: Iterable[int], x: int) -> bool:
    """Every nonzero y <= x has y ∧ z != 0 for some z in Z."""
    Z = list(Z)
    return all(any(E.meet[y, z] != E.zero for z in Z) for y in E.below(x))


def is_tight_bruteforce(E: Semilattice, phi: Character, max_cover: int = 20) -> bool:
    """Enumerate every finite cover Z of every member and compare joins."""
    for x in E.nonzero:
        lower = E.below(x)
        if len(lower) > max_cover:
            raise CapExceededError("cover enumeration lower set", max_cover)
        for size in range(1, len(lower) + 1):
            for Z in combinations(lower, size):
                if covers(E, Z, x) and max(phi(z) for z in Z) != phi(x):
                    return False
    return True


def tight_characters(E: Semilattice) -> list[Character]:
    return [phi for phi in (char_of(E, xi) for xi in filters(E)) if is_tight(E, phi)]


def all_characters(E: Semilattice) -> list[Character]:
    return [char_of(E, xi) for xi in filters(E)]


# ---- representations on finite sets ----

@dataclass(frozen=True)
class SetRepresentation:
    """pi: member index -> subset of a finite ambient point list."""

    ambient: tuple[Hashable, ...]
    images: tuple[frozenset[int], ...]

    def __call__(self, i: int) -> frozenset[int]:
        return self.images[i]


def check_representation(E: Semilattice, pi: SetRepresentation) -> None:
    if len(pi.images) != len(E):
        raise ValidationError("representation must assign a set to every member")
    if pi(E.zero):
        raise ValidationError("pi(0) must be empty")
    for i in range(len(E)):
        for j in range(len(E)):
            if pi(int(E.meet[i, j])) != pi(i) & pi(j):
                raise ValidationError("pi does not preserve meets")


def identity_representation(E: Semilattice) -> SetRepresentation:
    ambient = sorted(set().union(*E.members))
    position = {p: k for k, p in enumerate(ambient)}
    return SetRepresentation(
        tuple(ambient),
        tuple(frozenset(position[p] for p in X) for X in E.members),
    )


def pi_tight_characters(E: Semilattice, pi: SetRepresentation) -> list[Character]:
    """One character per atom of the set algebra generated by pi(E).

    Ambient points with equal membership signatures lie in the same atom; an
    atom omega yields X -> [omega ⊆ pi(X)].
    """
    check_representation(E, pi)
    seen: set[Filter] = set()
    result = []
    for point in range(len(pi.ambient)):
        signature = frozenset(i for i in range(len(E)) if point in pi(i))
        if signature and signature not in seen:
            seen.add(signature)
            result.append(char_of(E, signature))
    return result


def is_pi_tight(
    E: Semilattice,
    pi: SetRepresentation,
    phi: Character,
    join_bound: int | None = None,
    max_members: int = 8,
) -> bool:
    """Brute force: y_i <= x with pi(x) ⊆ ∪ pi(y_i) forces phi(x) <= max phi(y_i)."""
    if len(E) > max_members:
        raise CapExceededError("pi-tight oracle semilattice size", max_members)
    for x in range(len(E)):
        lower = E.below(x, strict=True)
        bound = len(lower) if join_bound is None else min(join_bound, len(lower))
        for size in range(0, bound + 1):
            for Y in combinations(lower, size):
                union = frozenset().union(*(pi(y) for y in Y))
                if pi(x) <= union and phi(x) > max((phi(y) for y in Y), default=0):
                    return False
    return True


# ---- strings and characters ----

def epsilon_representation(S: Semigroup, E: Semilattice) -> SetRepresentation:
    """epsilon: X -> {sigma : sigma ⊑ X}, points are the strings of S."""
    strings = all_strings(S)
    return SetRepresentation(
        tuple(strings),
        tuple(
            frozenset(
                k for k, sigma in enumerate(strings)
                if asymptotically_contained(S, sigma, X)
            )
            for X in E.members
        ),
    )


def is_degenerate_string(S: Semigroup, sigma: StringSet) -> bool:
    return len(sigma) == 1 and classify_element(S, next(iter(sigma))).degenerate


def phi_from_string(S: Semigroup, E: Semilattice, sigma: StringSet) -> Character:
    """phi_sigma(X) = [sigma ⊑ X]."""
    if not is_string(S, sigma):
        raise PreconditionError(f"{S.format_set(sigma)} is not a string")
    if is_degenerate_string(S, sigma):
        raise PreconditionError(
            f"{S.format_set(sigma)} is degenerate and gives the zero character"
        )
    return Character(
        tuple(int(asymptotically_contained(S, sigma, X)) for X in E.members)
    )


def sigma_from_char(S: Semigroup, E: Semilattice, phi: Character) -> frozenset[int]:
    """sigma_phi = {s : phi(E_s) = 1}; empty for ground characters."""
    return frozenset(
        s for s in S.nonzero if phi(E.index(range_set(S, s)))
    )


def e1_membership(S: Semigroup, X: Iterable[int]) -> bool:
    """X lies in E_1(S): contained in some E_s."""
    X = frozenset(X)
    return any(X <= range_set(S, s) for s in S.elements)


def e1_ideal(S: Semigroup, E: Semilattice) -> frozenset[int]:
    return frozenset(i for i, X in enumerate(E.members) if e1_membership(S, X))


@dataclass(frozen=True)
class CharacterClass:
    ground: bool
    open: bool
    in_e1hat: bool


def classify_character(S: Semigroup, E: Semilattice, phi: Character) -> CharacterClass:
    sigma = sigma_from_char(S, E, phi)
    return CharacterClass(
        ground=not sigma,
        open=bool(sigma) and is_open(S, sigma),
        in_e1hat=bool(phi.support & e1_ideal(S, E)),
    )


def outside_e1hat(S: Semigroup, E: Semilattice, sigma: StringSet) -> bool:
    """phi_sigma vanishes on E_1(S)."""
    phi = phi_from_string(S, E, sigma)
    return not (phi.support & e1_ideal(S, E))


# ---- the dual representation ----

def dual_theta(S: Semigroup, E: Semilattice, s: int, phi: Character) -> Character:
    """X -> phi(s^-1[X]), defined when phi(F_s) = 1."""
    if not phi(E.index(source_set(S, s))):
        raise PreconditionError(f"character is outside the domain of θ̂_{S.name(s)}")
    return Character(
        tuple(phi(E.index(conjugate_backward(S, s, X))) for X in E.members)
    )


def dual_theta_inv(S: Semigroup, E: Semilattice, s: int, phi: Character) -> Character:
    """X -> phi(s[X]), defined when phi(E_s) = 1."""
    if not phi(E.index(range_set(S, s))):
        raise PreconditionError(f"character is outside the range of θ̂_{S.name(s)}")
    return Character(
        tuple(phi(E.index(conjugate_forward(S, s, X))) for X in E.members)
    )


def nonopen_decomposition(
    S: Semigroup, E: Semilattice, phi: Character
) -> tuple[SOrOne, Character]:
    """The unique (u, ground phi0) with phi = θ̂_u(phi0)."""
    kind = classify_character(S, E, phi)
    if kind.open:
        raise PreconditionError("character is open")
    if kind.ground:
        return ONE, phi
    r = string_top(S, sigma_from_char(S, E, phi))
    assert r is not None
    return r, dual_theta_inv(S, E, r, phi)


@dataclass
class Census:
    open_ultras: list[tuple[StringSet, Character]] = field(default_factory=list)
    nonopen_ultras: list[tuple[SOrOne, Character, Character]] = field(
        default_factory=list
    )
    quasi_maximal_strings: list[StringSet] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.open_ultras) + len(self.nonopen_ultras)


def ultra_census(S: Semigroup, E: Semilattice) -> Census:
    """Split ultracharacters into open ones and the orbit of ground ones.

    Non-open entries are (u, ground character, the ultracharacter itself).
    """
    if not S.flags.admits_lcms:
        raise PreconditionError("S does not admit least common multiples")
    census = Census()
    ultras = ultracharacters(E)
    for phi in ultras:
        if classify_character(S, E, phi).open:
            census.open_ultras.append((sigma_from_char(S, E, phi), phi))
        else:
            u, ground = nonopen_decomposition(S, E, phi)
            census.nonopen_ultras.append((u, ground, phi))
    ultra_set = set(ultras)
    census.quasi_maximal_strings = [
        sigma for sigma in all_strings(S)
        if not is_degenerate_string(S, sigma)
        and phi_from_string(S, E, sigma) in ultra_set
    ]
    logger.debug(
        "census: %d open, %d non-open ultracharacters",
        len(census.open_ultras), len(census.nonopen_ultras),
    )
    return census


# ---- restriction to an ideal ----

@dataclass(frozen=True)
class IdealRestriction:
    ideal: frozenset[int]
    domain: tuple[Filter, ...]
    ideal_filters: tuple[Filter, ...]
    lift: dict[Filter, Filter]
    restrict: dict[Filter, Filter]


def ideal_restriction(E: Semilattice, J: Iterable[int]) -> IdealRestriction:
    """Filters of J against the filters of E meeting J."""
    J = frozenset(J)
    if E.zero not in J or any(
        int(E.meet[j, x]) not in J for j in J for x in range(len(E))
    ):
        raise PreconditionError("J is not an ideal of the semilattice")
    ideal_filters = tuple(E.up(j) & J for j in sorted(J) if j != E.zero)
    domain = tuple(xi for xi in filters(E) if xi & J)
    lift = {
        eta: frozenset().union(*(E.up(j) for j in eta)) for eta in ideal_filters
    }
    restrict = {xi: xi & J for xi in domain}
    return IdealRestriction(J, domain, ideal_filters, lift, restrict)


def render_character(S: Semigroup, E: Semilattice, phi: Character) -> str:
    if not phi.support:
        return "0"
    return "↑" + S.format_set(E.members[filter_generator(E, phi.support)])
