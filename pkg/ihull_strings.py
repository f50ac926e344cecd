"""Strings in S, the theta-star action, interiors and the hull action on strings.

A string is a nonempty, zero-free subset of S that is hereditary and
directed under divisibility. In a finite semigroup every string is delta_s,
the divisor set of its top element, so S-star is enumerated from divisor
columns; a subset-enumeration oracle cross-checks this for small S.

Strings are plain ``frozenset[int]`` of element indices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from ihull_errors import CapExceededError, PreconditionError
from ihull_hull import (
    ONE,
    PartialBijection,
    SOrOne,
    constructible_closure,
    lambda_source,
    range_set,
    source_set,
)
from ihull_semigroup import Semigroup, classify_element, divides, divisors

logger = logging.getLogger("ihull.strings")

StringSet = frozenset[int]


def delta(S: Semigroup, s: int) -> StringSet:
    """delta_s, the divisors of a nonzero s."""
    if s == S.zero:
        raise PreconditionError("delta_0 is not a string")
    return divisors(S, s)


def sort_strings(strings: Iterable[StringSet]) -> list[StringSet]:
    return sorted(set(strings), key=lambda sigma: (len(sigma), sorted(sigma)))


def is_directed(S: Semigroup, A: Iterable[int]) -> bool:
    members = list(A)
    return all(
        any(divides(S, a, c) and divides(S, b, c) for c in members)
        for a, b in combinations(members, 2)
    )


def is_hereditary(S: Semigroup, A: Iterable[int]) -> bool:
    members = set(A)
    return all(divisors(S, a) <= members for a in members)


def is_string(S: Semigroup, A: Iterable[int]) -> bool:
    members = frozenset(A)
    return (
        bool(members)
        and S.zero not in members
        and is_hereditary(S, members)
        and is_directed(S, members)
    )


def all_strings(S: Semigroup) -> list[StringSet]:
    """S-star as {delta_s : s in S'}, deduplicated."""
    return sort_strings(delta(S, s) for s in S.nonzero)


def all_strings_bruteforce(S: Semigroup, limit: int = 12) -> list[StringSet]:
    """Every subset of S' passing is_string; exponential, capped by ``limit``."""
    if len(S.nonzero) > limit:
        raise CapExceededError("oracle semigroup size", limit)
    found = []
    for size in range(1, len(S.nonzero) + 1):
        for subset in combinations(S.nonzero, size):
            if is_string(S, subset):
                found.append(frozenset(subset))
    logger.debug("subset oracle: %d strings among %d elements", len(found), len(S.nonzero))
    return sort_strings(found)


def maximal_strings(S: Semigroup) -> list[StringSet]:
    strings = all_strings(S)
    return [a for a in strings if not any(a < b for b in strings)]


def string_top(S: Semigroup, sigma: StringSet) -> int | None:
    """Smallest r with delta_r = sigma."""
    for r in sorted(sigma):
        if divisors(S, r) == sigma:
            return r
    return None


# ---- interior and openness ----

def interior(S: Semigroup, sigma: StringSet) -> frozenset[int]:
    """{s : sp in sigma for some p in S}."""
    members = sorted(sigma)
    hits = np.isin(S.table, members).any(axis=1)
    return frozenset(int(s) for s in np.flatnonzero(hits))


def is_open(S: Semigroup, sigma: StringSet) -> bool:
    return interior(S, sigma) == sigma


# ---- the theta-star action ----

def hereditary_closure(S: Semigroup, A: Iterable[int]) -> frozenset[int]:
    """h(A), every divisor of a nonzero member of A."""
    result: set[int] = set()
    for a in A:
        if a != S.zero:
            result |= divisors(S, a)
    return frozenset(result)


def star_forward(S: Semigroup, r: int, sigma: StringSet) -> StringSet:
    """r * sigma = h(r sigma), defined when r sigma avoids 0."""
    image = [S.mul(r, s) for s in sigma]
    if S.zero in image:
        raise PreconditionError(
            f"{S.format_set(sigma)} is outside F*_{S.name(r)}"
        )
    return hereditary_closure(S, image)


def star_backward(S: Semigroup, r: int, sigma: StringSet) -> StringSet:
    """r^-1 * sigma = {t : rt in sigma}, defined when sigma meets rS."""
    result = frozenset(t for t in S.elements if S.mul(r, t) in sigma)
    if not result:
        raise PreconditionError(
            f"{S.format_set(sigma)} is outside E*_{S.name(r)}"
        )
    return result


def star_tilde(S: Semigroup, u: SOrOne, sigma: StringSet) -> StringSet:
    return sigma if u is ONE else star_forward(S, u, sigma)


def star_domains(S: Semigroup, r: int) -> tuple[list[StringSet], list[StringSet]]:
    """(F*_r, E*_r): strings inside F_r, and strings meeting E_r."""
    F_r, E_r = source_set(S, r), range_set(S, r)
    strings = all_strings(S)
    return (
        [sigma for sigma in strings if sigma <= F_r],
        [sigma for sigma in strings if sigma & E_r],
    )


def f_star_lambda(S: Semigroup, lam: Iterable[SOrOne]) -> list[StringSet]:
    """F*_Lambda, the strings contained in F_Lambda."""
    F = lambda_source(S, lam)
    return [sigma for sigma in all_strings(S) if sigma <= F]


def image_of_F_star(S: Semigroup, u: SOrOne, lam: Iterable[SOrOne]) -> list[StringSet]:
    """theta*_u applied to the members of F*_Lambda lying in F*_u."""
    F_u = lambda_source(S, [u])
    return sort_strings(
        star_tilde(S, u, sigma) for sigma in f_star_lambda(S, lam) if sigma <= F_u
    )


# ---- classification ----

@dataclass(frozen=True)
class StringClass:
    open: bool
    maximal: bool
    degenerate: bool
    prime_singleton: bool
    dead_end: bool


def classify_string(S: Semigroup, sigma: StringSet) -> StringClass:
    if not is_string(S, sigma):
        raise PreconditionError(f"{S.format_set(sigma)} is not a string")
    singleton = next(iter(sigma)) if len(sigma) == 1 else None
    element = classify_element(S, singleton) if singleton is not None else None
    top = string_top(S, sigma)
    return StringClass(
        open=is_open(S, sigma),
        maximal=sigma in maximal_strings(S),
        degenerate=element is not None and element.degenerate,
        prime_singleton=element is not None and element.prime,
        dead_end=top is not None and bool((S.table[top] == S.zero).all()),
    )


def maximal_is_open_or_dead_end(S: Semigroup) -> bool:
    """Each maximal string is open or delta_r with rS = {0}."""
    return all(
        c.open or c.dead_end
        for c in (classify_string(S, sigma) for sigma in maximal_strings(S))
    )


# ---- order machinery ----

def asymptotically_contained(
    S: Semigroup, D: Iterable[int], E: Iterable[int]
) -> bool:
    """D ⊑ E: the members of D lying in E are cofinal in D."""
    D = frozenset(D)
    if not is_directed(S, D):
        raise PreconditionError(f"{S.format_set(D)} is not directed")
    inside = D & frozenset(E)
    return all(any(divides(S, d, e) for e in inside) for d in D)


def sigma_action(S: Semigroup, phi: PartialBijection, sigma: StringSet) -> StringSet:
    """phi acting on strings: h(phi(F_phi ∩ sigma)), for sigma ⊑ F_phi."""
    if not asymptotically_contained(S, sigma, phi.domain):
        raise PreconditionError(
            f"{S.format_set(sigma)} is not asymptotically contained in the domain"
        )
    return hereditary_closure(S, (phi.forward[x] for x in sigma & phi.domain))


def knock_off_h(S: Semigroup, phi: PartialBijection, A: Iterable[int]) -> bool:
    """h(phi(F_phi ∩ h(A))) == h(phi(F_phi ∩ A))."""
    A = frozenset(A)
    dom = phi.domain

    def pushed(X: frozenset[int]) -> frozenset[int]:
        return hereditary_closure(S, (phi.forward[x] for x in X & dom))

    return pushed(hereditary_closure(S, A)) == pushed(A)


def epsilon(
    S: Semigroup,
    X: Iterable[int],
    constructible: list[frozenset[int]] | None = None,
) -> list[StringSet]:
    """epsilon(X) = {sigma in S-star : sigma ⊑ X} for constructible X."""
    X = frozenset(X)
    if constructible is None:
        constructible = constructible_closure(S)
    if X not in constructible:
        raise PreconditionError(f"{S.format_set(X)} is not constructible")
    return [
        sigma for sigma in all_strings(S) if asymptotically_contained(S, sigma, X)
    ]


# ---- word lengths ----

def word_length(S: Semigroup, s: int) -> int:
    if S.words is None:
        raise PreconditionError("semigroup was not built from a language")
    if s == S.zero:
        raise PreconditionError("0 has no length")
    return len(S.words[s])


def is_bounded(S: Semigroup, X: Iterable[int], bound: int) -> bool:
    return all(word_length(S, x) <= bound for x in X)


def is_length_function(S: Semigroup, ell: Mapping[int, int]) -> bool:
    """Monotone under divisibility, and r | st with l(r) <= l(s) forces r | s."""
    nz = S.nonzero
    for s in nz:
        for t in nz:
            if divides(S, s, t) and ell[s] > ell[t]:
                return False
    for s in nz:
        for t in nz:
            st = S.mul(s, t)
            if st == S.zero:
                continue
            for r in nz:
                if divides(S, r, st) and ell[r] <= ell[s] and not divides(S, r, s):
                    return False
    return True
