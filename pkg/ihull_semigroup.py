"""Finite semigroups with zero, stored as validated multiplication tables.

Elements are identified by their index into ``Semigroup.names``; the zero
token is literally ``"0"`` in input files. Everything else in the package
(hull, strings, spectrum) takes a ``Semigroup`` as its universe.

Usage:
    S = validate_semigroup(["0", "e", "s"], "0",
                           [["0", "0", "0"], ["0", "e", "0"], ["0", "s", "0"]])
    property_flags(S).zero_left_cancellative      # True
    classify_element(S, S.index("s")).prime       # True
    lcm(S, S.index("e"), S.index("e"))            # index of e
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from ihull_errors import PreconditionError, ValidationError

logger = logging.getLogger("ihull.semigroup")

ZERO_TOKEN = "0"


class Semigroup:
    """Immutable finite semigroup with a designated zero element.

    The main attributes (always present) are:
        - names: element tokens, names[i] is element i
        - zero: index of the zero element
        - table: read-only n x n numpy array, table[i, j] = index of names[i]*names[j]
        - unit: index of the two-sided identity, or None
        - words: per-element letter tuples when built from a language, else None

    The right-ideal and divisibility matrices are built here; lcms and the
    property flags are computed on first use and cached. Instances must
    never be mutated.
    """

    def __init__(
        self,
        names: Sequence[str],
        zero: int,
        table: np.ndarray,
        unit: int | None = None,
        words: Sequence[tuple[str, ...]] | None = None,
    ):
        self.names: tuple[str, ...] = tuple(names)
        self.zero = zero
        table = np.array(table, dtype=np.intp)
        table.setflags(write=False)
        self.table = table
        self.unit = unit
        self.words = tuple(words) if words is not None else None
        self._index = {name: i for i, name in enumerate(self.names)}

        ideals = np.zeros((self.n, self.n), dtype=bool)
        for s in range(self.n):
            ideals[s, table[s]] = True
        ideals.setflags(write=False)
        # right_ideal_matrix[s, x]: x lies in sS
        self.right_ideal_matrix = ideals
        division = ideals | np.eye(self.n, dtype=bool)
        division.setflags(write=False)
        # division[s, t]: s divides t, i.e. t = s or t in sS
        self.division = division

    def __repr__(self) -> str:
        return f"Semigroup(n={self.n}, names={list(self.names)})"

    def __len__(self) -> int:
        return self.n

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValidationError(f"unknown element {name!r}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def product(self, *xs: int) -> int:
        result = xs[0]
        for x in xs[1:]:
            result = int(self.table[result, x])
        return result

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(range(self.n))

    @cached_property
    def nonzero(self) -> tuple[int, ...]:
        """S' = S minus {0}, in index order."""
        return tuple(i for i in range(self.n) if i != self.zero)

    @cached_property
    def squares(self) -> frozenset[int]:
        """S^2, the set of all products."""
        return frozenset(int(x) for x in np.unique(self.table))

    @cached_property
    def flags(self) -> PropertyFlags:
        return property_flags(self)

    @cached_property
    def lcm_table(self) -> dict[tuple[int, int], int | None]:
        """lcm for every ordered pair, smallest-index tie-break."""
        ri = self.right_ideal_matrix
        div = self.division
        result: dict[tuple[int, int], int | None] = {}
        for s in range(self.n):
            for t in range(s, self.n):
                common = ri[s] & ri[t]
                generates = (ri == common).all(axis=1)
                candidates = np.flatnonzero(generates & div[s] & div[t])
                r = int(candidates[0]) if candidates.size else None
                result[(s, t)] = result[(t, s)] = r
        return result

    def format_set(self, xs: Iterable[int]) -> str:
        return "{" + ",".join(self.names[x] for x in sorted(xs)) + "}"

    def sorted_names(self, xs: Iterable[int]) -> list[str]:
        return [self.names[x] for x in sorted(xs)]


@dataclass(frozen=True)
class PropertyFlags:
    zero_left_cancellative: bool
    zero_right_cancellative: bool
    categorical_at_zero: bool
    right_reductive: bool
    right_local_units: bool
    unital: bool
    admits_lcms: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "zero_left_cancellative": self.zero_left_cancellative,
            "zero_right_cancellative": self.zero_right_cancellative,
            "categorical_at_zero": self.categorical_at_zero,
            "right_reductive": self.right_reductive,
            "right_local_units": self.right_local_units,
            "unital": self.unital,
            "admits_lcms": self.admits_lcms,
        }


@dataclass(frozen=True)
class ElementClass:
    idempotent: bool
    prime: bool
    irreducible: bool
    degenerate: bool
    right_unit: int | None


class AlignmentKind(Enum):
    PRINCIPAL = "principal"
    BASIS = "basis"
    GENERATING = "generating"
    NONE = "none"


@dataclass(frozen=True)
class Alignment:
    kind: AlignmentKind
    witnesses: frozenset[int]


# ---- construction ----

def _identity_of(table: np.ndarray) -> int | None:
    n = table.shape[0]
    idx = np.arange(n)
    for e in range(n):
        if (table[e] == idx).all() and (table[:, e] == idx).all():
            return e
    return None


def validate_semigroup(
    names: Sequence[str],
    zero_name: str,
    table_rows: Sequence[Sequence[str]],
    words: Sequence[tuple[str, ...]] | None = None,
) -> Semigroup:
    """Build a Semigroup from element tokens and rows of product tokens.

    Raises ValidationError on duplicate names, unknown tokens, a non-square
    table, a non-absorbing zero, or the first associativity violation found.
    """
    names = list(names)
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise ValidationError(f"duplicate element name {name!r}")
        seen.add(name)
    if zero_name not in seen:
        raise ValidationError(f"zero element {zero_name!r} is not among the names")

    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    if len(table_rows) != n:
        raise ValidationError(f"table has {len(table_rows)} rows, expected {n}")
    table = np.empty((n, n), dtype=np.intp)
    for i, row in enumerate(table_rows):
        if len(row) != n:
            raise ValidationError(
                f"row {names[i]!r} has {len(row)} entries, expected {n}"
            )
        for j, token in enumerate(row):
            if token not in index:
                raise ValidationError(
                    f"unknown token {token!r} at ({names[i]}, {names[j]})"
                )
            table[i, j] = index[token]

    zero = index[zero_name]
    if not ((table[zero] == zero).all() and (table[:, zero] == zero).all()):
        raise ValidationError(f"{zero_name!r} is not absorbing")

    # left[x, y, z] = (xy)z and right[x, y, z] = x(yz)
    left = table[table]
    right = table[:, table]
    bad = np.argwhere(left != right)
    if bad.size:
        x, y, z = (int(v) for v in bad[0])
        raise ValidationError(
            f"associativity fails for ({names[x]}, {names[y]}, {names[z]}): "
            f"({names[x]}{names[y]}){names[z]} = {names[left[x, y, z]]} but "
            f"{names[x]}({names[y]}{names[z]}) = {names[right[x, y, z]]}"
        )

    S = Semigroup(names, zero, table, unit=_identity_of(table), words=words)
    logger.debug("Validated %r", S)
    return S


# ---- global predicates ----

def _rows_injective_off_zero(table: np.ndarray, zero: int) -> bool:
    for row in table:
        values = row[row != zero]
        if np.unique(values).size != values.size:
            return False
    return True


def admits_lcms(S: Semigroup) -> bool:
    return all(r is not None for r in S.lcm_table.values())


def property_flags(S: Semigroup) -> PropertyFlags:
    """Every flag by a literal scan of its definition."""
    T = S.table
    z = S.zero
    nonzero_products = T != z
    # rs != 0 and st != 0 but (rs)t == 0
    broken = (
        nonzero_products[:, :, None]
        & nonzero_products[None, :, :]
        & (T[T] == z)
    )
    ri = S.right_ideal_matrix
    return PropertyFlags(
        zero_left_cancellative=_rows_injective_off_zero(T, z),
        zero_right_cancellative=_rows_injective_off_zero(T.T, z),
        categorical_at_zero=not bool(broken.any()),
        right_reductive=np.unique(T, axis=0).shape[0] == S.n,
        right_local_units=all(ri[s, s] for s in S.nonzero),
        unital=S.unit is not None,
        admits_lcms=admits_lcms(S),
    )


# ---- element-level structure ----

def principal_right_ideal(S: Semigroup, s: int) -> frozenset[int]:
    """sS, which always contains 0."""
    return frozenset(int(x) for x in np.flatnonzero(S.right_ideal_matrix[s]))


def divides(S: Semigroup, s: int, t: int) -> bool:
    return bool(S.division[s, t])


def divisors(S: Semigroup, s: int) -> frozenset[int]:
    """delta_s, every t with t = s or tu = s for some u."""
    return frozenset(int(t) for t in np.flatnonzero(S.division[:, s]))


def right_unit(S: Semigroup, s: int) -> int | None:
    """The idempotent e with se = s, when s lies in sS."""
    for e in np.flatnonzero(S.table[s] == s):
        if S.mul(int(e), int(e)) == e:
            return int(e)
    return None


def classify_element(S: Semigroup, s: int) -> ElementClass:
    if s == S.zero:
        raise PreconditionError("classify_element needs a nonzero element")
    in_square = s in S.squares
    annihilated = bool((S.table[:, s] == S.zero).all())
    return ElementClass(
        idempotent=S.mul(s, s) == s,
        prime=divisors(S, s) == {s},
        irreducible=not in_square,
        degenerate=not in_square and annihilated,
        right_unit=right_unit(S, s),
    )


def degenerate_elements(S: Semigroup) -> frozenset[int]:
    return frozenset(s for s in S.nonzero if classify_element(S, s).degenerate)


def essential_subset(S: Semigroup) -> frozenset[int]:
    """Elements of S' lying in some F_t, i.e. S' minus the degenerate ones."""
    return frozenset(S.nonzero) - degenerate_elements(S)


def lcm(S: Semigroup, s: int, t: int) -> int | None:
    """r with sS ∩ tS = rS and s | r, t | r; None when no such r exists."""
    return S.lcm_table[(s, t)]


# ---- alignment ----

def _generated(S: Semigroup, gens: Iterable[int]) -> frozenset[int]:
    ideal = {S.zero}
    for g in gens:
        ideal |= principal_right_ideal(S, g)
    return frozenset(ideal)


def _pairwise_orthogonal(S: Semigroup, gens: Sequence[int]) -> bool:
    return all(
        principal_right_ideal(S, b) & principal_right_ideal(S, c) == {S.zero}
        for b, c in combinations(gens, 2)
    )


def alignment(S: Semigroup, s: int, t: int) -> Alignment:
    """Classify how sS ∩ tS is generated by common multiples of s and t.

    A basis, when one exists, has one member per maximal principal right
    ideal cS among the common multiples c. Witnesses are the smallest
    representative of each such ideal.
    """
    if S.zero in (s, t):
        raise PreconditionError("alignment is defined for nonzero s and t")
    r = lcm(S, s, t)
    if r is not None:
        return Alignment(AlignmentKind.PRINCIPAL, frozenset({r}))

    target = principal_right_ideal(S, s) & principal_right_ideal(S, t)
    common = [
        c for c in sorted(target)
        if c != S.zero and divides(S, s, c) and divides(S, t, c)
    ]
    if _generated(S, common) != target:
        return Alignment(AlignmentKind.NONE, frozenset())

    ideals = {c: principal_right_ideal(S, c) for c in common}
    zero_ideal = frozenset({S.zero})
    reps: dict[frozenset[int], int] = {}
    for c in common:
        ideal = ideals[c]
        if ideal == zero_ideal or any(ideal < other for other in ideals.values()):
            continue
        reps.setdefault(ideal, c)
    gens = sorted(reps.values())
    if _pairwise_orthogonal(S, gens):
        return Alignment(AlignmentKind.BASIS, frozenset(gens))
    return Alignment(AlignmentKind.GENERATING, frozenset(gens))


# ---- ideals and quotients ----

def is_right_ideal(S: Semigroup, ideal: Iterable[int]) -> bool:
    members = set(ideal)
    return bool(members) and all(
        S.mul(x, y) in members for x in members for y in S.elements
    )


def is_ideal(S: Semigroup, ideal: Iterable[int]) -> bool:
    members = set(ideal)
    return is_right_ideal(S, members) and all(
        S.mul(y, x) in members for x in members for y in S.elements
    )


def rees_quotient(S: Semigroup, ideal: Iterable[int]) -> Semigroup:
    """Collapse the ideal I to the zero element; names of S minus I are kept."""
    members = set(ideal)
    if S.zero not in members:
        raise PreconditionError("the ideal must contain 0")
    if not is_ideal(S, members):
        raise PreconditionError(f"{S.format_set(members)} is not an ideal")

    kept = [i for i in S.elements if i == S.zero or i not in members]
    new_index = {old: new for new, old in enumerate(kept)}
    zero = new_index[S.zero]
    table = np.empty((len(kept), len(kept)), dtype=np.intp)
    for i, x in enumerate(kept):
        for j, y in enumerate(kept):
            p = S.mul(x, y)
            table[i, j] = zero if p in members else new_index[p]
    words = [S.words[i] for i in kept] if S.words is not None else None
    Q = Semigroup([S.names[i] for i in kept], zero, table, _identity_of(table), words)
    logger.debug("Rees quotient of %r by %s -> %r", S, S.format_set(members), Q)
    return Q
