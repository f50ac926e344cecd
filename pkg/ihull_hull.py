"""Partial bijections on S', the regular representation and the inverse hull.

A hull element is a ``PartialBijection`` on nonzero element indices. The
hull H(S) is generated breadth-first from the maps theta_s and their
inverses; every element keeps the generator word that first produced it.

For semigroups admitting least common multiples the module also carries the
normal-form calculus: theta_u f_Lambda theta_v^-1 with u, v drawn from the
unitized semigroup S~ = S + {ONE}.

Usage:
    hull = generate_hull(S)
    constructible_sets(S, hull=hull)       # E(S), sorted by (size, indices)
    nf = hull_normal_form(S, hull, phi)    # needs lcms
    nf_evaluate(S, nf) == phi
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence, Union

from ihull_errors import CapExceededError, PreconditionError, ValidationError
from ihull_semigroup import (
    AlignmentKind,
    Semigroup,
    alignment,
    right_unit,
)

logger = logging.getLogger("ihull.hull")

DEFAULT_MAX_HULL = 100000


class Unit(Enum):
    """The external unit adjoined to S; never an element of any table."""

    ONE = "1*"

    def __repr__(self) -> str:
        return "ONE"


ONE = Unit.ONE

SOrOne = Union[int, Unit]


def tilde_key(x: SOrOne) -> int:
    """Sort key on S~: ONE first, then index order."""
    return -1 if x is ONE else int(x)


def tilde_name(S: Semigroup, x: SOrOne) -> str:
    return ONE.value if x is ONE else S.name(x)


def tilde_mul(S: Semigroup, x: SOrOne, y: SOrOne) -> SOrOne:
    if x is ONE:
        return y
    if y is ONE:
        return x
    return S.mul(x, y)


# ---- partial bijections ----

@dataclass(frozen=True)
class PartialBijection:
    """Injective partial map on nonzero element indices.

    ``f @ g`` is composition with g applied first; ``f.inv`` is the inverse.
    """

    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        sources = {a for a, _ in self.pairs}
        targets = {b for _, b in self.pairs}
        if len(sources) != len(self.pairs) or len(targets) != len(self.pairs):
            raise ValidationError("partial bijection must be injective and single-valued")

    @classmethod
    def from_dict(cls, mapping: dict[int, int]) -> PartialBijection:
        return cls(frozenset(mapping.items()))

    @classmethod
    def identity(cls, domain: Iterable[int]) -> PartialBijection:
        return cls(frozenset((x, x) for x in domain))

    @classmethod
    def empty(cls) -> PartialBijection:
        return cls(frozenset())

    @cached_property
    def forward(self) -> dict[int, int]:
        return dict(self.pairs)

    @cached_property
    def domain(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.pairs)

    @cached_property
    def range(self) -> frozenset[int]:
        return frozenset(b for _, b in self.pairs)

    @property
    def inv(self) -> PartialBijection:
        return PartialBijection(frozenset((b, a) for a, b in self.pairs))

    def __call__(self, x: int) -> int | None:
        return self.forward.get(x)

    def __matmul__(self, other: PartialBijection) -> PartialBijection:
        fwd = self.forward
        return PartialBijection(
            frozenset((a, fwd[b]) for a, b in other.pairs if b in fwd)
        )

    def __len__(self) -> int:
        return len(self.pairs)

    def __bool__(self) -> bool:
        return bool(self.pairs)

    def is_idempotent(self) -> bool:
        """Structural test: identity map on its own domain."""
        return all(a == b for a, b in self.pairs)

    def fixed_points(self) -> frozenset[int]:
        return frozenset(a for a, b in self.pairs if a == b)

    def restrict(self, domain: Iterable[int]) -> PartialBijection:
        keep = set(domain)
        return PartialBijection(frozenset(p for p in self.pairs if p[0] in keep))

    def leq(self, other: PartialBijection) -> bool:
        """Natural order: self is a restriction of other."""
        return self.pairs <= other.pairs

    def sort_key(self) -> tuple[int, tuple[tuple[int, int], ...]]:
        return (len(self.pairs), tuple(sorted(self.pairs)))

    def render(self, S: Semigroup) -> str:
        body = ",".join(f"{S.name(a)}->{S.name(b)}" for a, b in sorted(self.pairs))
        return "{" + body + "}"


def _require_left_cancellative(S: Semigroup) -> None:
    if not S.flags.zero_left_cancellative:
        raise PreconditionError(
            "S is not 0-left cancellative, so x -> sx is not injective"
        )


def regular_rep(S: Semigroup, s: int) -> PartialBijection:
    """theta_s: F_s -> E_s, x -> sx."""
    _require_left_cancellative(S)
    row = S.table[s]
    return PartialBijection(
        frozenset((x, int(row[x])) for x in S.nonzero if row[x] != S.zero)
    )


def theta_tilde(S: Semigroup, u: SOrOne) -> PartialBijection:
    """theta extended to S~, with ONE acting as the identity on S'."""
    if u is ONE:
        return PartialBijection.identity(S.nonzero)
    return regular_rep(S, u)


def source_set(S: Semigroup, s: int) -> frozenset[int]:
    """F_s = {x in S' : sx != 0}."""
    return frozenset(x for x in S.nonzero if S.mul(s, x) != S.zero)


def range_set(S: Semigroup, s: int) -> frozenset[int]:
    """E_s = sS minus {0}."""
    return frozenset(int(x) for x in S.table[s] if x != S.zero)


def conjugate_forward(S: Semigroup, s: int, X: Iterable[int]) -> frozenset[int]:
    """s[X] = theta_s(F_s ∩ X)."""
    row = S.table[s]
    return frozenset(int(row[x]) for x in X if row[x] != S.zero)


def conjugate_backward(S: Semigroup, s: int, X: Iterable[int]) -> frozenset[int]:
    """s^-1[X] = theta_s^-1(E_s ∩ X)."""
    members = set(X)
    return frozenset(y for y in S.nonzero if S.mul(s, y) in members)


# ---- hull generation ----

# (element index, inverted)
Letter = tuple[int, bool]
Word = tuple[Letter, ...]


def render_word(S: Semigroup, word: Word) -> str:
    return " ".join(
        f"θ[{S.name(s)}]" + ("⁻¹" if inverted else "") for s, inverted in word
    )


@dataclass(frozen=True)
class Hull:
    """H(S) in breadth-first order, with a generator word per element."""

    semigroup: Semigroup
    elements: tuple[PartialBijection, ...]
    witness: dict[PartialBijection, Word]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[PartialBijection]:
        return iter(self.elements)

    def __contains__(self, phi: object) -> bool:
        return phi in self.witness

    @cached_property
    def idempotents(self) -> tuple[PartialBijection, ...]:
        return tuple(phi for phi in self.elements if phi.is_idempotent())


def generators(S: Semigroup) -> list[tuple[Letter, PartialBijection]]:
    gens: list[tuple[Letter, PartialBijection]] = []
    for s in S.elements:
        theta = regular_rep(S, s)
        gens.append(((s, False), theta))
        gens.append(((s, True), theta.inv))
    return gens


def generate_hull(S: Semigroup, cap: int = DEFAULT_MAX_HULL) -> Hull:
    """Close {theta_s, theta_s^-1} under composition, breadth-first.

    Raises CapExceededError once more than ``cap`` distinct maps appear.
    """
    _require_left_cancellative(S)
    gens = generators(S)
    witness: dict[PartialBijection, Word] = {}
    order: list[PartialBijection] = []
    queue: deque[PartialBijection] = deque()

    def visit(phi: PartialBijection, word: Word) -> None:
        if phi in witness:
            return
        witness[phi] = word
        order.append(phi)
        if len(order) > cap:
            logger.warning("hull generation aborted after %d elements", cap)
            raise CapExceededError("hull size", cap)
        queue.append(phi)

    for letter, theta in gens:
        visit(theta, (letter,))
    while queue:
        phi = queue.popleft()
        word = witness[phi]
        for letter, theta in gens:
            visit(phi @ theta, word + (letter,))

    logger.debug("Generated hull of %r: %d elements", S, len(order))
    return Hull(S, tuple(order), witness)


def _sorted_sets(sets: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    return sorted(set(sets), key=lambda X: (len(X), sorted(X)))


def constructible_sets(
    S: Semigroup, hull: Hull | None = None, cap: int = DEFAULT_MAX_HULL
) -> list[frozenset[int]]:
    """E(S): domains of the idempotents of H(S)."""
    if hull is None:
        hull = generate_hull(S, cap)
    return _sorted_sets(phi.domain for phi in hull.idempotents)


def constructible_closure(S: Semigroup) -> list[frozenset[int]]:
    """Least family holding every E_s and stable under s[X] and s^-1[X]."""
    family = {range_set(S, s) for s in S.elements}
    frontier = list(family)
    while frontier:
        X = frontier.pop()
        for s in S.elements:
            for Y in (conjugate_forward(S, s, X), conjugate_backward(S, s, X)):
                if Y not in family:
                    family.add(Y)
                    frontier.append(Y)
    return _sorted_sets(family)


def is_zero_e_unitary(hull: Hull) -> bool:
    """Every element with a fixed point is idempotent."""
    return all(
        phi.is_idempotent() for phi in hull.elements if phi.fixed_points()
    )


def is_cover(
    members: Sequence[frozenset[int]], Z: Iterable[frozenset[int]], e: frozenset[int]
) -> bool:
    """Z covers e: each nonempty member below e meets some z in Z."""
    Z = list(Z)
    for z in Z:
        if not z <= e:
            raise PreconditionError("cover members must lie below e")
    return all(
        any(x & z for z in Z) for x in members if x and x <= e
    )


@dataclass(frozen=True)
class AlignedCover:
    basis: tuple[int, ...]
    target: PartialBijection
    cover: tuple[PartialBijection, ...]


def _left_quotient(S: Semigroup, s: int, w: int) -> int:
    """Smallest x with sx = w."""
    for x in S.elements:
        if S.mul(s, x) == w:
            return x
    raise PreconditionError(f"{S.name(w)} is not a multiple of {S.name(s)}")


def aligned_cover(S: Semigroup, s: int, t: int) -> AlignedCover:
    """Idempotents theta_y theta_y^-1 theta_t^-1 theta_t covering
    theta_t^-1 theta_s theta_s^-1 theta_t, one per basis element w = sx = ty."""
    al = alignment(S, s, t)
    if al.kind is AlignmentKind.PRINCIPAL:
        basis = tuple(w for w in al.witnesses if w != S.zero)
    elif al.kind is AlignmentKind.BASIS:
        basis = tuple(sorted(al.witnesses))
    else:
        raise PreconditionError(
            f"sS ∩ tS has no basis for s={S.name(s)}, t={S.name(t)}"
        )
    theta_s, theta_t = regular_rep(S, s), regular_rep(S, t)
    f_t = theta_t.inv @ theta_t
    target = theta_t.inv @ theta_s @ theta_s.inv @ theta_t
    cover = []
    for w in basis:
        y: SOrOne = ONE if w == t else _left_quotient(S, t, w)
        theta_y = theta_tilde(S, y)
        cover.append(theta_y @ theta_y.inv @ f_t)
    return AlignedCover(basis, target, tuple(cover))


# ---- normal forms over S~ ----

@dataclass(frozen=True)
class NormalForm:
    """theta_u f_Lambda theta_v^-1 with u, v in Lambda and Lambda meeting S."""

    u: SOrOne
    lam: frozenset[SOrOne]
    v: SOrOne

    def __post_init__(self) -> None:
        if not any(x is not ONE for x in self.lam):
            raise ValidationError("Lambda must contain an element of S")
        if self.u not in self.lam or self.v not in self.lam:
            raise ValidationError("u and v must belong to Lambda")

    def render(self, S: Semigroup) -> str:
        lam = ",".join(tilde_name(S, x) for x in sorted(self.lam, key=tilde_key))
        return f"({tilde_name(S, self.u)}, {{{lam}}}, {tilde_name(S, self.v)})"


def _require_lcms(S: Semigroup) -> None:
    if not S.flags.admits_lcms:
        raise PreconditionError("S does not admit least common multiples")


def lcm_tilde(S: Semigroup, u: SOrOne, v: SOrOne) -> tuple[SOrOne, SOrOne, SOrOne]:
    """(w, x, y) with w = ux = vy a least common multiple in S~."""
    if u is ONE and v is ONE:
        return ONE, ONE, ONE
    if u is ONE:
        return v, v, ONE
    if v is ONE:
        return u, ONE, u
    w = S.lcm_table[(u, v)]
    if w is None:
        raise PreconditionError(f"no lcm for {S.name(u)} and {S.name(v)}")
    x: SOrOne = ONE if w == u else _left_quotient(S, u, w)
    y: SOrOne = ONE if w == v else _left_quotient(S, v, w)
    return w, x, y


def lambda_source(S: Semigroup, lam: Iterable[SOrOne]) -> frozenset[int]:
    """F_Lambda, the intersection of F_m over m in Lambda (F_ONE = S')."""
    result = frozenset(S.nonzero)
    for m in lam:
        if m is not ONE:
            result &= source_set(S, m)
    return result


def _lam_times(S: Semigroup, lam: Iterable[SOrOne], x: SOrOne) -> frozenset[SOrOne]:
    return frozenset(tilde_mul(S, m, x) for m in lam)


def nf_evaluate(S: Semigroup, nf: NormalForm) -> PartialBijection:
    _require_lcms(S)
    f_lam = PartialBijection.identity(lambda_source(S, nf.lam))
    return theta_tilde(S, nf.u) @ f_lam @ theta_tilde(S, nf.v).inv


def nf_product(S: Semigroup, nf1: NormalForm, nf2: NormalForm) -> NormalForm:
    """(u1 x, Lambda1 x ∪ {w} ∪ Lambda2 y, v2 y) with w = v1 x = u2 y."""
    _require_lcms(S)
    w, x, y = lcm_tilde(S, nf1.v, nf2.u)
    lam = _lam_times(S, nf1.lam, x) | {w} | _lam_times(S, nf2.lam, y)
    return NormalForm(tilde_mul(S, nf1.u, x), lam, tilde_mul(S, nf2.v, y))


def nf_invert(nf: NormalForm) -> NormalForm:
    return NormalForm(nf.v, nf.lam, nf.u)


def _seed(letter: Letter) -> NormalForm:
    s, inverted = letter
    lam = frozenset({s, ONE})
    return NormalForm(ONE, lam, s) if inverted else NormalForm(s, lam, ONE)


def _normalize_local_units(S: Semigroup, nf: NormalForm) -> NormalForm:
    """Move u and v into S and drop ONE from Lambda, using s = s s+."""
    s = min(m for m in nf.lam if m is not ONE)
    plus = right_unit(S, s)
    if plus is None:
        return nf
    u = plus if nf.u is ONE else nf.u
    v = plus if nf.v is ONE else nf.v
    lam = (nf.lam - {ONE}) | {u, v}
    return NormalForm(u, lam, v)


def hull_normal_form(S: Semigroup, hull: Hull, phi: PartialBijection) -> NormalForm:
    """Fold nf_product over the generator word recorded for phi."""
    _require_lcms(S)
    if phi not in hull:
        raise PreconditionError("map is not an element of the hull")
    word = hull.witness[phi]
    nf = _seed(word[0])
    for letter in word[1:]:
        nf = nf_product(S, nf, _seed(letter))
    flags = S.flags
    if phi and flags.right_local_units and flags.right_reductive:
        nf = _normalize_local_units(S, nf)
    return nf


def tilde_elements(S: Semigroup) -> list[SOrOne]:
    return [ONE, *S.elements]


def enumerate_normal_forms(S: Semigroup, lambda_size: int) -> list[NormalForm]:
    """Every (u, Lambda, v) with 1 <= |Lambda| <= lambda_size."""
    _require_lcms(S)
    pool = tilde_elements(S)
    forms = []
    for size in range(1, lambda_size + 1):
        for lam in combinations(pool, size):
            if all(m is ONE for m in lam):
                continue
            lam_set = frozenset(lam)
            for u, v in product(lam, repeat=2):
                forms.append(NormalForm(u, lam_set, v))
    return forms


class EqualityCase(Enum):
    SAME_V = "a"
    FIRST_IDEMPOTENT = "b"
    SECOND_IDEMPOTENT = "c"


@dataclass(frozen=True)
class EqualityWitness:
    x1: SOrOne
    x2: SOrOne
    case: EqualityCase


def _shift(S: Semigroup, nf: NormalForm, x: SOrOne) -> NormalForm | None:
    lam = _lam_times(S, nf.lam, x)
    if all(m is ONE for m in lam):
        return None
    return NormalForm(tilde_mul(S, nf.u, x), lam, tilde_mul(S, nf.v, x))


def _idempotent_dominates(S: Semigroup, z: SOrOne, F: frozenset[int]) -> bool:
    """z is a nonzero idempotent of S and theta_z fixes every point of F."""
    if z is ONE or z == S.zero or S.mul(z, z) != z:
        return False
    return all(S.mul(z, p) == p for p in F)


def equality_witnesses(
    S: Semigroup, nf1: NormalForm, nf2: NormalForm
) -> EqualityWitness | None:
    """Search x1, x2 in S~ relating two forms of one nonzero hull element.

    Both shifted forms must still evaluate to the element, share u x and
    F_{Lambda x}, and satisfy one of: equal v x; v1 x1 an idempotent of S
    dominating f_{Lambda1 x1} with v2 = x2 = ONE; or the mirrored condition.
    """
    target = nf_evaluate(S, nf1)
    if not target or target != nf_evaluate(S, nf2):
        raise PreconditionError("forms must evaluate to the same nonzero map")
    pool = tilde_elements(S)
    for x1, x2 in product(pool, repeat=2):
        g1, g2 = _shift(S, nf1, x1), _shift(S, nf2, x2)
        if g1 is None or g2 is None or g1.u != g2.u:
            continue
        F1, F2 = lambda_source(S, g1.lam), lambda_source(S, g2.lam)
        if F1 != F2:
            continue
        if nf_evaluate(S, g1) != target or nf_evaluate(S, g2) != target:
            continue
        if g1.v == g2.v:
            return EqualityWitness(x1, x2, EqualityCase.SAME_V)
        if nf2.v is ONE and x2 is ONE and _idempotent_dominates(S, g1.v, F1):
            return EqualityWitness(x1, x2, EqualityCase.FIRST_IDEMPOTENT)
        if nf1.v is ONE and x1 is ONE and _idempotent_dominates(S, g2.v, F2):
            return EqualityWitness(x1, x2, EqualityCase.SECOND_IDEMPOTENT)
    return None


def catat_zero_form(S: Semigroup, phi: PartialBijection) -> tuple[int, int] | None:
    """Smallest (s, t) with phi = theta_s theta_t^-1 and s+ = t+."""
    if not phi:
        return None
    units = {s: right_unit(S, s) for s in S.nonzero}
    for s in S.nonzero:
        if units[s] is None:
            continue
        theta_s = regular_rep(S, s)
        for t in S.nonzero:
            if units[t] == units[s] and theta_s @ regular_rep(S, t).inv == phi:
                return s, t
    return None
