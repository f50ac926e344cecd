"""Verification suites: structural identities checked exhaustively on one semigroup.

Each suite is a function of a ``VerifyContext``. It returns a short summary
on success, raises ``Skip`` naming the unmet hypothesis, or raises
``Counterexample`` with the offending data. ``run_suites`` drives them in
registry order and reports to the optional EventLog.

Usage:
    results = run_suites(S, settings)                    # every suite
    results = run_suites(S, settings, ["hull-closure"])  # a selection
    any(r.status is SuiteStatus.FAILED for r in results)
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations, product
from typing import Callable, Sequence

from ihull_config import Settings
from ihull_constructors import (
    FP_ZERO,
    FPTag,
    fp_elements,
    fp_multiply,
    fp_normalize,
    markov_semigroup,
)
from ihull_errors import CapExceededError, PreconditionError, ValidationError
from ihull_hull import (
    ONE,
    Hull,
    PartialBijection,
    aligned_cover,
    catat_zero_form,
    constructible_closure,
    constructible_sets,
    enumerate_normal_forms,
    equality_witnesses,
    generate_hull,
    hull_normal_form,
    is_cover,
    is_zero_e_unitary,
    lambda_source,
    nf_evaluate,
    nf_product,
    regular_rep,
)
from ihull_logging import EventLog
from ihull_semigroup import (
    AlignmentKind,
    Semigroup,
    alignment,
    classify_element,
    divisors,
    is_right_ideal,
    rees_quotient,
)
from ihull_spectrum import (
    Character,
    Semilattice,
    all_characters,
    char_leq,
    char_of,
    classify_character,
    dual_theta,
    dual_theta_inv,
    e1_ideal,
    epsilon_representation,
    filter_of,
    filters,
    filters_bruteforce,
    identity_representation,
    ideal_restriction,
    is_degenerate_string,
    is_pi_tight,
    is_tight_bruteforce,
    is_ultra,
    outside_e1hat,
    phi_from_string,
    pi_tight_characters,
    sigma_from_char,
    tight_characters,
    ultra_census,
    ultracharacters,
)
from ihull_strings import (
    all_strings,
    all_strings_bruteforce,
    asymptotically_contained,
    delta,
    epsilon,
    f_star_lambda,
    interior,
    is_length_function,
    is_open,
    knock_off_h,
    maximal_is_open_or_dead_end,
    maximal_strings,
    sigma_action,
    star_backward,
    star_domains,
    star_forward,
    word_length,
)

logger = logging.getLogger("ihull.verify")


class Skip(Exception):
    """A suite hypothesis does not hold for this semigroup."""


class Counterexample(Exception):
    """A suite found data violating its identity."""


class SuiteStatus(Enum):
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class SuiteResult:
    name: str
    status: SuiteStatus
    detail: str


class VerifyContext:
    """Semigroup plus lazily built hull, semilattice and strings."""

    def __init__(self, S: Semigroup, settings: Settings, oracle: bool = False):
        self.S = S
        self.settings = settings
        self.oracle = oracle

    @cached_property
    def hull(self) -> Hull:
        self.require(self.S.flags.zero_left_cancellative, "S is 0-left cancellative")
        return generate_hull(self.S, self.settings.max_hull)

    @cached_property
    def E(self) -> Semilattice:
        return Semilattice(constructible_sets(self.S, hull=self.hull))

    @cached_property
    def strings(self) -> list[frozenset[int]]:
        return all_strings(self.S)

    @cached_property
    def maximal(self) -> list[frozenset[int]]:
        return maximal_strings(self.S)

    @cached_property
    def characters(self) -> list[Character]:
        return all_characters(self.E)

    @cached_property
    def ultras(self) -> list[Character]:
        return ultracharacters(self.E)

    @staticmethod
    def require(condition: bool, hypothesis: str) -> None:
        if not condition:
            raise Skip(f"requires: {hypothesis}")

    def require_lcms(self) -> None:
        self.require(self.S.flags.zero_left_cancellative, "S is 0-left cancellative")
        self.require(self.S.flags.admits_lcms, "S admits least common multiples")

    def fmt(self, X: frozenset[int]) -> str:
        return self.S.format_set(X)

    def render(self, phi: PartialBijection) -> str:
        return phi.render(self.S)


Suite = Callable[[VerifyContext], str]


# ---- hull suites ----

def suite_representation(ctx: VerifyContext) -> str:
    S = ctx.S
    ctx.require(S.flags.zero_left_cancellative, "S is 0-left cancellative")
    thetas = [regular_rep(S, s) for s in S.elements]
    for s, t in product(S.elements, repeat=2):
        if thetas[s] @ thetas[t] != thetas[S.mul(s, t)]:
            raise Counterexample(f"θ[{S.name(s)}]θ[{S.name(t)}] != θ[{S.name(S.mul(s, t))}]")
    return f"{S.n ** 2} pairs"


def suite_covariance(ctx: VerifyContext) -> str:
    S = ctx.S
    ctx.require(S.flags.zero_left_cancellative, "S is 0-left cancellative")
    thetas = [regular_rep(S, s) for s in S.elements]
    e = [th @ th.inv for th in thetas]
    f = [th.inv @ th for th in thetas]
    for s, t in product(S.elements, repeat=2):
        if thetas[s] @ e[t] != e[S.mul(s, t)] @ thetas[s]:
            raise Counterexample(f"θ_s e_t != e_st θ_s for s={S.name(s)}, t={S.name(t)}")
        if f[t] @ thetas[s] != thetas[s] @ f[S.mul(t, s)]:
            raise Counterexample(f"f_t θ_s != θ_s f_ts for s={S.name(s)}, t={S.name(t)}")
    return f"{S.n ** 2} pairs"


def suite_hull_closure(ctx: VerifyContext) -> str:
    hull = ctx.hull
    for phi in hull:
        if phi.inv not in hull:
            raise Counterexample(f"inverse of {ctx.render(phi)} missing")
        if phi.is_idempotent() != (phi @ phi == phi):
            raise Counterexample(f"idempotent tests disagree on {ctx.render(phi)}")
        if phi @ phi.inv @ phi != phi:
            raise Counterexample(f"φφ⁻¹φ != φ for {ctx.render(phi)}")
        for psi in hull:
            if phi @ psi not in hull:
                raise Counterexample(
                    f"{ctx.render(phi)} ∘ {ctx.render(psi)} missing"
                )
    return f"{len(hull)} elements"


def suite_constructible_closure(ctx: VerifyContext) -> str:
    domains = constructible_sets(ctx.S, hull=ctx.hull)
    closure = constructible_closure(ctx.S)
    if domains != closure:
        extra = set(domains) ^ set(closure)
        raise Counterexample(
            "idempotent domains and the E_s closure differ on "
            + ", ".join(ctx.fmt(X) for X in sorted(extra, key=sorted))
        )
    return f"{len(domains)} sets"


def suite_constructible_right_ideals(ctx: VerifyContext) -> str:
    ctx.require(ctx.S.flags.categorical_at_zero, "S is categorical at zero")
    for X in ctx.E.members:
        if not is_right_ideal(ctx.S, X | {ctx.S.zero}):
            raise Counterexample(f"{ctx.fmt(X)} ∪ {{0}} is not a right ideal")
    return f"{len(ctx.E)} sets"


def suite_normal_form_product(ctx: VerifyContext) -> str:
    ctx.require_lcms()
    S, hull = ctx.S, ctx.hull
    forms = {phi: hull_normal_form(S, hull, phi) for phi in hull}
    flags = S.flags
    for phi, nf in forms.items():
        if nf_evaluate(S, nf) != phi:
            raise Counterexample(f"{nf.render(S)} does not evaluate to {ctx.render(phi)}")
        if phi and flags.right_local_units and flags.right_reductive:
            if ONE in nf.lam:
                raise Counterexample(f"{nf.render(S)} still uses the adjoined unit")
    for (phi, n1), (psi, n2) in product(forms.items(), repeat=2):
        if nf_evaluate(S, nf_product(S, n1, n2)) != phi @ psi:
            raise Counterexample(f"product of {n1.render(S)} and {n2.render(S)}")
    return f"{len(forms) ** 2} pairs"


def suite_zero_e_unitary(ctx: VerifyContext) -> str:
    flags = ctx.S.flags
    forward = (
        flags.zero_left_cancellative
        and flags.zero_right_cancellative
        and flags.admits_lcms
    )
    converse = flags.zero_left_cancellative and flags.right_local_units
    ctx.require(forward or converse, "S is 0-cancellative with lcms, or has right local units")
    unitary = is_zero_e_unitary(ctx.hull)
    if forward and not unitary:
        raise Counterexample("hull of a 0-cancellative semigroup with lcms is not 0-E-unitary")
    if converse and unitary and not flags.zero_right_cancellative:
        raise Counterexample("0-E-unitary hull but S is not 0-right cancellative")
    return "0-E-unitary" if unitary else "not 0-E-unitary"


def suite_normal_form_ambiguity(ctx: VerifyContext) -> str:
    ctx.require_lcms()
    ctx.require(ctx.S.flags.zero_right_cancellative, "S is 0-right cancellative")
    S = ctx.S
    groups: dict[PartialBijection, list] = defaultdict(list)
    for nf in enumerate_normal_forms(S, ctx.settings.nf_lambda_size):
        phi = nf_evaluate(S, nf)
        if phi:
            groups[phi].append(nf)
    checked = 0
    for forms in groups.values():
        first = forms[0]
        for other in forms[1:]:
            if equality_witnesses(S, first, other) is None:
                raise Counterexample(
                    f"no witnesses relate {first.render(S)} and {other.render(S)}"
                )
            checked += 1
    return f"{checked} pairs of forms"


def suite_catat_zero_hull(ctx: VerifyContext) -> str:
    flags = ctx.S.flags
    ctx.require(flags.categorical_at_zero, "S is categorical at zero")
    ctx.require(flags.right_reductive, "S is right reductive")
    ctx.require(flags.right_local_units, "S has right local units")
    ctx.require_lcms()
    nonzero = [phi for phi in ctx.hull if phi]
    for phi in nonzero:
        if catat_zero_form(ctx.S, phi) is None:
            raise Counterexample(f"{ctx.render(phi)} is not θ_sθ_t⁻¹ with s⁺ = t⁺")
    return f"{len(nonzero)} elements"


def suite_aligned_cover(ctx: VerifyContext) -> str:
    S = ctx.S
    ctx.require(S.flags.zero_left_cancellative, "S is 0-left cancellative")
    members = list(ctx.E.members)
    checked = 0
    for s, t in product(S.nonzero, repeat=2):
        al = alignment(S, s, t)
        if al.kind not in (AlignmentKind.PRINCIPAL, AlignmentKind.BASIS):
            continue
        result = aligned_cover(S, s, t)
        Z = [f.domain for f in result.cover]
        if not all(f.leq(result.target) for f in result.cover):
            raise Counterexample(f"cover element exceeds target for ({S.name(s)}, {S.name(t)})")
        if not is_cover(members, Z, result.target.domain):
            raise Counterexample(f"aligned cover fails for ({S.name(s)}, {S.name(t)})")
        checked += 1
    ctx.require(checked > 0, "some pair sS ∩ tS has a basis")
    return f"{checked} pairs"


# ---- string suites ----

def suite_strings_oracle(ctx: VerifyContext) -> str:
    ctx.require(ctx.oracle, "--oracle")
    limit = ctx.settings.oracle_max_elements
    ctx.require(len(ctx.S.nonzero) <= limit, f"|S'| <= {limit}")
    brute = all_strings_bruteforce(ctx.S, limit)
    if brute != ctx.strings:
        raise Counterexample("divisor strings differ from subset enumeration")
    return f"{len(brute)} strings"


def suite_star_action(ctx: VerifyContext) -> str:
    S = ctx.S
    checked = 0
    for r in S.nonzero:
        F_star, E_star = star_domains(S, r)
        for sigma in F_star:
            image = star_forward(S, r, sigma)
            if image not in E_star or star_backward(S, r, image) != sigma:
                raise Counterexample(f"θ★[{S.name(r)}] not invertible at {ctx.fmt(sigma)}")
            checked += 1
        for tau in E_star:
            if star_forward(S, r, star_backward(S, r, tau)) != tau:
                raise Counterexample(f"θ★[{S.name(r)}]⁻¹ not invertible at {ctx.fmt(tau)}")
    for r1, r2 in product(S.nonzero, repeat=2):
        F2, _ = star_domains(S, r2)
        F1, _ = star_domains(S, r1)
        for sigma in F2:
            inner = star_forward(S, r2, sigma)
            if inner not in F1:
                continue
            if star_forward(S, r1, inner) != star_forward(S, S.mul(r1, r2), sigma):
                raise Counterexample(
                    f"r1*(r2*σ) != (r1r2)*σ for r1={S.name(r1)}, "
                    f"r2={S.name(r2)}, σ={ctx.fmt(sigma)}"
                )
    return f"{checked} strings moved"


def suite_maximal_invariance(ctx: VerifyContext) -> str:
    S = ctx.S
    for r in S.nonzero:
        F_star, E_star = star_domains(S, r)
        for sigma in ctx.maximal:
            if sigma in F_star and star_forward(S, r, sigma) not in ctx.maximal:
                raise Counterexample(
                    f"θ★[{S.name(r)}]({ctx.fmt(sigma)}) is not maximal"
                )
    if not maximal_is_open_or_dead_end(S):
        raise Counterexample("a maximal string is neither open nor a dead end")
    if S.flags.categorical_at_zero:
        for r in S.nonzero:
            _, E_star = star_domains(S, r)
            for sigma in ctx.maximal:
                if sigma in E_star and star_backward(S, r, sigma) not in ctx.maximal:
                    raise Counterexample(
                        f"θ★[{S.name(r)}]⁻¹({ctx.fmt(sigma)}) is not maximal"
                    )
        return f"{len(ctx.maximal)} maximal strings, both directions"
    return f"{len(ctx.maximal)} maximal strings, forward only (not categorical at zero)"


def suite_open_invariance(ctx: VerifyContext) -> str:
    S = ctx.S
    opened = [sigma for sigma in ctx.strings if is_open(S, sigma)]
    for r in S.nonzero:
        F_star, E_star = star_domains(S, r)
        for sigma in opened:
            if sigma in F_star and not is_open(S, star_forward(S, r, sigma)):
                raise Counterexample(f"θ★[{S.name(r)}]({ctx.fmt(sigma)}) is not open")
            if sigma in E_star and not is_open(S, star_backward(S, r, sigma)):
                raise Counterexample(f"θ★[{S.name(r)}]⁻¹({ctx.fmt(sigma)}) is not open")
    return f"{len(opened)} open strings"


def suite_epsilon(ctx: VerifyContext) -> str:
    members = list(ctx.E.members)
    eps = {X: set(epsilon(ctx.S, X, members)) for X in members}
    for X, Y in combinations(members, 2):
        if eps[X & Y] != eps[X] & eps[Y]:
            raise Counterexample(f"ε fails on {ctx.fmt(X)} ∩ {ctx.fmt(Y)}")
    for s in ctx.S.nonzero:
        E_s = ctx.S.table[s]
        E_set = frozenset(int(x) for x in E_s if x != ctx.S.zero)
        if eps[E_set] != set(star_domains(ctx.S, s)[1]):
            raise Counterexample(f"ε(E_{ctx.S.name(s)}) != E★_{ctx.S.name(s)}")
    return f"{len(members)} members"


def suite_sigma_action(ctx: VerifyContext) -> str:
    S, hull = ctx.S, ctx.hull
    gens = [regular_rep(S, s) for s in S.elements]
    gens += [g.inv for g in gens]
    checked = 0
    for phi in hull:
        for r in phi.domain:
            if sigma_action(S, phi, delta(S, r)) != delta(S, phi.forward[r]):
                raise Counterexample(f"δ-covariance fails at {S.name(r)}")
            if not knock_off_h(S, phi, [r]):
                raise Counterexample(f"hereditary closure does not commute at {S.name(r)}")
        for sigma in ctx.strings:
            if not asymptotically_contained(S, sigma, phi.domain):
                continue
            image = sigma_action(S, phi, sigma)
            if sigma_action(S, phi.inv, image) != sigma:
                raise Counterexample(f"inverse action fails on {ctx.fmt(sigma)}")
            for psi in gens:
                if not (
                    asymptotically_contained(S, image, psi.domain)
                    and asymptotically_contained(S, sigma, (psi @ phi).domain)
                ):
                    continue
                if sigma_action(S, psi @ phi, sigma) != sigma_action(S, psi, image):
                    raise Counterexample(f"composition fails on {ctx.fmt(sigma)}")
            checked += 1
    for s in S.nonzero:
        F_star, _ = star_domains(S, s)
        for sigma in F_star:
            if sigma_action(S, regular_rep(S, s), sigma) != star_forward(S, s, sigma):
                raise Counterexample(f"θ[{S.name(s)}] and θ★ disagree on {ctx.fmt(sigma)}")
    return f"{checked} (element, string) pairs"


def suite_length_function(ctx: VerifyContext) -> str:
    S = ctx.S
    ctx.require(S.words is not None, "S is built from a language")
    ell = {s: word_length(S, s) for s in S.nonzero}
    if not is_length_function(S, ell):
        raise Counterexample("word length is not a length function")
    for r, s in product(S.nonzero, repeat=2):
        rs = S.mul(r, s)
        if rs != S.zero and ell[rs] != ell[r] + ell[s]:
            raise Counterexample(f"length is not additive on ({S.name(r)}, {S.name(s)})")
    return f"{len(ell)} elements"


def suite_language_rees(ctx: VerifyContext) -> str:
    S = ctx.S
    ctx.require(S.words is not None, "S is built from a language")
    assert S.words is not None
    alphabet = [w[0] for w in S.words if len(w) == 1]
    longest = max(len(w) for w in S.words)
    full = markov_semigroup(alphabet, [[1] * len(alphabet)] * len(alphabet), longest)
    assert full.words is not None
    kept = set(S.words)
    ideal = {i for i in full.elements if i == full.zero or full.words[i] not in kept}
    Q = rees_quotient(full, ideal)
    same = set(Q.names) == set(S.names) and all(
        Q.name(Q.mul(Q.index(x), Q.index(y))) == S.name(S.mul(S.index(x), S.index(y)))
        for x, y in product(S.names, repeat=2)
    )
    if not same:
        raise Counterexample("language semigroup differs from the Rees quotient")
    return f"quotient of {full.n} elements"


# ---- spectrum suites ----

def suite_filters(ctx: VerifyContext) -> str:
    E = ctx.E
    found = filters(E)
    for xi in found:
        if filter_of(char_of(E, xi)) != xi:
            raise Counterexample("character/filter conversion is not inverse")
    for x1, x2 in product(found, repeat=2):
        if (x1 <= x2) != char_leq(char_of(E, x1), char_of(E, x2)):
            raise Counterexample("filter inclusion and character order disagree")
    ultras = [xi for xi in found if is_ultra(E, xi)]
    for xi in found:
        if is_ultra(E, xi) != is_ultra(E, xi, by_maximality=True):
            raise Counterexample("ultrafilter criterion and maximality disagree")
        if not any(xi <= u for u in ultras):
            raise Counterexample("a filter lies in no ultrafilter")
    if ctx.oracle:
        limit = ctx.settings.oracle_max_elements
        if len(E.nonzero) <= limit and set(filters_bruteforce(E, limit)) != set(found):
            raise Counterexample("principal filters differ from subset enumeration")
    return f"{len(found)} filters, {len(ultras)} ultrafilters"


def suite_tight_equals_ultra(ctx: VerifyContext) -> str:
    E = ctx.E
    tight = set(tight_characters(E))
    if tight != set(ctx.ultras):
        raise Counterexample("tight characters and ultracharacters differ")
    if ctx.oracle:
        for phi in ctx.characters:
            if is_tight_bruteforce(E, phi, ctx.settings.max_cover) != (phi in tight):
                raise Counterexample("cover enumeration disagrees on tightness")
    for phi in ctx.characters:
        bigger = any(char_leq(phi, psi) and psi != phi for psi in ctx.characters)
        if bigger == (phi in tight):
            raise Counterexample("ultra is not the same as order-maximal")
    return f"{len(tight)} tight characters"


def suite_pi_tight(ctx: VerifyContext) -> str:
    E = ctx.E
    bound = ctx.settings.pi_tight_max_members
    ctx.require(len(E) <= bound, f"|E(S)| <= {bound}")
    for label, pi in (
        ("identity", identity_representation(E)),
        ("epsilon", epsilon_representation(ctx.S, E)),
    ):
        atoms = set(pi_tight_characters(E, pi))
        brute = {phi for phi in ctx.characters if is_pi_tight(E, pi, phi, max_members=bound)}
        if atoms != brute:
            raise Counterexample(
                f"atom method and brute force differ for the {label} representation"
            )
    return f"{len(ctx.characters)} characters, 2 representations"


def _nondegenerate(ctx: VerifyContext) -> list[frozenset[int]]:
    return [s for s in ctx.strings if not is_degenerate_string(ctx.S, s)]


def suite_tight_density(ctx: VerifyContext) -> str:
    E = ctx.E
    from_strings = {phi_from_string(ctx.S, E, sigma) for sigma in _nondegenerate(ctx)}
    for phi in ctx.ultras:
        if phi not in from_strings:
            raise Counterexample("a tight character is not φ_σ for any string")
    return f"{len(ctx.ultras)} tight characters"


def suite_string_characters(ctx: VerifyContext) -> str:
    ctx.require_lcms()
    S, E = ctx.S, ctx.E
    ultras = set(ctx.ultras)
    for sigma in _nondegenerate(ctx):
        back = sigma_from_char(S, E, phi_from_string(S, E, sigma))
        if back != interior(S, sigma):
            raise Counterexample(f"Σ(Φ({ctx.fmt(sigma)})) is not the interior")
        is_single_irreducible = len(sigma) == 1 and classify_element(
            S, next(iter(sigma))
        ).irreducible
        if outside_e1hat(S, E, sigma) != is_single_irreducible:
            raise Counterexample(f"E1 test disagrees with irreducibility at {ctx.fmt(sigma)}")
    for phi in ctx.characters:
        kind = classify_character(S, E, phi)
        if kind.ground == kind.in_e1hat:
            raise Counterexample("ground characters must be exactly those outside Ê1")
        if kind.open:
            sigma = sigma_from_char(S, E, phi)
            if not char_leq(phi, phi_from_string(S, E, sigma)):
                raise Counterexample("φ <= φ_σφ fails for an open character")
    for sigma in ctx.maximal:
        if is_open(S, sigma) and phi_from_string(S, E, sigma) not in ultras:
            raise Counterexample(f"open maximal {ctx.fmt(sigma)} gives no ultracharacter")
    return f"{len(ctx.characters)} characters"


def suite_relatively_maximal(ctx: VerifyContext) -> str:
    ctx.require_lcms()
    S, E = ctx.S, ctx.E
    ultras = set(ctx.ultras)
    checked = 0
    for size in range(1, ctx.settings.relative_lambda_size + 1):
        for lam in combinations(S.nonzero, size):
            inside = f_star_lambda(S, lam)
            for sigma in inside:
                if any(sigma < other for other in inside) or not is_open(S, sigma):
                    continue
                if phi_from_string(S, E, sigma) not in ultras:
                    raise Counterexample(
                        f"{ctx.fmt(sigma)} is maximal in F_Λ for Λ={ctx.fmt(frozenset(lam))} "
                        "but not ultra"
                    )
                checked += 1
    return f"{checked} relatively maximal strings"


def suite_dual_representation(ctx: VerifyContext) -> str:
    S, E = ctx.S, ctx.E
    ultras = set(ctx.ultras)
    checked = 0
    for s in S.nonzero:
        F_s = E.index(lambda_source(S, [s]))
        for phi in ctx.characters:
            if not phi(F_s):
                continue
            image = dual_theta(S, E, s, phi)
            if dual_theta_inv(S, E, s, image) != phi:
                raise Counterexample(f"θ̂_{S.name(s)} is not invertible")
            if phi in ultras and image not in ultras:
                raise Counterexample(f"θ̂_{S.name(s)} leaves the ultracharacters")
            checked += 1
        F_star, _ = star_domains(S, s)
        for sigma in F_star:
            if is_degenerate_string(S, sigma):
                continue
            moved = star_forward(S, s, sigma)
            if dual_theta(S, E, s, phi_from_string(S, E, sigma)) != phi_from_string(S, E, moved):
                raise Counterexample(f"θ̂ and θ★ disagree at {ctx.fmt(sigma)}")
    return f"{checked} characters moved"


def suite_census(ctx: VerifyContext) -> str:
    ctx.require_lcms()
    S, E = ctx.S, ctx.E
    census = ultra_census(S, E)
    if len(census) != len(ctx.ultras):
        raise Counterexample("census does not partition the ultracharacters")
    for sigma, phi in census.open_ultras:
        if phi_from_string(S, E, sigma) != phi:
            raise Counterexample(f"open ultracharacter is not φ_σ for σ={ctx.fmt(sigma)}")
    grounds = [phi for phi in ctx.ultras if classify_character(S, E, phi).ground]
    for u, ground, phi in census.nonopen_ultras:
        if not classify_character(S, E, ground).ground:
            raise Counterexample("decomposition did not reach a ground character")
        rebuilt = ground if u is ONE else dual_theta(S, E, u, ground)
        if rebuilt != phi:
            raise Counterexample("θ̂_u(φ0) does not recover the ultracharacter")
        sigma_u = frozenset() if u is ONE else divisors(S, u)
        for s, psi in product(S.nonzero, grounds):
            if divisors(S, s) == sigma_u or not psi(E.index(lambda_source(S, [s]))):
                continue
            if dual_theta(S, E, s, psi) == phi:
                raise Counterexample("non-open decomposition is not unique")
    return f"{len(census.open_ultras)} open, {len(census.nonopen_ultras)} non-open"


def suite_e1_ideal(ctx: VerifyContext) -> str:
    E = ctx.E
    J = e1_ideal(ctx.S, E)
    restriction = ideal_restriction(E, J)
    for eta, xi in restriction.lift.items():
        if restriction.restrict.get(xi) != eta:
            raise Counterexample("lift and restriction are not inverse")
    if set(restriction.lift.values()) != set(restriction.domain):
        raise Counterexample("lift does not reach every filter meeting E1(S)")
    sub_ultras = {
        eta for eta in restriction.ideal_filters
        if not any(eta < other for other in restriction.ideal_filters)
    }
    ultra_filters = {filter_of(phi) for phi in ctx.ultras}
    for eta in restriction.ideal_filters:
        if (eta in sub_ultras) != (restriction.lift[eta] in ultra_filters):
            raise Counterexample("ultrafilters of E1(S) and of E(S) do not correspond")
    return f"{len(restriction.domain)} filters meet E1(S)"


# ---- free products ----

def suite_free_product(ctx: VerifyContext) -> str:
    S = ctx.S
    ctx.require(S.unit is not None and S.unit != S.zero, "S is a monoid with zero")
    bound = ctx.settings.fp_syllable_bound
    pool = fp_elements(S, S, bound)
    small = [x for x in pool if len(x) <= 2]
    for x in pool:
        if x.tag is FPTag.WORD:
            if fp_normalize(S, S, x.syllables) != x:
                raise Counterexample("normal form is not stable under renormalization")
            tags = [tag for tag, _ in x.syllables]
            if any(a == b for a, b in zip(tags, tags[1:])):
                raise Counterexample("adjacent syllables share a factor")
    for x, y, z in product(small, repeat=3):
        left = fp_multiply(S, S, fp_multiply(S, S, x, y), z)
        if left != fp_multiply(S, S, x, fp_multiply(S, S, y, z)):
            raise Counterexample("free-product multiplication is not associative")
    if S.flags.zero_left_cancellative:
        for x in small:
            seen: dict = {}
            for u in pool:
                xu = fp_multiply(S, S, x, u)
                if xu == FP_ZERO:
                    continue
                if xu in seen and seen[xu] != u:
                    raise Counterexample("M *0 N is not 0-left cancellative")
                seen[xu] = u
    return f"{len(pool)} normal forms up to {bound} syllables"


SUITES: dict[str, Suite] = {
    "representation": suite_representation,
    "covariance": suite_covariance,
    "hull-closure": suite_hull_closure,
    "constructible-closure": suite_constructible_closure,
    "constructible-right-ideals": suite_constructible_right_ideals,
    "normal-form-product": suite_normal_form_product,
    "zero-e-unitary": suite_zero_e_unitary,
    "normal-form-ambiguity": suite_normal_form_ambiguity,
    "categorical-hull": suite_catat_zero_hull,
    "aligned-cover": suite_aligned_cover,
    "strings-oracle": suite_strings_oracle,
    "star-action": suite_star_action,
    "maximal-invariance": suite_maximal_invariance,
    "open-invariance": suite_open_invariance,
    "epsilon": suite_epsilon,
    "sigma-action": suite_sigma_action,
    "length-function": suite_length_function,
    "language-rees": suite_language_rees,
    "filters": suite_filters,
    "tight-equals-ultra": suite_tight_equals_ultra,
    "pi-tight": suite_pi_tight,
    "tight-density": suite_tight_density,
    "string-characters": suite_string_characters,
    "relatively-maximal": suite_relatively_maximal,
    "dual-representation": suite_dual_representation,
    "census": suite_census,
    "e1-ideal": suite_e1_ideal,
    "free-product": suite_free_product,
}


def run_suites(
    S: Semigroup,
    settings: Settings,
    names: Sequence[str] | None = None,
    oracle: bool = False,
    event_log: EventLog | None = None,
) -> list[SuiteResult]:
    """Run the selected suites in registry order.

    CapExceededError propagates so the caller can exit with the cap status.
    """
    selected = list(SUITES) if not names else list(names)
    unknown = [n for n in selected if n not in SUITES]
    if unknown:
        raise ValidationError(
            f"unknown suite {unknown[0]!r}; known: {', '.join(SUITES)}"
        )
    ctx = VerifyContext(S, settings, oracle)
    results = []
    for name in SUITES:
        if name not in selected:
            continue
        try:
            detail = SUITES[name](ctx)
            result = SuiteResult(name, SuiteStatus.PASSED, detail)
        except Skip as e:
            result = SuiteResult(name, SuiteStatus.SKIPPED, str(e))
        except Counterexample as e:
            result = SuiteResult(name, SuiteStatus.FAILED, str(e))
        except PreconditionError as e:
            result = SuiteResult(name, SuiteStatus.SKIPPED, f"precondition: {e}")
        except CapExceededError as e:
            if event_log is not None:
                event_log.event("cap_exceeded", suite=name, what=e.what, limit=e.limit)
            raise
        logger.info("suite %s: %s (%s)", name, result.status.value, result.detail)
        if event_log is not None:
            event_log.event(
                f"suite_{result.status.value}", suite=name, detail=result.detail
            )
        results.append(result)
    return results
