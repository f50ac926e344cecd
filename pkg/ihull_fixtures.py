"""Built-in semigroups, addressable from the command line as ``fixture:NAME``.

Each builder returns a fresh ``Semigroup``; ``load_fixture`` resolves a name.
"""

from __future__ import annotations

from typing import Callable

from ihull_constructors import (
    LanguageSpec,
    adjoin_zero,
    language_semigroup,
    markov_semigroup,
    path_category_semigroup,
    semigroupoid_semigroup,
)
from ihull_errors import ValidationError
from ihull_semigroup import Semigroup, validate_semigroup


def fixture_a() -> Semigroup:
    """{0, 1, a, aa} with a^3 = 0."""
    return validate_semigroup(
        ["0", "1", "a", "aa"],
        "0",
        [
            ["0", "0", "0", "0"],
            ["0", "1", "a", "aa"],
            ["0", "a", "aa", "0"],
            ["0", "aa", "0", "0"],
        ],
    )


def fixture_b() -> Semigroup:
    """{0, e, s}: e idempotent, se = s, every other product 0."""
    return validate_semigroup(
        ["0", "e", "s"],
        "0",
        [["0", "0", "0"], ["0", "e", "0"], ["0", "s", "0"]],
    )


def no_lcm() -> Semigroup:
    """{0, a, b, c, ab, ba, cc}: ac = bc = cc = c^2, so aS ∩ bS = cS has no lcm."""
    names = ["0", "a", "b", "c", "ab", "ba", "cc"]
    products = {
        ("a", "b"): "ab",
        ("b", "a"): "ba",
        ("a", "c"): "cc",
        ("b", "c"): "cc",
        ("c", "c"): "cc",
    }
    rows = [[products.get((x, y), "0") for y in names] for x in names]
    return validate_semigroup(names, "0", rows)


def nil_x() -> Semigroup:
    """{0, x} with x^2 = 0; x is degenerate."""
    return validate_semigroup(["0", "x"], "0", [["0", "0"], ["0", "0"]])


def trivial() -> Semigroup:
    return validate_semigroup(["0"], "0", [["0"]])


def language_abab() -> Semigroup:
    """L = {a, b, aa, ba}."""
    spec = LanguageSpec(
        ("a", "b"), frozenset({("a",), ("b",), ("a", "a"), ("b", "a")})
    )
    S, _ = language_semigroup(spec)
    return S


def words_upto_two() -> Semigroup:
    """Every word of length at most two over {a, b, c}."""
    return markov_semigroup(("a", "b", "c"), [[1, 1, 1]] * 3, 2)


def golden_mean() -> Semigroup:
    """Markov truncation for [[1, 1], [1, 0]] at length 3; x2x2 is forbidden."""
    return markov_semigroup(("x1", "x2"), [[1, 1], [1, 0]], 3)


def g0_z2() -> Semigroup:
    """Cyclic group of order two with a zero adjoined."""
    return adjoin_zero(["e", "g"], [["e", "g"], ["g", "e"]])


def cat2() -> Semigroup:
    """Arrows s, t: B -> A and a1, a2, b1, b2: C -> B with s a_i = t b_i = m_i.

    sS ∩ tS = {0, m1, m2} has the basis {m1, m2} but no lcm.
    """
    arrows = ["1_A", "1_B", "1_C", "s", "t", "a1", "a2", "b1", "b2", "m1", "m2"]
    target = {"s": "A", "t": "A", "m1": "A", "m2": "A",
              "a1": "B", "a2": "B", "b1": "B", "b2": "B"}
    source = {"s": "B", "t": "B", "a1": "C", "a2": "C", "b1": "C", "b2": "C",
              "m1": "C", "m2": "C"}
    composites: dict[tuple[str, str], str] = {}
    for obj in "ABC":
        composites[(f"1_{obj}", f"1_{obj}")] = f"1_{obj}"
    for f in target:
        composites[(f"1_{target[f]}", f)] = f
        composites[(f, f"1_{source[f]}")] = f
    composites.update({
        ("s", "a1"): "m1", ("s", "a2"): "m2",
        ("t", "b1"): "m1", ("t", "b2"): "m2",
    })
    return semigroupoid_semigroup(arrows, composites)


def path_uvw() -> Semigroup:
    """Free category on u -e,f-> v -g-> w: nine elements, lcms throughout."""
    return path_category_semigroup(
        ["u", "v", "w"], [("e", "u", "v"), ("f", "u", "v"), ("g", "v", "w")]
    )


def z2_factor() -> Semigroup:
    """Free-product factor: Z/2 = {1, g} with zero."""
    return adjoin_zero(["1", "g"], [["1", "g"], ["g", "1"]])


def nil_factor() -> Semigroup:
    """Free-product factor: {0, 1, a} with a^2 = 0."""
    return validate_semigroup(
        ["0", "1", "a"], "0", [["0", "0", "0"], ["0", "1", "a"], ["0", "a", "0"]]
    )


FIXTURES: dict[str, Callable[[], Semigroup]] = {
    "A": fixture_a,
    "B": fixture_b,
    "NO_LCM": no_lcm,
    "NIL_X": nil_x,
    "TRIVIAL": trivial,
    "LANGUAGE": language_abab,
    "WORDS2": words_upto_two,
    "MARKOV": golden_mean,
    "G0_Z2": g0_z2,
    "CAT2": cat2,
    "PATH": path_uvw,
    "Z2": z2_factor,
    "NIL": nil_factor,
}


def load_fixture(name: str) -> Semigroup:
    try:
        builder = FIXTURES[name.upper()]
    except KeyError:
        known = ", ".join(sorted(FIXTURES))
        raise ValidationError(f"unknown fixture {name!r}; known: {known}") from None
    return builder()
