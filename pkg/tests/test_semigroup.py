"""
Tests for tables, property flags, element classes, lcms and alignment.
"""

import numpy as np
import pytest

from ihull_constructors import (
    LanguageMode,
    LanguageSpec,
    language_semigroup,
    markov_semigroup,
    semigroupoid_semigroup,
)
from ihull_errors import PreconditionError, ValidationError
from ihull_fixtures import load_fixture
from ihull_semigroup import (
    AlignmentKind,
    alignment,
    classify_element,
    degenerate_elements,
    divides,
    divisors,
    essential_subset,
    is_ideal,
    is_right_ideal,
    lcm,
    principal_right_ideal,
    rees_quotient,
    right_unit,
    validate_semigroup,
)


def ids(S, *names):
    return frozenset(S.index(n) for n in names)


def wide_cat2():
    """CAT2 with eight more arrows c_j: D -> C, so s and t share 18 multiples.

    Arrows are generator words up to the relations s a_i = t b_i = m_i.
    """
    ends = {"s": ("B", "A"), "t": ("B", "A"), "m1": ("C", "A"), "m2": ("C", "A")}
    ends.update({g: ("C", "B") for g in ("a1", "a2", "b1", "b2")})
    ends.update({f"c{j}": ("D", "C") for j in range(1, 9)})
    rules = {("s", "a1"): "m1", ("s", "a2"): "m2", ("t", "b1"): "m1", ("t", "b2"): "m2"}

    def normalize(word):
        for i in range(len(word) - 1):
            if word[i:i + 2] in rules:
                return normalize(word[:i] + (rules[word[i:i + 2]],) + word[i + 2:])
        return word

    def source(w):
        return ends[w[-1]][0]

    def target(w):
        return ends[w[0]][1]

    words = {(g,) for g in ends}
    grown = True
    while grown:
        grown = False
        for w in list(words):
            for g in ends:
                if source(w) == ends[g][1] and normalize(w + (g,)) not in words:
                    words.add(normalize(w + (g,)))
                    grown = True

    composites = {}
    for obj in "ABCD":
        composites[(f"1_{obj}", f"1_{obj}")] = f"1_{obj}"
    for w in words:
        composites[(f"1_{target(w)}", "".join(w))] = "".join(w)
        composites[("".join(w), f"1_{source(w)}")] = "".join(w)
        for v in words:
            if source(w) == target(v):
                composites[("".join(w), "".join(v))] = "".join(normalize(w + v))
    arrows = [f"1_{obj}" for obj in "ABCD"] + sorted("".join(w) for w in words)
    return semigroupoid_semigroup(arrows, composites)


class TestValidation:
    """Tests for building a Semigroup from a table."""

    def test_fixture_b_table(self, fixture_b):
        """The three-element table parses with 0 as zero."""
        assert fixture_b.n == 3
        assert fixture_b.name(fixture_b.zero) == "0"
        assert fixture_b.mul(fixture_b.index("s"), fixture_b.index("e")) == fixture_b.index("s")

    def test_divisibility_is_built_with_the_table(self, fixture_a):
        S = fixture_a
        assert {"right_ideal_matrix", "division"} <= set(vars(S))
        a, aa = S.index("a"), S.index("aa")
        assert S.division[a, aa] and not S.division[aa, a]
        assert S.right_ideal_matrix[a, S.zero] and not S.right_ideal_matrix[aa, a]
        assert not S.division.flags.writeable

    def test_table_is_read_only(self, fixture_a):
        """The multiplication table cannot be mutated."""
        with pytest.raises(ValueError):
            fixture_a.table[0, 0] = 1

    def test_duplicate_name(self):
        with pytest.raises(ValidationError, match="duplicate"):
            validate_semigroup(["0", "x", "x"], "0", [["0"] * 3] * 3)

    def test_unknown_token(self):
        with pytest.raises(ValidationError, match="unknown token"):
            validate_semigroup(["0", "x"], "0", [["0", "0"], ["0", "y"]])

    def test_zero_not_absorbing(self):
        with pytest.raises(ValidationError, match="absorbing"):
            validate_semigroup(["0", "x"], "0", [["0", "x"], ["0", "x"]])

    def test_associativity_counterexample(self):
        """(ab)a = 0 but a(ba) = aa = b."""
        rows = [
            ["0", "0", "0"],
            ["0", "b", "0"],
            ["0", "a", "0"],
        ]
        with pytest.raises(ValidationError, match="associativity"):
            validate_semigroup(["0", "a", "b"], "0", rows)

    def test_identity_detected(self, fixture_a):
        assert fixture_a.unit == fixture_a.index("1")

    def test_no_identity(self, language):
        assert language.unit is None


class TestPropertyFlags:
    """Tests for the global property flags."""

    def test_fixture_a(self, fixture_a):
        flags = fixture_a.flags
        assert flags.zero_left_cancellative
        assert flags.zero_right_cancellative
        assert flags.right_reductive
        assert flags.right_local_units
        assert flags.unital
        assert flags.admits_lcms
        # aa * 1 and 1 * a are nonzero but aa * a = 0
        assert not flags.categorical_at_zero

    def test_words_up_to_two_not_categorical(self, words2):
        assert not words2.flags.categorical_at_zero

    def test_group_with_zero(self, g0):
        flags = g0.flags
        assert flags.categorical_at_zero
        assert flags.zero_right_cancellative
        assert flags.admits_lcms

    def test_cat2_has_no_lcms(self, cat2):
        assert cat2.flags.zero_left_cancellative
        assert not cat2.flags.admits_lcms
        assert not cat2.flags.categorical_at_zero

    def test_path_category(self, path_uvw):
        flags = path_uvw.flags
        assert path_uvw.n == 9
        assert flags.zero_left_cancellative
        assert flags.right_reductive
        assert flags.right_local_units
        assert flags.categorical_at_zero
        assert flags.admits_lcms

    def test_left_zero_band_is_not_cancellative(self):
        S = validate_semigroup(
            ["0", "p", "q"], "0", [["0", "0", "0"], ["0", "p", "p"], ["0", "q", "q"]]
        )
        assert not S.flags.zero_left_cancellative

    def test_as_dict_keys(self, fixture_a):
        assert set(fixture_a.flags.as_dict()) == {
            "zero_left_cancellative",
            "zero_right_cancellative",
            "categorical_at_zero",
            "right_reductive",
            "right_local_units",
            "unital",
            "admits_lcms",
        }


class TestElements:
    """Tests for divisibility and element classification."""

    def test_prime_but_not_irreducible(self, fixture_b):
        c = classify_element(fixture_b, fixture_b.index("s"))
        assert c.prime
        assert not c.irreducible

    def test_unit_of_fixture_a(self, fixture_a):
        c = classify_element(fixture_a, fixture_a.index("1"))
        assert c.idempotent
        assert c.prime
        assert not c.irreducible
        assert c.right_unit == fixture_a.index("1")

    def test_classify_zero_rejected(self, fixture_a):
        with pytest.raises(PreconditionError):
            classify_element(fixture_a, fixture_a.zero)

    def test_divisors(self, fixture_a):
        S = fixture_a
        assert divisors(S, S.index("aa")) == ids(S, "1", "a", "aa")
        assert divides(S, S.index("a"), S.index("aa"))
        assert not divides(S, S.index("aa"), S.index("a"))

    def test_principal_right_ideal_contains_zero(self, fixture_a):
        S = fixture_a
        assert principal_right_ideal(S, S.index("a")) == ids(S, "0", "a", "aa")

    def test_right_unit(self, fixture_a, language):
        assert right_unit(fixture_a, fixture_a.index("a")) == fixture_a.index("1")
        assert right_unit(language, language.index("a")) is None

    def test_degenerate_elements(self, language):
        assert degenerate_elements(language) == ids(language, "b")
        assert essential_subset(language) == ids(language, "a", "aa", "ba")


class TestLcm:
    """Tests for least common multiples and alignment."""

    def test_no_lcm_fixture(self):
        S = load_fixture("NO_LCM")
        a, b, c = S.index("a"), S.index("b"), S.index("c")
        assert lcm(S, a, b) is None
        common = principal_right_ideal(S, a) & principal_right_ideal(S, b)
        assert common == ids(S, "0", "cc")
        assert common == principal_right_ideal(S, c)
        assert alignment(S, a, b).kind is AlignmentKind.NONE
        assert not S.flags.admits_lcms

    def test_lcm_in_fixture_a(self, fixture_a):
        S = fixture_a
        assert lcm(S, S.index("a"), S.index("aa")) == S.index("aa")
        assert lcm(S, S.index("1"), S.index("a")) == S.index("a")

    def test_lcm_table_is_symmetric(self, path_uvw):
        table = path_uvw.lcm_table
        assert all(table[(s, t)] == table[(t, s)] for s, t in table)

    def test_disjoint_ideals_have_zero_lcm(self, path_uvw):
        S = path_uvw
        assert lcm(S, S.index("e"), S.index("f")) == S.zero

    def test_cat2_basis(self, cat2):
        al = alignment(cat2, cat2.index("s"), cat2.index("t"))
        assert al.kind is AlignmentKind.BASIS
        assert al.witnesses == ids(cat2, "m1", "m2")

    def test_basis_among_many_common_multiples(self):
        S = wide_cat2()
        s, t = S.index("s"), S.index("t")
        common = principal_right_ideal(S, s) & principal_right_ideal(S, t) - {S.zero}
        assert len(common) == 18
        al = alignment(S, s, t)
        assert al.kind is AlignmentKind.BASIS
        assert al.witnesses == ids(S, "m1", "m2")

    def test_alignment_needs_nonzero_elements(self, cat2):
        with pytest.raises(PreconditionError, match="nonzero"):
            alignment(cat2, cat2.zero, cat2.index("s"))

    def test_principal_alignment(self, fixture_a):
        al = alignment(fixture_a, fixture_a.index("a"), fixture_a.index("aa"))
        assert al.kind is AlignmentKind.PRINCIPAL
        assert al.witnesses == ids(fixture_a, "aa")


class TestIdeals:
    """Tests for ideals and Rees quotients."""

    def test_language_is_a_rees_quotient(self, language):
        full = markov_semigroup(("a", "b"), [[1, 1], [1, 1]], 2)
        Q = rees_quotient(full, ids(full, "0", "ab", "bb"))
        assert Q.names == language.names
        assert np.array_equal(Q.table, language.table)

    def test_rees_quotient_needs_an_ideal(self, fixture_a):
        with pytest.raises(PreconditionError):
            rees_quotient(fixture_a, ids(fixture_a, "0", "a"))

    def test_ideal_checks(self, fixture_a):
        S = fixture_a
        assert is_ideal(S, ids(S, "0", "aa"))
        assert is_right_ideal(S, ids(S, "0", "a", "aa"))
        assert not is_right_ideal(S, ids(S, "0", "a"))

    def test_words_f_a_is_not_a_right_ideal(self, words2):
        S = words2
        F_a = frozenset(x for x in S.nonzero if S.mul(S.index("a"), x) != S.zero)
        assert not is_right_ideal(S, F_a | {S.zero})

    def test_close_mode_language(self):
        S, position = language_semigroup(
            LanguageSpec(("a", "b"), frozenset({("b", "a")})),
            mode=LanguageMode.CLOSE,
        )
        assert set(S.names) == {"0", "a", "b", "ba"}
        assert position[("b", "a")] == S.index("ba")
