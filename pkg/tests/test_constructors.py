"""
Tests for the semigroup builders and free-product arithmetic.
"""

import pytest
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from ihull_constructors import (
    FP_ONE,
    FP_ZERO,
    FPTag,
    LanguageMode,
    LanguageSpec,
    LcmStatus,
    adjoin_zero,
    factors,
    fp_divides,
    fp_elements,
    fp_lcm,
    fp_multiply,
    fp_normalize,
    fp_rclass_reps,
    language_semigroup,
    markov_semigroup,
    parse_fp_element,
    path_category_semigroup,
    render_fp_element,
    semigroupoid_semigroup,
    tokenize_word,
)
from ihull_errors import PreconditionError, ValidationError
from ihull_fixtures import load_fixture


@pytest.fixture
def z2():
    return load_fixture("Z2")


@pytest.fixture
def nil():
    return load_fixture("NIL")


class TestLanguages:
    """Tests for language and Markov semigroups."""

    def test_words_are_split_greedily(self):
        assert tokenize_word("x1x2", ["x1", "x2"]) == ("x1", "x2")
        assert tokenize_word("x1.x2", ["x1", "x2"]) == ("x1", "x2")

    def test_unknown_letter(self):
        with pytest.raises(ValidationError):
            tokenize_word("ac", ["a", "b"])

    def test_factors(self):
        assert factors(("a", "b")) == {("a",), ("b",), ("a", "b")}

    def test_validate_mode_rejects_missing_factor(self):
        spec = LanguageSpec(("a", "b"), frozenset({("a",), ("a", "b")}))
        with pytest.raises(ValidationError, match="factor 'b'"):
            language_semigroup(spec)

    def test_close_mode_adds_factors(self):
        spec = LanguageSpec(("a", "b"), frozenset({("a", "b")}))
        S, _ = language_semigroup(spec, LanguageMode.CLOSE)
        assert S.names == ("0", "a", "b", "ab")
        assert S.mul(S.index("a"), S.index("b")) == S.index("ab")
        assert S.mul(S.index("b"), S.index("a")) == S.zero

    def test_max_len(self):
        spec = LanguageSpec(("a",), frozenset({("a",), ("a", "a")}), max_len=1)
        with pytest.raises(ValidationError, match="longer"):
            language_semigroup(spec)

    def test_language_fixture(self, language):
        assert language.names == ("0", "a", "b", "aa", "ba")
        assert language.words is not None
        assert language.words[language.index("ba")] == ("b", "a")

    def test_golden_mean_truncation(self):
        S = load_fixture("MARKOV")
        assert S.n == 11
        assert not any("x2.x2" in name for name in S.names)
        assert "x1.x2.x1" in S.names

    def test_markov_rejects_bad_matrix(self):
        with pytest.raises(ValidationError):
            markov_semigroup(("a", "b"), [[1, 2], [1, 1]], 2)
        with pytest.raises(ValidationError):
            markov_semigroup(("a", "b"), [[1, 1]], 2)

    def test_markov_needs_positive_length(self):
        with pytest.raises(ValidationError):
            markov_semigroup(("a",), [[1]], 0)


class TestMonoidsAndCategories:
    """Tests for adjoin_zero, semigroupoids and path categories."""

    def test_adjoin_zero(self, g0):
        assert g0.names == ("0", "e", "g")
        assert g0.unit == g0.index("e")
        assert g0.mul(g0.index("g"), g0.index("g")) == g0.index("e")

    def test_adjoin_zero_needs_identity(self):
        with pytest.raises(ValidationError, match="identity"):
            adjoin_zero(["x", "y"], [["x", "x"], ["x", "x"]])

    def test_adjoin_zero_rejects_zero_name(self):
        with pytest.raises(ValidationError):
            adjoin_zero(["0"], [["0"]])

    def test_semigroupoid_unknown_arrow(self):
        with pytest.raises(ValidationError, match="unknown arrow"):
            semigroupoid_semigroup(["f"], {("f", "f"): "g"})

    def test_path_category_elements(self, path_uvw):
        assert path_uvw.names == ("0", "u", "v", "w", "e", "f", "g", "eg", "fg")
        e, g, v = (path_uvw.index(x) for x in ("e", "g", "v"))
        assert path_uvw.mul(e, g) == path_uvw.index("eg")
        assert path_uvw.mul(e, v) == e
        assert path_uvw.mul(g, e) == path_uvw.zero

    def test_cycle_needs_max_len(self):
        with pytest.raises(ValidationError, match="cycle"):
            path_category_semigroup(["v"], [("l", "v", "v")])

    def test_cycle_truncated(self):
        S = path_category_semigroup(["v"], [("l", "v", "v")], max_len=2)
        assert S.names == ("0", "v", "l", "ll")
        ll = S.index("ll")
        assert S.mul(ll, S.index("l")) == S.zero


class TestFreeProducts:
    """Tests for normal forms in M *0 N."""

    def test_group_syllables_cancel(self, z2):
        x = parse_fp_element(z2, z2, "g.M * g.M")
        assert x == FP_ONE
        assert render_fp_element(z2, z2, x) == "1"

    def test_nilpotent_syllables_vanish(self, nil):
        assert parse_fp_element(nil, nil, "a.M * a.M") == FP_ZERO
        assert render_fp_element(nil, nil, FP_ZERO) == "0"

    def test_alternating_word(self, nil):
        x = parse_fp_element(nil, nil, "a.M a.N 1 a.M")
        assert x.tag is FPTag.WORD
        assert len(x) == 3
        assert render_fp_element(nil, nil, x) == "a.M a.N a.M"

    def test_malformed_syllable(self, nil):
        with pytest.raises(ValidationError, match="malformed"):
            parse_fp_element(nil, nil, "a")
        with pytest.raises(ValidationError):
            parse_fp_element(nil, nil, "a.Q")

    def test_syllables_checked_past_a_zero(self, nil):
        with pytest.raises(ValidationError, match="out of range"):
            fp_normalize(nil, nil, [("M", nil.zero), ("N", 7)])

    def test_factors_must_be_monoids(self, nil, language):
        with pytest.raises(PreconditionError):
            fp_multiply(nil, language, FP_ONE, FP_ONE)

    def test_element_count(self, nil):
        # Zero, One, then a.M, a.N, a.M a.N, a.N a.M, and the two of length three
        assert len(fp_elements(nil, nil, 3)) == 8

    def test_rclass_reps_include_unit(self, nil, g0):
        assert fp_rclass_reps(nil) == (nil.index("1"), nil.index("a"))
        assert fp_rclass_reps(g0) == (g0.index("e"),)

    def test_divides(self, nil):
        a_m = parse_fp_element(nil, nil, "a.M")
        a_m_a_n = parse_fp_element(nil, nil, "a.M a.N")
        assert fp_divides(nil, nil, a_m, a_m_a_n)
        assert not fp_divides(nil, nil, a_m_a_n, a_m)
        assert fp_divides(nil, nil, FP_ONE, a_m)

    def test_lcm_of_prefixes(self, nil):
        a_m = parse_fp_element(nil, nil, "a.M")
        a_m_a_n = parse_fp_element(nil, nil, "a.M a.N")
        result = fp_lcm(nil, nil, a_m, a_m_a_n, syllable_bound=2)
        assert result.status is LcmStatus.ELEMENT
        assert render_fp_element(nil, nil, result.element) == "a.M a.N"
        assert result.verified_bound == 4

    def test_lcm_of_different_factors_is_zero(self, nil):
        a_m = parse_fp_element(nil, nil, "a.M")
        a_n = parse_fp_element(nil, nil, "a.N")
        result = fp_lcm(nil, nil, a_m, a_n, syllable_bound=2)
        assert result.status is LcmStatus.ZERO

    def test_lcm_budget(self, nil):
        a_m = parse_fp_element(nil, nil, "a.M")
        result = fp_lcm(nil, nil, a_m, a_m, syllable_bound=2, budget=3)
        assert result.status is LcmStatus.UNRESOLVED
        assert result.verified_bound is None


@pytest.fixture(scope="module")
def mixed_pool():
    M, N = load_fixture("Z2"), load_fixture("NIL")
    return M, N, fp_elements(M, N, 3)


@hypothesis_settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_free_product_is_associative(mixed_pool, data):
    """(xy)z = x(yz) for normal forms over Z2 and the nilpotent factor."""
    M, N, pool = mixed_pool
    x, y, z = (data.draw(st.sampled_from(pool)) for _ in range(3))
    left = fp_multiply(M, N, fp_multiply(M, N, x, y), z)
    right = fp_multiply(M, N, x, fp_multiply(M, N, y, z))
    assert left == right
