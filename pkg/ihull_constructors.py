"""Semigroup constructors and symbolic free-product arithmetic.

Builders return validated ``Semigroup`` values:

    language_semigroup(spec, mode)        L ∪ {0}, concatenation or 0
    markov_semigroup(alphabet, A, n)      words allowed by a 0/1 matrix, |w| <= n
    adjoin_zero(names, rows)              monoid with an absorbing 0 added
    semigroupoid_semigroup(arrows, comp)  composable pairs compose, the rest is 0
    path_category_semigroup(V, E, n)      paths of a graph under concatenation

The free product M *0 N of two monoids with zero is never materialized;
its elements are ``FreeProductElement`` normal forms manipulated by
``fp_multiply`` and queried by ``fp_divides`` and ``fp_lcm``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterable, Mapping, Sequence

from ihull_errors import PreconditionError, ValidationError, VerificationError
from ihull_semigroup import (
    ZERO_TOKEN,
    Semigroup,
    divides,
    lcm,
    validate_semigroup,
)

logger = logging.getLogger("ihull.constructors")

Word = tuple[str, ...]


# ---- languages ----

@dataclass(frozen=True)
class LanguageSpec:
    alphabet: tuple[str, ...]
    words: frozenset[Word]
    max_len: int | None = None


class LanguageMode(Enum):
    VALIDATE = "validate"
    CLOSE = "close"


def tokenize_word(token: str, alphabet: Sequence[str]) -> Word:
    """Split a word token into letters.

    ``x1.x2`` splits on dots; otherwise letters are matched greedily,
    longest alphabet token first.
    """
    if "." in token:
        letters = tuple(token.split("."))
    else:
        ordered = sorted(alphabet, key=len, reverse=True)
        letters_list: list[str] = []
        i = 0
        while i < len(token):
            match = next((a for a in ordered if token.startswith(a, i)), None)
            if match is None:
                raise ValidationError(f"word {token!r} uses a letter outside the alphabet")
            letters_list.append(match)
            i += len(match)
        letters = tuple(letters_list)
    for letter in letters:
        if letter not in alphabet:
            raise ValidationError(f"word {token!r} uses unknown letter {letter!r}")
    if not letters:
        raise ValidationError("empty word")
    return letters


def word_name(word: Word) -> str:
    if all(len(letter) == 1 for letter in word):
        return "".join(word)
    return ".".join(word)


def factors(word: Word) -> set[Word]:
    """All nonempty contiguous factors of a word."""
    n = len(word)
    return {word[i:j] for i in range(n) for j in range(i + 1, n + 1)}


def language_semigroup(
    spec: LanguageSpec, mode: LanguageMode = LanguageMode.VALIDATE,
) -> tuple[Semigroup, dict[Word, int]]:
    """S = L ∪ {0}; the product of two words is their concatenation if it lies in L."""
    if not spec.words:
        raise ValidationError("a language needs at least one word")
    for word in spec.words:
        if not word:
            raise ValidationError("empty word in language")
        for letter in word:
            if letter not in spec.alphabet:
                raise ValidationError(f"word {word_name(word)!r} uses unknown letter {letter!r}")
        if spec.max_len is not None and len(word) > spec.max_len:
            raise ValidationError(
                f"word {word_name(word)!r} is longer than max_len {spec.max_len}"
            )

    language = set(spec.words)
    if mode is LanguageMode.CLOSE:
        for word in spec.words:
            language |= factors(word)
    else:
        for word in sorted(spec.words, key=len):
            missing = sorted(factors(word) - language, key=lambda w: (len(w), w))
            if missing:
                raise ValidationError(
                    f"language is not factor-closed: factor {word_name(missing[0])!r} "
                    f"of {word_name(word)!r} is missing"
                )

    order = {letter: i for i, letter in enumerate(spec.alphabet)}
    ordered = sorted(language, key=lambda w: (len(w), [order[x] for x in w]))
    names = [ZERO_TOKEN] + [word_name(w) for w in ordered]
    position = {w: i + 1 for i, w in enumerate(ordered)}

    rows = [[ZERO_TOKEN] * len(names)]
    for u in ordered:
        row = [ZERO_TOKEN]
        for v in ordered:
            row.append(word_name(u + v) if u + v in position else ZERO_TOKEN)
        rows.append(row)

    S = validate_semigroup(names, ZERO_TOKEN, rows, words=[()] + ordered)
    logger.info("Language semigroup with %d words", len(ordered))
    return S, position


def markov_semigroup(
    alphabet: Sequence[str], matrix: Sequence[Sequence[int]], max_len: int,
) -> Semigroup:
    """Words w with |w| <= max_len and matrix[w_i][w_{i+1}] = 1 throughout."""
    k = len(alphabet)
    if max_len < 1:
        raise ValidationError("max_len must be at least 1")
    if len(matrix) != k or any(len(row) != k for row in matrix):
        raise ValidationError(f"transition matrix must be {k} x {k}")
    for row in matrix:
        for entry in row:
            if entry not in (0, 1) or isinstance(entry, bool):
                raise ValidationError(f"transition matrix entry {entry!r} is not 0 or 1")

    words: set[Word] = set()
    frontier: list[tuple[int, ...]] = [(i,) for i in range(k)]
    while frontier:
        path = frontier.pop()
        words.add(tuple(alphabet[i] for i in path))
        if len(path) < max_len:
            frontier.extend(path + (j,) for j in range(k) if matrix[path[-1]][j] == 1)

    S, _ = language_semigroup(LanguageSpec(tuple(alphabet), frozenset(words), max_len))
    return S


# ---- monoids, semigroupoids, path categories ----

def adjoin_zero(names: Sequence[str], table_rows: Sequence[Sequence[str]]) -> Semigroup:
    """G^0: the monoid given by names/rows with a new absorbing element 0."""
    if ZERO_TOKEN in names:
        raise ValidationError(f"monoid already has an element named {ZERO_TOKEN!r}")
    n = len(names)
    if n == 0 or len(table_rows) != n:
        raise ValidationError("monoid table must be square and nonempty")

    # associativity of the extended table is associativity of the monoid
    rows = [[ZERO_TOKEN] * (n + 1)]
    rows.extend([ZERO_TOKEN] + list(row) for row in table_rows)
    S = validate_semigroup([ZERO_TOKEN] + list(names), ZERO_TOKEN, rows)
    if S.unit is None:
        raise ValidationError("monoid table has no identity element")
    return S


def semigroupoid_semigroup(
    arrows: Sequence[str], composites: Mapping[tuple[str, str], str],
) -> Semigroup:
    """Lambda ∪ {0}: f·g is the listed composite of (f, g), every other product is 0."""
    known = set(arrows)
    for (f, g), h in composites.items():
        for token in (f, g, h):
            if token not in known:
                raise ValidationError(f"composite ({f}, {g}) -> {h} names unknown arrow {token!r}")
    names = [ZERO_TOKEN] + list(arrows)
    rows = [[ZERO_TOKEN] * len(names)]
    for f in arrows:
        rows.append([ZERO_TOKEN] + [composites.get((f, g), ZERO_TOKEN) for g in arrows])
    return validate_semigroup(names, ZERO_TOKEN, rows)


def _has_cycle(vertices: Sequence[str], edges: Sequence[tuple[str, str, str]]) -> bool:
    out: dict[str, list[str]] = {v: [] for v in vertices}
    for _, src, dst in edges:
        out[src].append(dst)
    state = {v: 0 for v in vertices}  # 0 new, 1 on stack, 2 done

    def visit(v: str) -> bool:
        state[v] = 1
        for w in out[v]:
            if state[w] == 1 or (state[w] == 0 and visit(w)):
                return True
        state[v] = 2
        return False

    return any(state[v] == 0 and visit(v) for v in vertices)


def path_category_semigroup(
    vertices: Sequence[str],
    edges: Sequence[tuple[str, str, str]],
    max_len: int | None = None,
) -> Semigroup:
    """Paths of a directed graph with 0 adjoined; p·q concatenates when p ends where q starts.

    Vertices are the identity paths. ``edges`` holds (name, source, target).
    Without ``max_len`` the graph must be acyclic so that the path category
    is finite; with it, longer concatenations are sent to 0.
    """
    vertex_set = set(vertices)
    for name, src, dst in edges:
        if src not in vertex_set or dst not in vertex_set:
            raise ValidationError(f"edge {name!r} joins unknown vertices")
    if max_len is None and _has_cycle(vertices, edges):
        raise ValidationError("graph has a cycle; pass max_len to truncate")

    source = {name: src for name, src, _ in edges}
    target = {name: dst for name, _, dst in edges}
    paths: list[Word] = []
    frontier: list[Word] = [(name,) for name, _, _ in edges]
    while frontier:
        path = frontier.pop(0)
        paths.append(path)
        if max_len is None or len(path) < max_len:
            frontier.extend(path + (name,) for name, src, _ in edges if src == target[path[-1]])

    def start(p: Word | str) -> str:
        return p if isinstance(p, str) else source[p[0]]

    def end(p: Word | str) -> str:
        return p if isinstance(p, str) else target[p[-1]]

    arrows: list[Word | str] = list(vertices) + paths
    label = {a: a if isinstance(a, str) else word_name(a) for a in arrows}
    composites: dict[tuple[str, str], str] = {}
    path_set = set(paths)
    for p, q in product(arrows, repeat=2):
        if end(p) != start(q):
            continue
        if isinstance(p, str):
            composites[(label[p], label[q])] = label[q]
        elif isinstance(q, str):
            composites[(label[p], label[q])] = label[p]
        elif p + q in path_set:
            composites[(label[p], label[q])] = label[p + q]
    return semigroupoid_semigroup([label[a] for a in arrows], composites)


# ---- free products M *0 N ----

FACTOR_TAGS = ("M", "N")


class FPTag(Enum):
    ZERO = "zero"
    ONE = "one"
    WORD = "word"


Syllable = tuple[str, int]


@dataclass(frozen=True)
class FreeProductElement:
    """Normal form in M *0 N: Zero, One, or alternating non-trivial syllables."""

    tag: FPTag
    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self) -> None:
        if (self.tag is FPTag.WORD) != bool(self.syllables):
            raise ValidationError("only Word elements carry syllables")

    def __len__(self) -> int:
        return len(self.syllables)


FP_ZERO = FreeProductElement(FPTag.ZERO)
FP_ONE = FreeProductElement(FPTag.ONE)


def _factor(M: Semigroup, N: Semigroup, tag: str) -> Semigroup:
    if tag == "M":
        return M
    if tag == "N":
        return N
    raise ValidationError(f"unknown factor tag {tag!r}")


def _check_factors(M: Semigroup, N: Semigroup) -> None:
    for tag, F in zip(FACTOR_TAGS, (M, N)):
        if F.unit is None or F.unit == F.zero:
            raise PreconditionError(f"factor {tag} must be a monoid with zero")


def fp_normalize(M: Semigroup, N: Semigroup, syllables: Iterable[Syllable]) -> FreeProductElement:
    """Reduce any syllable sequence to its normal form."""
    syllables = tuple(syllables)
    for tag, a in syllables:
        if not 0 <= a < _factor(M, N, tag).n:
            raise ValidationError(f"syllable id {a} out of range for factor {tag}")
    stack: list[Syllable] = []
    for tag, a in syllables:
        F = _factor(M, N, tag)
        if stack and stack[-1][0] == tag:
            a = F.mul(stack.pop()[1], a)
        if a == F.zero:
            return FP_ZERO
        if a == F.unit:
            continue
        stack.append((tag, a))
    return FreeProductElement(FPTag.WORD, tuple(stack)) if stack else FP_ONE


def fp_multiply(
    M: Semigroup, N: Semigroup, x: FreeProductElement, y: FreeProductElement,
) -> FreeProductElement:
    _check_factors(M, N)
    if x.tag is FPTag.ZERO or y.tag is FPTag.ZERO:
        return FP_ZERO
    return fp_normalize(M, N, x.syllables + y.syllables)


def _rclass_rep_map(F: Semigroup) -> dict[int, int]:
    """Nonzero element -> representative of its R-class (unit for the unit class)."""
    reps: dict[frozenset[int], int] = {}
    unit_ideal = frozenset(int(v) for v in F.table[F.unit]) if F.unit is not None else None
    for a in F.nonzero:
        ideal = frozenset(int(v) for v in F.table[a])
        if ideal == unit_ideal:
            reps[ideal] = F.unit  # type: ignore[assignment]
        else:
            reps.setdefault(ideal, a)
    return {a: reps[frozenset(int(v) for v in F.table[a])] for a in F.nonzero}


def fp_rclass_reps(M: Semigroup) -> tuple[int, ...]:
    """T_M: one representative per nonzero R-class, 1 included, smallest index otherwise."""
    if M.unit is None or M.unit == M.zero:
        raise PreconditionError("R-class representatives need a monoid with zero")
    return tuple(sorted(set(_rclass_rep_map(M).values())))


def _reduce(M: Semigroup, N: Semigroup, x: FreeProductElement) -> FreeProductElement:
    """x' with x'S = xS whose last syllable is a non-invertible R-class representative."""
    if x.tag is not FPTag.WORD:
        return x
    sylls = list(x.syllables)
    while sylls:
        tag, a = sylls[-1]
        F = _factor(M, N, tag)
        rep = _rclass_rep_map(F)[a]
        if rep == F.unit:
            sylls.pop()
            continue
        sylls[-1] = (tag, rep)
        break
    return FreeProductElement(FPTag.WORD, tuple(sylls)) if sylls else FP_ONE


def _in_right_ideal(
    M: Semigroup, N: Semigroup, x: FreeProductElement, y: FreeProductElement
) -> bool:
    """y ∈ xS."""
    if y.tag is FPTag.ZERO:
        return True
    if x.tag is FPTag.ZERO:
        return False
    base = _reduce(M, N, x)
    if base.tag is FPTag.ONE:
        return True
    if y.tag is FPTag.ONE:
        return False
    k = len(base)
    prefix, (tag, a) = base.syllables[: k - 1], base.syllables[k - 1]
    if len(y) < k or y.syllables[: k - 1] != prefix or y.syllables[k - 1][0] != tag:
        return False
    return divides(_factor(M, N, tag), a, y.syllables[k - 1][1])


def fp_divides(M: Semigroup, N: Semigroup, x: FreeProductElement, y: FreeProductElement) -> bool:
    _check_factors(M, N)
    return x == y or _in_right_ideal(M, N, x, y)


def fp_elements(M: Semigroup, N: Semigroup, max_syllables: int) -> list[FreeProductElement]:
    """Zero, One and every normal form with at most max_syllables syllables."""
    _check_factors(M, N)
    letters = {
        tag: [a for a in F.nonzero if a != F.unit]
        for tag, F in zip(FACTOR_TAGS, (M, N))
    }
    result = [FP_ZERO, FP_ONE]
    layer: list[tuple[Syllable, ...]] = [
        ((tag, a),) for tag in FACTOR_TAGS for a in letters[tag]
    ]
    for _ in range(max_syllables):
        result.extend(FreeProductElement(FPTag.WORD, s) for s in layer)
        layer = [
            s + ((other, a),)
            for s in layer
            for other in FACTOR_TAGS
            if other != s[-1][0]
            for a in letters[other]
        ]
    return result


def _count_elements(M: Semigroup, N: Semigroup, max_syllables: int) -> int:
    p = sum(1 for a in M.nonzero if a != M.unit)
    q = sum(1 for a in N.nonzero if a != N.unit)
    total, from_m, from_n = 2, p, q
    for _ in range(max_syllables):
        total += from_m + from_n
        from_m, from_n = from_n * p, from_m * q
    return total


class LcmStatus(Enum):
    ELEMENT = "element"
    ZERO = "zero"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class FreeLcmResult:
    status: LcmStatus
    element: FreeProductElement | None
    verified_bound: int | None


def _lcm_candidate(
    M: Semigroup, N: Semigroup, x: FreeProductElement, y: FreeProductElement
) -> FreeProductElement:
    if x.tag is FPTag.ZERO or y.tag is FPTag.ZERO:
        return FP_ZERO
    xr, yr = _reduce(M, N, x), _reduce(M, N, y)
    if xr.tag is FPTag.ONE:
        return y
    if yr.tag is FPTag.ONE:
        return x
    if len(xr) > len(yr):
        xr, yr = yr, xr
    k = len(xr)
    prefix, (tag, a) = xr.syllables[: k - 1], xr.syllables[k - 1]
    if yr.syllables[: k - 1] != prefix or yr.syllables[k - 1][0] != tag:
        return FP_ZERO
    F = _factor(M, N, tag)
    c = yr.syllables[k - 1][1]
    if len(yr) > k:
        return yr if divides(F, a, c) else FP_ZERO
    r = lcm(F, a, c)
    if r is None:
        raise PreconditionError(f"factor {tag} has no lcm for ({F.name(a)}, {F.name(c)})")
    if r == F.zero:
        return FP_ZERO
    return fp_normalize(M, N, prefix + ((tag, r),))


def fp_lcm(
    M: Semigroup,
    N: Semigroup,
    x: FreeProductElement,
    y: FreeProductElement,
    syllable_bound: int = 4,
    budget: int = 200000,
) -> FreeLcmResult:
    """Least common multiple in M *0 N, checked against bounded enumeration.

    Multiples with up to ``max(|x|, |y|) + syllable_bound`` syllables are
    compared: xS ∩ yS must equal rS there, and both x and y must divide r.
    The result is ``UNRESOLVED`` when the enumeration would exceed ``budget``.
    """
    _check_factors(M, N)
    for tag, F in zip(FACTOR_TAGS, (M, N)):
        if not (F.flags.zero_left_cancellative and F.flags.admits_lcms):
            raise PreconditionError(f"factor {tag} must be 0-left cancellative with lcms")

    r = _lcm_candidate(M, N, x, y)
    status = LcmStatus.ZERO if r.tag is FPTag.ZERO else LcmStatus.ELEMENT
    bound = max(len(x), len(y)) + syllable_bound
    reach = bound + max(len(x), len(y), len(r)) + 1
    if _count_elements(M, N, reach) > budget:
        logger.info("fp_lcm verification needs more than %d elements", budget)
        return FreeLcmResult(LcmStatus.UNRESOLVED, r, None)

    pool = fp_elements(M, N, reach)

    def multiples(base: FreeProductElement) -> set[FreeProductElement]:
        out = {fp_multiply(M, N, base, z) for z in pool}
        return {m for m in out if len(m) <= bound}

    if multiples(x) & multiples(y) != multiples(r):
        raise VerificationError(
            f"lcm candidate {render_fp_element(M, N, r)} does not generate xS ∩ yS"
        )
    if not (fp_divides(M, N, x, r) and fp_divides(M, N, y, r)):
        raise VerificationError(f"{render_fp_element(M, N, r)} is not a common multiple")
    return FreeLcmResult(status, r, bound)


def render_fp_element(M: Semigroup, N: Semigroup, x: FreeProductElement) -> str:
    if x.tag is FPTag.ZERO:
        return "0"
    if x.tag is FPTag.ONE:
        return "1"
    return " ".join(f"{_factor(M, N, tag).name(a)}.{tag}" for tag, a in x.syllables)


def parse_fp_element(M: Semigroup, N: Semigroup, text: str) -> FreeProductElement:
    """Parse ``a.M * b.N`` (or space separated) into a normal form."""
    tokens = text.replace("*", " ").split()
    if not tokens:
        raise ValidationError("empty free-product expression")
    syllables: list[Syllable] = []
    for token in tokens:
        if token == "0":
            return FP_ZERO
        if token == "1":
            continue
        name, dot, tag = token.rpartition(".")
        if not dot or not name:
            raise ValidationError(f"malformed syllable {token!r}; expected name.M or name.N")
        F = _factor(M, N, tag)
        syllables.append((tag, F.index(name)))
    return fp_normalize(M, N, syllables)

