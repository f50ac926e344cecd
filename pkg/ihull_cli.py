#!/usr/bin/env python3
"""Command line for the ihull workbench.

Subcommands:

    ihull props INPUT
        Property flags, per-element classification, lcms and alignment.

    ihull hull INPUT
        Every element of the inverse hull with a generator word.

    ihull constructible INPUT
        The constructible sets, with the E_s and F_s they realise.

    ihull strings INPUT
        The strings of S with their flags and the theta-star domains.

    ihull spectrum INPUT
        The semilattice E(S), its characters and the string characters.

    ihull census INPUT
        Ultracharacters split into open ones and orbits of ground ones.

    ihull verify INPUT [--suite NAME ...]
        Run the verification suites; exit 2 when any suite fails.

    ihull freeprod M N EXPR [--bound N]
        Normalise a product like "a.M * b.N", or answer "x | y" lcm queries.

INPUT is a file path or fixture:NAME. Every subcommand accepts --json,
--oracle, --max-hull N, --max-cover N, --config PATH and --log-level LEVEL.

Exit codes: 0 ok, 1 bad input or unmet precondition, 2 verification
failure, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ihull_config import Settings, load_settings
from ihull_constructors import (
    LanguageMode,
    LanguageSpec,
    adjoin_zero,
    fp_divides,
    fp_lcm,
    language_semigroup,
    markov_semigroup,
    parse_fp_element,
    render_fp_element,
    tokenize_word,
)
from ihull_errors import IHullError, ValidationError, VerificationError
from ihull_fixtures import load_fixture
from ihull_hull import (
    constructible_closure,
    constructible_sets,
    generate_hull,
    is_zero_e_unitary,
    range_set,
    render_word,
    source_set,
    tilde_name,
)
from ihull_logging import EventLog, setup_logging
from ihull_report import Report
from ihull_semigroup import (
    ZERO_TOKEN,
    Semigroup,
    alignment,
    classify_element,
    lcm,
    validate_semigroup,
)
from ihull_spectrum import (
    Semilattice,
    all_characters,
    classify_character,
    filters,
    filters_bruteforce,
    is_degenerate_string,
    is_tight,
    is_tight_bruteforce,
    is_ultra,
    phi_from_string,
    render_character,
    sigma_from_char,
    ultra_census,
)
from ihull_strings import (
    all_strings,
    all_strings_bruteforce,
    classify_string,
    star_domains,
    string_top,
)
from ihull_verify import SUITES, SuiteStatus, run_suites

logger = logging.getLogger("ihull.cli")

FIXTURE_PREFIX = "fixture:"
KINDS = ("semigroup", "language", "markov", "monoid")
# keys whose value continues on the following lines
_BLOCK_KEYS = {"table", "matrix"}
_KEY_LINE = re.compile(r"^([a-z_]+):\s*(.*)$")


# ---- input documents ----

@dataclass(frozen=True)
class InputDocument:
    kind: str
    source: str
    semigroup: Semigroup


@dataclass
class _Field:
    line: int
    values: list[str]
    rows: list[tuple[int, list[str]]]


def _fail(source: str, line: int, message: str) -> ValidationError:
    return ValidationError(f"{source}:{line}: {message}")


def _scan(text: str, source: str) -> tuple[str, dict[str, _Field]]:
    """Split a document into its header kind and key fields."""
    kind: str | None = None
    fields: dict[str, _Field] = {}
    current_key: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _KEY_LINE.match(line)
        if kind is None:
            if match is None or match.group(2):
                raise _fail(source, lineno, f"expected a header such as 'semigroup:', got {line!r}")
            kind = match.group(1)
            if kind not in KINDS:
                known = ", ".join(KINDS)
                raise _fail(source, lineno, f"unknown kind {kind!r}; expected one of {known}")
            continue
        if match is not None:
            key = match.group(1)
            if key in fields:
                raise _fail(source, lineno, f"duplicate key {key!r}")
            fields[key] = _Field(lineno, match.group(2).split(), [])
            current_key = key
        elif current_key in _BLOCK_KEYS:
            fields[current_key].rows.append((lineno, line.split()))
        else:
            raise _fail(source, lineno, f"malformed line {line!r}")
    if kind is None:
        raise ValidationError(f"{source}: empty document")
    return kind, fields


def _require(fields: dict[str, _Field], key: str, source: str) -> _Field:
    if key not in fields:
        raise ValidationError(f"{source}: missing '{key}:' line")
    return fields[key]


def _allow(fields: dict[str, _Field], keys: set[str], source: str) -> None:
    for key, f in fields.items():
        if key not in keys:
            raise _fail(source, f.line, f"unexpected key {key!r}")


def _table(fields: dict[str, _Field], source: str) -> tuple[list[str], list[list[str]]]:
    names = _require(fields, "elements", source).values
    table = _require(fields, "table", source)
    if table.values:
        raise _fail(source, table.line, "table rows start on the next line")
    if len(table.rows) != len(names):
        raise _fail(source, table.line, f"expected {len(names)} table rows, got {len(table.rows)}")
    for lineno, row in table.rows:
        if len(row) != len(names):
            raise _fail(source, lineno, f"expected {len(names)} entries, got {len(row)}")
    return names, [row for _, row in table.rows]


def _positive_int(field: _Field, source: str) -> int:
    if len(field.values) != 1 or not field.values[0].isdigit():
        raise _fail(source, field.line, "expected one positive integer")
    return int(field.values[0])


def _build(kind: str, fields: dict[str, _Field], source: str) -> Semigroup:
    if kind == "semigroup":
        _allow(fields, {"elements", "table"}, source)
        names, rows = _table(fields, source)
        if ZERO_TOKEN not in names:
            raise ValidationError(f"{source}: elements must include {ZERO_TOKEN!r}")
        return validate_semigroup(names, ZERO_TOKEN, rows)
    if kind == "monoid":
        _allow(fields, {"elements", "table"}, source)
        names, rows = _table(fields, source)
        return adjoin_zero(names, rows)
    if kind == "language":
        _allow(fields, {"alphabet", "words", "mode", "maxlen"}, source)
        alphabet = tuple(_require(fields, "alphabet", source).values)
        words = frozenset(
            tokenize_word(w, alphabet) for w in _require(fields, "words", source).values
        )
        mode = LanguageMode.VALIDATE
        if "mode" in fields:
            values = fields["mode"].values
            if values not in (["close"], ["validate"]):
                raise _fail(source, fields["mode"].line, "mode must be 'close' or 'validate'")
            mode = LanguageMode(values[0])
        max_len = _positive_int(fields["maxlen"], source) if "maxlen" in fields else None
        S, _ = language_semigroup(LanguageSpec(alphabet, words, max_len), mode)
        return S
    # markov
    _allow(fields, {"alphabet", "matrix", "maxlen"}, source)
    alphabet = tuple(_require(fields, "alphabet", source).values)
    matrix_field = _require(fields, "matrix", source)
    matrix = []
    for lineno, row in matrix_field.rows:
        if any(tok not in ("0", "1") for tok in row):
            raise _fail(source, lineno, "matrix entries must be 0 or 1")
        matrix.append([int(tok) for tok in row])
    max_len = _positive_int(_require(fields, "maxlen", source), source)
    return markov_semigroup(alphabet, matrix, max_len)


def parse_text(text: str, source: str = "<input>") -> InputDocument:
    kind, fields = _scan(text, source)
    return InputDocument(kind, source, _build(kind, fields, source))


def parse_input(ref: str) -> InputDocument:
    """Read a document from a path, or resolve ``fixture:NAME``."""
    if ref.startswith(FIXTURE_PREFIX):
        name = ref[len(FIXTURE_PREFIX):]
        return InputDocument("fixture", ref, load_fixture(name))
    path = Path(ref)
    if not path.is_file():
        raise ValidationError(f"input file not found: {ref}")
    logger.debug("Parsing %s", path)
    return parse_text(path.read_text(encoding="utf-8"), ref)


# ---- reports ----

def _names(S: Semigroup, xs) -> list[str]:
    return S.sorted_names(xs)


def _string_label(S: Semigroup, sigma: frozenset[int]) -> str:
    top = string_top(S, sigma)
    return f"δ_{S.name(top)}" if top is not None else S.format_set(sigma)


def report_props(doc: InputDocument, settings: Settings) -> Report:
    S = doc.semigroup
    report = Report("props", doc.source)
    props = report.section("properties", ["property", "value"])
    for key, value in S.flags.as_dict().items():
        props.add_row(key, value)
    props.note(f"{S.n} elements; unit: {S.name(S.unit) if S.unit is not None else '-'}")

    elems = report.section(
        "elements", ["element", "idempotent", "prime", "irreducible", "degenerate", "right unit"]
    )
    for s in S.nonzero:
        c = classify_element(S, s)
        elems.add_row(
            S.name(s), c.idempotent, c.prime, c.irreducible, c.degenerate,
            S.name(c.right_unit) if c.right_unit is not None else None,
        )

    lcms = report.section("lcm", ["s", "t", "lcm", "alignment", "witnesses"])
    for s in S.nonzero:
        for t in S.nonzero:
            if t < s:
                continue
            r = lcm(S, s, t)
            al = alignment(S, s, t)
            lcms.add_row(
                S.name(s), S.name(t), S.name(r) if r is not None else None,
                al.kind.value, _names(S, al.witnesses),
            )
    return report


def report_hull(doc: InputDocument, settings: Settings) -> Report:
    S = doc.semigroup
    hull = generate_hull(S, settings.max_hull)
    report = Report("hull", doc.source)
    sec = report.section("elements", ["#", "map", "word", "idempotent"])
    for k, phi in enumerate(hull.elements):
        sec.add_row(k, phi.render(S), render_word(S, hull.witness[phi]), phi.is_idempotent())
    sec.note(
        f"{len(hull)} elements, {len(hull.idempotents)} idempotents; "
        f"0-E-unitary: {'yes' if is_zero_e_unitary(hull) else 'no'}"
    )
    return report


def report_constructible(doc: InputDocument, settings: Settings) -> Report:
    S = doc.semigroup
    members = constructible_sets(S, cap=settings.max_hull)
    if settings.oracle and members != constructible_closure(S):
        raise VerificationError("idempotent domains differ from the closure of the E_s")
    report = Report("constructible", doc.source)
    sec = report.section("List of θ-constructible sets", ["#", "set", "E_s", "F_s"])
    for k, X in enumerate(members):
        sec.add_row(
            k,
            _names(S, X),
            [S.name(s) for s in S.nonzero if range_set(S, s) == X],
            [S.name(s) for s in S.nonzero if source_set(S, s) == X],
        )
    sec.note(f"{len(members)} constructible sets")
    return report


def report_strings(doc: InputDocument, settings: Settings) -> Report:
    S = doc.semigroup
    strings = all_strings(S)
    if settings.oracle:
        if all_strings_bruteforce(S, settings.oracle_max_elements) != strings:
            raise VerificationError("divisor strings differ from subset enumeration")
    report = Report("strings", doc.source)
    sec = report.section(
        "strings", ["string", "members", "open", "maximal", "degenerate", "dead end"]
    )
    for sigma in strings:
        c = classify_string(S, sigma)
        sec.add_row(
            _string_label(S, sigma), _names(S, sigma), c.open, c.maximal, c.degenerate, c.dead_end
        )
    sec.note(f"{len(strings)} strings")

    if S.flags.zero_left_cancellative:
        dom = report.section("theta-star domains", ["r", "F*_r", "E*_r"])
        for r in S.nonzero:
            F_star, E_star = star_domains(S, r)
            dom.add_row(
                S.name(r),
                [_string_label(S, x) for x in F_star],
                [_string_label(S, x) for x in E_star],
            )
    return report


def report_spectrum(doc: InputDocument, settings: Settings) -> Report:
    S = doc.semigroup
    E = Semilattice(constructible_sets(S, cap=settings.max_hull))
    chars = all_characters(E)
    if settings.oracle:
        if len(E.nonzero) <= settings.oracle_max_elements:
            if set(filters_bruteforce(E, settings.oracle_max_elements)) != set(filters(E)):
                raise VerificationError("principal filters differ from subset enumeration")
        for phi in chars:
            if is_tight_bruteforce(E, phi, settings.max_cover) != is_tight(E, phi):
                raise VerificationError("cover enumeration disagrees on tightness")

    report = Report("spectrum", doc.source)
    lattice = report.section("semilattice", ["#", "set"])
    for k, X in enumerate(E.members):
        lattice.add_row(k, _names(S, X))

    sec = report.section(
        "characters", ["character", "ultra", "tight", "ground", "open", "sigma"]
    )
    for phi in chars:
        c = classify_character(S, E, phi)
        sec.add_row(
            render_character(S, E, phi), is_ultra(E, phi.support), is_tight(E, phi),
            c.ground, c.open, _names(S, sigma_from_char(S, E, phi)),
        )
    sec.note(f"{len(chars)} characters")

    ultras = {phi for phi in chars if is_ultra(E, phi.support)}
    strs = report.section("string characters", ["string", "character", "quasi-maximal"])
    for sigma in all_strings(S):
        if is_degenerate_string(S, sigma):
            strs.add_row(_string_label(S, sigma), "0", False)
            continue
        phi = phi_from_string(S, E, sigma)
        strs.add_row(_string_label(S, sigma), render_character(S, E, phi), phi in ultras)
    return report


def report_census(doc: InputDocument, settings: Settings) -> Report:
    S = doc.semigroup
    E = Semilattice(constructible_sets(S, cap=settings.max_hull))
    census = ultra_census(S, E)
    report = Report("census", doc.source)
    opened = report.section("open ultracharacters", ["string", "character"])
    for sigma, phi in census.open_ultras:
        opened.add_row(_string_label(S, sigma), render_character(S, E, phi))
    nonopen = report.section("non-open ultracharacters", ["u", "ground", "character"])
    for u, ground, phi in census.nonopen_ultras:
        nonopen.add_row(
            tilde_name(S, u), render_character(S, E, ground), render_character(S, E, phi)
        )
    quasi = report.section("quasi-maximal strings", ["string", "members"])
    for sigma in census.quasi_maximal_strings:
        quasi.add_row(_string_label(S, sigma), _names(S, sigma))
    report.sections[0].note(
        f"{len(census)} ultracharacters: {len(census.open_ultras)} open, "
        f"{len(census.nonopen_ultras)} non-open"
    )
    return report


def report_verify(
    doc: InputDocument,
    settings: Settings,
    suites: Optional[list[str]] = None,
    event_log: EventLog | None = None,
) -> Report:
    results = run_suites(
        doc.semigroup, settings, suites, settings.oracle, event_log
    )
    report = Report("verify", doc.source)
    sec = report.section("suites", ["suite", "status", "detail"])
    for r in results:
        sec.add_row(r.name, r.status.value.upper(), r.detail)
    counts = {status: sum(r.status is status for r in results) for status in SuiteStatus}
    sec.note(", ".join(f"{n} {status.value}" for status, n in counts.items()))
    if counts[SuiteStatus.FAILED]:
        report.status = "failed"
    return report


def report_freeprod(
    M_doc: InputDocument, N_doc: InputDocument, expr: str, settings: Settings
) -> Report:
    M, N = M_doc.semigroup, N_doc.semigroup
    report = Report("freeprod", f"{M_doc.source} *0 {N_doc.source}")
    if "|" not in expr:
        x = parse_fp_element(M, N, expr)
        sec = report.section("normal form", ["expression", "normal form", "syllables"])
        sec.add_row(expr.strip(), render_fp_element(M, N, x), len(x))
        return report
    left, _, right = expr.partition("|")
    if "|" in right:
        raise ValidationError("an lcm query has exactly one '|'")
    x, y = parse_fp_element(M, N, left), parse_fp_element(M, N, right)
    result = fp_lcm(M, N, x, y, settings.fp_syllable_bound, settings.fp_enumeration_budget)
    sec = report.section(
        "lcm", ["x", "y", "x divides y", "y divides x", "lcm", "status", "checked to"]
    )
    sec.add_row(
        render_fp_element(M, N, x),
        render_fp_element(M, N, y),
        fp_divides(M, N, x, y),
        fp_divides(M, N, y, x),
        render_fp_element(M, N, result.element) if result.element is not None else None,
        result.status.value,
        result.verified_bound,
    )
    return report


# ---- handlers ----

def _emit(args: argparse.Namespace, report: Report) -> None:
    sys.stdout.write(report.to_json() if args.json else report.to_text())


def cmd_props(args: argparse.Namespace) -> int:
    _emit(args, report_props(parse_input(args.input), args.settings))
    return 0


def cmd_hull(args: argparse.Namespace) -> int:
    _emit(args, report_hull(parse_input(args.input), args.settings))
    return 0


def cmd_constructible(args: argparse.Namespace) -> int:
    _emit(args, report_constructible(parse_input(args.input), args.settings))
    return 0


def cmd_strings(args: argparse.Namespace) -> int:
    _emit(args, report_strings(parse_input(args.input), args.settings))
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    _emit(args, report_spectrum(parse_input(args.input), args.settings))
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    _emit(args, report_census(parse_input(args.input), args.settings))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    doc = parse_input(args.input)
    if args.events is not None:
        args.events.event("run_start", command="verify", subject=doc.source)
    report = report_verify(doc, args.settings, args.suite, args.events)
    _emit(args, report)
    return 0 if report.status == "ok" else VerificationError.exit_code


def cmd_freeprod(args: argparse.Namespace) -> int:
    settings = args.settings
    if args.bound is not None:
        settings = settings.override(fp_syllable_bound=args.bound)
    report = report_freeprod(parse_input(args.m), parse_input(args.n), args.expr, settings)
    _emit(args, report)
    return 0


# ---- parser ----

class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1 like every other input error."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ValidationError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ihull",
        description="Inverse hulls, strings and spectra of finite 0-left cancellative semigroups.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable output")
    common.add_argument("--oracle", action="store_true",
                        help="Cross-check against brute-force enumeration")
    common.add_argument("--max-hull", type=_positive, default=None,
                        help="Abort when the hull grows past N elements (exit 3)")
    common.add_argument("--max-cover", type=_positive, default=None,
                        help="Largest lower set enumerated by the cover oracle")
    common.add_argument("--config", default=None,
                        help="Settings file (default: config/ihull.yaml)")
    common.add_argument("--log-level", default=None,
                        help="DEBUG, INFO, WARNING or ERROR")

    single = [
        ("props", cmd_props, "Property flags, element classes, lcms"),
        ("hull", cmd_hull, "Elements of the inverse hull"),
        ("constructible", cmd_constructible, "Constructible sets"),
        ("strings", cmd_strings, "Strings and theta-star domains"),
        ("spectrum", cmd_spectrum, "Semilattice and characters"),
        ("census", cmd_census, "Census of ultracharacters"),
    ]
    for name, func, help_text in single:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", help="Input file or fixture:NAME")
        p.set_defaults(func=func)

    p_vf = sub.add_parser("verify", parents=[common], help="Run verification suites")
    p_vf.add_argument("input", help="Input file or fixture:NAME")
    p_vf.add_argument("--suite", action="append", default=None, choices=list(SUITES),
                      help="Run only this suite (repeatable)")
    p_vf.set_defaults(func=cmd_verify)

    p_fp = sub.add_parser("freeprod", parents=[common],
                          help="Normal forms and lcms in M *0 N")
    p_fp.add_argument("m", help="Factor M: input file or fixture:NAME")
    p_fp.add_argument("n", help="Factor N: input file or fixture:NAME")
    p_fp.add_argument("expr", help="'a.M * b.N' or an lcm query 'x | y'")
    p_fp.add_argument("--bound", type=_positive, default=None,
                      help="Extra syllables enumerated when checking an lcm")
    p_fp.set_defaults(func=cmd_freeprod)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        settings = load_settings(args.config).override(
            max_hull=args.max_hull,
            max_cover=args.max_cover,
            log_level=args.log_level,
            oracle=args.oracle,
        )
        _, events = setup_logging(
            level=settings.log_level_number,
            fmt=settings.log_format,
            log_file=settings.log_file,
            events_file=settings.events_file,
        )
        args.settings = settings
        args.events = events
        return args.func(args)
    except IHullError as e:
        logger.debug("Command failed", exc_info=True)
        sys.stderr.write(f"ihull: error: {e}\n")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
