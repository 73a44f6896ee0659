import pytest

from fieldsynth.lsys import ParseError, format_program, parse_lsystem
from fieldsynth.lsys.program import Module

GRASSY_LIKE = """
# leaf emergence driven by one apex rule
constants:
  max_n = 6
  incl_base = 40

curves:
  leaf_len = (0,0.01) (3,0.05) (8,0.09)

axiom: A(0)

productions:
  A(n) : n < max_n -> F(0.01) [ /(180*n) &(incl_base + 2*n) L(leaf_len(n), n) ] A(n+1)
"""


def test_degenerate_grammar_axiom_only():
    program = parse_lsystem("axiom: A(0)\nproductions:\n  A(n) -> A(n)\n")
    assert len(program.productions) == 1
    program2 = parse_lsystem("axiom: F(1)\n")
    assert program2.productions == ()
    assert program2.axiom[0].symbol == "F"


def test_single_production_with_guard():
    program = parse_lsystem(
        "axiom: A(0)\nproductions:\n  A(n) : n<3 -> A(n+1) B\n  B -> B\n")
    assert len(program.productions) == 2
    prod = program.productions[0]
    assert prod.symbol == "A"
    assert prod.params == ("n",)
    assert str(prod.guard) == "(n < 3)"
    assert [m.symbol for m in prod.successor] == ["A", "B"]


def test_syntax_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse_lsystem("axiom: A(0)\nproductions:\n  A(n -> B\n")
    assert err.value.line == 3


def test_undeclared_symbol_rejected():
    with pytest.raises(ParseError, match="undeclared symbol 'Q'"):
        parse_lsystem("axiom: A\nproductions:\n  A -> Q\n")


def test_arity_mismatch_rejected():
    with pytest.raises(ParseError, match="argument"):
        parse_lsystem("axiom: A(1)\nproductions:\n  A -> A\n")
    with pytest.raises(ParseError, match="argument"):
        parse_lsystem("axiom: F(1) F\n")


def test_non_increasing_curve_knots_rejected():
    src = "curves:\n  c = (0,0) (0,1)\naxiom: F(1)\n"
    with pytest.raises(ParseError, match="non-increasing"):
        parse_lsystem(src)


def test_guard_may_only_use_params_and_constants():
    src = "axiom: A(0)\nproductions:\n  A(n) : m < 3 -> A(n)\n"
    with pytest.raises(ParseError, match="guard"):
        parse_lsystem(src)


def test_guard_must_be_deterministic():
    src = "axiom: A(0)\nproductions:\n  A(n) : rand(0,1) < 0.5 -> A(n)\n"
    with pytest.raises(ParseError, match="deterministic"):
        parse_lsystem(src)


def test_unbalanced_brackets_rejected():
    with pytest.raises(ParseError, match="bracket"):
        parse_lsystem("axiom: [ F(1)\n")
    with pytest.raises(ParseError, match="without matching"):
        parse_lsystem("axiom: F(1) ]\n")


def test_parse_print_parse_identity():
    program = parse_lsystem(GRASSY_LIKE)
    text = format_program(program)
    reparsed = parse_lsystem(text)
    assert reparsed.axiom == program.axiom
    assert reparsed.productions == program.productions
    assert reparsed.constants == program.constants
    assert set(reparsed.curves) == set(program.curves)
    for name in program.curves:
        assert reparsed.curves[name].xs == program.curves[name].xs
        assert reparsed.curves[name].ys == program.curves[name].ys
    # and the printer is a fixed point
    assert format_program(reparsed) == text


def test_comments_and_blank_lines_ignored():
    program = parse_lsystem(
        "# header\n\nconstants:\n  a = 1 + 1  # two\n\naxiom: A  # start\n"
        "productions:\n  A -> A F  # regrow\n")
    assert program.constants["a"] == 2.0
    assert program.axiom == (Module("A", ()),)
