import numpy as np
import pytest

from fieldsynth.lsys import DeriveError, derive, parse_lsystem
from fieldsynth.lsys.program import Module


def brute_force_rewrite(rules: dict, axiom: str, steps: int) -> str:
    """Independent character-wise rewriter used as the oracle."""
    s = axiom
    for _ in range(steps):
        s = "".join(rules.get(ch, ch) for ch in s)
    return s


FIB = "axiom: A\nproductions:\n  A -> A B\n  B -> A\n"


def test_zero_steps_returns_axiom():
    program = parse_lsystem("axiom: A(0) F(1)\nproductions:\n  A(n) -> A(n+1)\n")
    out = derive(program, 0)
    assert out == (Module("A", (0.0,)), Module("F", (1.0,)))


def test_fibonacci_word_lengths_match_brute_force():
    program = parse_lsystem(FIB)
    for steps in range(16):
        expected = brute_force_rewrite({"A": "AB", "B": "A"}, "A", steps)
        got = derive(program, steps)
        assert len(got) == len(expected)
        assert "".join(m.symbol for m in got) == expected
    # the classic Fibonacci prefix
    assert [len(derive(program, k)) for k in range(6)] == [1, 2, 3, 5, 8, 13]


def test_guard_stops_growth():
    program = parse_lsystem(
        "axiom: A(0)\nproductions:\n  A(n) : n<3 -> A(n+1) L\n")
    out = derive(program, 5)
    assert sum(1 for m in out if m.symbol == "L") == 3
    # the apex survives with its final parameter once the guard fails
    assert [m for m in out if m.symbol == "A"] == [Module("A", (3.0,))]


def test_parallel_semantics_stepwise_composition():
    from fieldsynth.lsys.derive import derive_from

    program = parse_lsystem(GRAMMAR_PARAMETRIC)
    for k in range(6):
        assert derive(program, k + 1) == derive_from(program, derive(program, k), 1)


GRAMMAR_PARAMETRIC = """
constants:
  lim = 4
axiom: A(0) B(1)
productions:
  A(n) : n < lim -> A(n+1) [ B(n) ]
  B(n) -> B(n*2)
"""


def test_bracket_balance_preserved():
    program = parse_lsystem(GRAMMAR_PARAMETRIC)
    for steps in range(8):
        depth = 0
        for m in derive(program, steps):
            depth += {"[": 1, "]": -1}.get(m.symbol, 0)
            assert depth >= 0
        assert depth == 0


def test_determinism_with_random_args():
    src = ("axiom: A(0)\nproductions:\n"
           "  A(n) : n < 6 -> F(rand(0.5, 1.5)) A(n+1)\n")
    program = parse_lsystem(src)
    a = derive(program, 8, np.random.default_rng(99))
    b = derive(program, 8, np.random.default_rng(99))
    c = derive(program, 8, np.random.default_rng(100))
    assert a == b
    assert a != c


def test_division_by_zero_names_production():
    program = parse_lsystem("axiom: A(0)\nproductions:\n  A(n) -> A(1/n)\n")
    with pytest.raises(DeriveError, match=r"production 'A' \(line 3\)"):
        derive(program, 1)


def test_first_matching_guard_wins():
    src = ("axiom: A(0)\nproductions:\n"
           "  A(n) : n < 10 -> F A(n+1)\n"
           "  A(n) -> f A(n+1)\n")
    program = parse_lsystem(src)
    out = derive(program, 3)
    assert sum(1 for m in out if m.symbol == "F") == 3
    assert all(m.symbol != "f" for m in out)
