"""Expression trees for production arguments and guards.

Expressions are parsed once into small AST nodes and evaluated many times
during derivation, always in float64. Identifiers resolve against the
module's formal parameters first, then the grammar's constant table.
Call targets are either builtin math functions, a named function curve,
or `rand`/`normal`, which draw from the derivation's seeded stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curves import FunctionCurve


class LsysError(Exception):
    """Base error for the plant-grammar DSL."""


class EvalError(LsysError):
    pass


_BUILTINS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "asin": math.asin,
    "acos": math.acos,
    "atan2": math.atan2,
    "sqrt": math.sqrt,
    "abs": abs,
    "exp": math.exp,
    "log": math.log,
    "floor": math.floor,
    "ceil": math.ceil,
    "min": min,
    "max": max,
    "pow": math.pow,
    "clamp": lambda x, lo, hi: min(max(x, lo), hi),
}

_BUILTIN_ARITY = {
    "sin": (1,), "cos": (1,), "tan": (1,), "asin": (1,), "acos": (1,),
    "atan2": (2,), "sqrt": (1,), "abs": (1,), "exp": (1,), "log": (1,),
    "floor": (1,), "ceil": (1,), "min": (2,), "max": (2,), "pow": (2,),
    "clamp": (3,), "rand": (2,), "normal": (2,),
}

RANDOM_FUNCS = ("rand", "normal")


@dataclass(frozen=True)
class Num:
    value: float

    def __str__(self):
        # canonical: integers print without a trailing .0
        if self.value == int(self.value) and abs(self.value) < 1e15:
            return str(int(self.value))
        return repr(self.value)


@dataclass(frozen=True)
class Name:
    ident: str

    def __str__(self):
        return self.ident


@dataclass(frozen=True)
class Unary:
    op: str
    operand: object

    def __str__(self):
        return f"{self.op}({self.operand})"


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple

    def __str__(self):
        return f"{self.func}({', '.join(str(a) for a in self.args)})"


class EvalContext:
    """Everything an expression may reference at evaluation time."""

    __slots__ = ("params", "constants", "curves", "rng")

    def __init__(self, params=None, constants=None, curves=None, rng=None):
        self.params = params or {}
        self.constants = constants or {}
        self.curves = curves or {}
        self.rng = rng


def evaluate(node, ctx: EvalContext) -> float:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Name):
        if node.ident in ctx.params:
            return float(ctx.params[node.ident])
        if node.ident in ctx.constants:
            return float(ctx.constants[node.ident])
        raise EvalError(f"unknown identifier {node.ident!r}")
    if isinstance(node, Unary):
        v = evaluate(node.operand, ctx)
        if node.op == "-":
            return -v
        if node.op == "!":
            return 0.0 if v != 0.0 else 1.0
        raise EvalError(f"unknown unary operator {node.op!r}")
    if isinstance(node, Binary):
        a = evaluate(node.left, ctx)
        if node.op == "&&":
            return 1.0 if a != 0.0 and evaluate(node.right, ctx) != 0.0 else 0.0
        if node.op == "||":
            return 1.0 if a != 0.0 or evaluate(node.right, ctx) != 0.0 else 0.0
        b = evaluate(node.right, ctx)
        op = node.op
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            if b == 0.0:
                raise EvalError("division by zero")
            return a / b
        if op == "%":
            if b == 0.0:
                raise EvalError("modulo by zero")
            return math.fmod(a, b)
        if op == "^":
            return math.pow(a, b)
        if op == "<":
            return 1.0 if a < b else 0.0
        if op == "<=":
            return 1.0 if a <= b else 0.0
        if op == ">":
            return 1.0 if a > b else 0.0
        if op == ">=":
            return 1.0 if a >= b else 0.0
        if op == "==":
            return 1.0 if a == b else 0.0
        if op == "!=":
            return 1.0 if a != b else 0.0
        raise EvalError(f"unknown operator {op!r}")
    if isinstance(node, Call):
        args = [evaluate(a, ctx) for a in node.args]
        if node.func in ctx.curves:
            curve: FunctionCurve = ctx.curves[node.func]
            return float(curve(args[0]))
        if node.func == "rand":
            if ctx.rng is None:
                raise EvalError("rand() used without a random stream")
            lo, hi = args
            return float(lo + (hi - lo) * ctx.rng.random())
        if node.func == "normal":
            if ctx.rng is None:
                raise EvalError("normal() used without a random stream")
            return float(args[0] + args[1] * ctx.rng.standard_normal())
        fn = _BUILTINS.get(node.func)
        if fn is None:
            raise EvalError(f"unknown function {node.func!r}")
        try:
            return float(fn(*args))
        except ValueError as exc:
            raise EvalError(f"{node.func}: {exc}") from exc
    raise EvalError(f"bad expression node {node!r}")


def free_names(node) -> set[str]:
    """Identifiers referenced by an expression (not including call targets)."""
    if isinstance(node, Name):
        return {node.ident}
    if isinstance(node, Unary):
        return free_names(node.operand)
    if isinstance(node, Binary):
        return free_names(node.left) | free_names(node.right)
    if isinstance(node, Call):
        out = set()
        for a in node.args:
            out |= free_names(a)
        return out
    return set()


def called_names(node) -> set[str]:
    if isinstance(node, Unary):
        return called_names(node.operand)
    if isinstance(node, Binary):
        return called_names(node.left) | called_names(node.right)
    if isinstance(node, Call):
        out = {node.func}
        for a in node.args:
            out |= called_names(a)
        return out
    return set()


def builtin_arities() -> dict[str, tuple[int, ...]]:
    return dict(_BUILTIN_ARITY)
