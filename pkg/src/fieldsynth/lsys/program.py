"""Structured form of a parsed plant grammar and its canonical printer."""

from __future__ import annotations

from dataclasses import dataclass, field

from .curves import FunctionCurve
from .expr import LsysError

# Terminal turtle commands and the argument counts each one accepts.
# Within a single program every symbol must stick to one argument count;
# this table only governs which counts are acceptable at first use.
TURTLE_ARITIES: dict[str, tuple[int, ...]] = {
    "F": (0, 1),   # move forward, drawing a segment of the current organ
    "f": (0, 1),   # move forward without drawing
    "+": (0, 1),   # yaw left around the up axis
    "-": (0, 1),   # yaw right
    "&": (0, 1),   # pitch down around the left axis
    "^": (0, 1),   # pitch up
    "/": (0, 1),   # roll right around the heading
    "\\": (0, 1),  # roll left
    "!": (1,),     # set stem width (m)
    "[": (0,),     # push turtle state
    "]": (0,),     # pop turtle state
    "$": (1,),     # select organ label for subsequent F: 0=stem, 1=branch
    "L": (0, 1, 2, 3, 4),  # leaf placement, species-defined parameters
    "K": (0, 1, 2),        # cotyledon placement
}

TURTLE_SYMBOLS = frozenset(TURTLE_ARITIES)


@dataclass(frozen=True)
class Module:
    """One grammar module: a symbol plus numeric or expression arguments."""

    symbol: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.symbol
        rendered = []
        for a in self.args:
            if isinstance(a, float):
                rendered.append(_fmt_number(a))
            else:
                rendered.append(str(a))
        return f"{self.symbol}({','.join(rendered)})"


ModuleString = tuple  # tuple[Module, ...] with float args


@dataclass(frozen=True)
class Production:
    symbol: str
    params: tuple[str, ...]
    guard: object | None    # expression tree or None
    successor: tuple[Module, ...]  # args are expression trees
    line: int = field(default=0, compare=False)

    def __str__(self):
        head = self.symbol
        if self.params:
            head += f"({','.join(self.params)})"
        if self.guard is not None:
            head += f" : {self.guard}"
        return f"{head} -> {format_modules(self.successor)}"


@dataclass(frozen=True)
class LSystemProgram:
    axiom: tuple[Module, ...]            # args are expression trees over constants
    productions: tuple[Production, ...]
    curves: dict[str, FunctionCurve] = field(default_factory=dict)
    constants: dict[str, float] = field(default_factory=dict)

    @property
    def predecessor_symbols(self) -> frozenset[str]:
        return frozenset(p.symbol for p in self.productions)

    def with_constants(self, overrides: dict[str, float]) -> "LSystemProgram":
        """New program with some constants replaced (ages, counts, jitter...)."""
        unknown = set(overrides) - set(self.constants)
        if unknown:
            raise LsysError(f"override of undeclared constants: {sorted(unknown)}")
        merged = dict(self.constants)
        merged.update({k: float(v) for k, v in overrides.items()})
        return LSystemProgram(self.axiom, self.productions, self.curves, merged)

    def with_curves(self, overrides: dict[str, FunctionCurve]) -> "LSystemProgram":
        """New program with some function curves replaced."""
        unknown = set(overrides) - set(self.curves)
        if unknown:
            raise LsysError(f"override of undeclared curves: {sorted(unknown)}")
        merged = dict(self.curves)
        merged.update(overrides)
        return LSystemProgram(self.axiom, self.productions, merged, self.constants)


def _fmt_number(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def format_modules(modules) -> str:
    return " ".join(str(m) for m in modules)


def format_program(program: LSystemProgram) -> str:
    """Canonical text form; parsing it reproduces the structured program."""
    lines = []
    if program.constants:
        lines.append("constants:")
        for name, value in program.constants.items():
            lines.append(f"  {name} = {_fmt_number(value)}")
        lines.append("")
    if program.curves:
        lines.append("curves:")
        for name, curve in program.curves.items():
            knots = " ".join(f"({_fmt_number(x)},{_fmt_number(y)})"
                             for x, y in zip(curve.xs, curve.ys))
            lines.append(f"  {name} = {knots}")
        lines.append("")
    lines.append(f"axiom: {format_modules(program.axiom)}")
    if program.productions:
        lines.append("")
        lines.append("productions:")
        for prod in program.productions:
            lines.append(f"  {prod}")
    return "\n".join(lines) + "\n"
