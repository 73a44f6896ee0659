"""Parallel rewriting of module strings."""

from __future__ import annotations

import numpy as np

from .expr import EvalContext, EvalError, LsysError, evaluate
from .program import LSystemProgram, Module


class DeriveError(LsysError):
    pass


def _eval_args(module: Module, ctx: EvalContext, where: str) -> Module:
    try:
        values = tuple(evaluate(a, ctx) for a in module.args)
    except EvalError as exc:
        raise DeriveError(f"{where}: {exc}") from exc
    return Module(module.symbol, values)


def derive(program: LSystemProgram, steps: int,
           rng: np.random.Generator | None = None) -> tuple[Module, ...]:
    """Rewrite the axiom `steps` times, all modules in parallel per step.

    Productions are tried in declaration order; the first whose symbol,
    parameter count and guard match wins. Modules with no matching
    production are copied unchanged. Deterministic for a fixed
    (program, steps, rng state): rand()/normal() in successor arguments
    consume the stream in module order.
    """
    base = EvalContext(constants=program.constants, curves=program.curves, rng=rng)
    start = tuple(_eval_args(m, base, "axiom") for m in program.axiom)
    return derive_from(program, start, steps, rng)


def derive_from(program: LSystemProgram, modules, steps: int,
                rng: np.random.Generator | None = None) -> tuple[Module, ...]:
    """Rewrite an already-derived module string `steps` more times."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    current = tuple(modules)

    by_symbol: dict[str, list] = {}
    for prod in program.productions:
        by_symbol.setdefault(prod.symbol, []).append(prod)

    for _ in range(steps):
        out: list[Module] = []
        for module in current:
            prods = by_symbol.get(module.symbol)
            replaced = False
            if prods:
                for prod in prods:
                    if len(prod.params) != len(module.args):
                        continue
                    params = dict(zip(prod.params, module.args))
                    ctx = EvalContext(params=params, constants=program.constants,
                                      curves=program.curves, rng=rng)
                    where = f"production {prod.symbol!r} (line {prod.line})"
                    if prod.guard is not None:
                        try:
                            if evaluate(prod.guard, ctx) == 0.0:
                                continue
                        except EvalError as exc:
                            raise DeriveError(f"guard of {where}: {exc}") from exc
                    out.extend(_eval_args(m, ctx, where) for m in prod.successor)
                    replaced = True
                    break
            if not replaced:
                out.append(module)
        current = tuple(out)
    return current
