"""Text format for plant grammars.

A grammar file has up to four sections, each introduced by a keyword line:

    constants:
      plastochron = 2.5

    curves:
      leaf_len = (0,0.01) (4,0.05) (10,0.09)

    axiom: A(0)

    productions:
      A(n) : n < plastochron -> I(n) [ &(45) L(leaf_len(n), n) ] A(n+1)

Symbols are single characters. Letters may be rewritten by productions;
the punctuation symbols are turtle commands (see program.TURTLE_ARITIES).
`#` starts a comment. Guards may reference only the production's formal
parameters and the constant table; `rand(a,b)` / `normal(mu,sigma)` are
allowed in successor arguments, where they draw from the derivation stream.
"""

from __future__ import annotations

import string

from .curves import FunctionCurve
from .expr import (Binary, Call, EvalContext, LsysError, Name, Num, Unary,
                   builtin_arities, called_names, evaluate, free_names,
                   RANDOM_FUNCS)
from .program import (LSystemProgram, Module, Production, TURTLE_ARITIES,
                      TURTLE_SYMBOLS)


class ParseError(LsysError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


_SYMBOL_PUNCT = "+-&^/\\![]$"
_IDENT_START = string.ascii_letters + "_"
_IDENT_CHARS = string.ascii_letters + string.digits + "_"


class _Cursor:
    """Character cursor over one logical line, tracking column for errors."""

    def __init__(self, text: str, line_no: int):
        self.text = text
        self.line = line_no
        self.pos = 0

    def col(self) -> int:
        return self.pos + 1

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def advance(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        return ch

    def skip_ws(self):
        while not self.eof() and self.text[self.pos] in " \t":
            self.pos += 1

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.col())

    def expect(self, ch: str):
        self.skip_ws()
        if self.eof() or self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.advance()

    def match(self, ch: str) -> bool:
        self.skip_ws()
        if not self.eof() and self.peek() == ch:
            self.advance()
            return True
        return False

    def ident(self) -> str:
        self.skip_ws()
        if self.eof() or self.peek() not in _IDENT_START:
            raise self.error("expected identifier")
        start = self.pos
        while not self.eof() and self.peek() in _IDENT_CHARS:
            self.advance()
        return self.text[start:self.pos]

    def number(self) -> float:
        self.skip_ws()
        start = self.pos
        while not self.eof() and (self.peek().isdigit() or self.peek() == "."):
            self.advance()
        if not self.eof() and self.peek() in "eE":
            self.advance()
            if not self.eof() and self.peek() in "+-":
                self.advance()
            while not self.eof() and self.peek().isdigit():
                self.advance()
        text = self.text[start:self.pos]
        try:
            return float(text)
        except ValueError:
            raise self.error(f"bad number {text!r}") from None


# ---------------------------------------------------------------- expressions

def _parse_expr(cur: _Cursor):
    return _parse_or(cur)


def _parse_or(cur: _Cursor):
    node = _parse_and(cur)
    while True:
        cur.skip_ws()
        if cur.text.startswith("||", cur.pos):
            cur.pos += 2
            node = Binary("||", node, _parse_and(cur))
        else:
            return node


def _parse_and(cur: _Cursor):
    node = _parse_cmp(cur)
    while True:
        cur.skip_ws()
        if cur.text.startswith("&&", cur.pos):
            cur.pos += 2
            node = Binary("&&", node, _parse_cmp(cur))
        else:
            return node


_CMP_OPS = ("<=", ">=", "==", "!=", "<", ">")


def _parse_cmp(cur: _Cursor):
    node = _parse_add(cur)
    cur.skip_ws()
    for op in _CMP_OPS:
        if cur.text.startswith(op, cur.pos):
            cur.pos += len(op)
            return Binary(op, node, _parse_add(cur))
    return node


def _parse_add(cur: _Cursor):
    node = _parse_mul(cur)
    while True:
        cur.skip_ws()
        ch = cur.peek()
        if ch == "+" or (ch == "-" and not cur.text.startswith("->", cur.pos)):
            cur.advance()
            node = Binary(ch, node, _parse_mul(cur))
        else:
            return node


def _parse_mul(cur: _Cursor):
    node = _parse_unary(cur)
    while True:
        cur.skip_ws()
        ch = cur.peek()
        if ch and ch in "*/%":
            cur.advance()
            node = Binary(ch, node, _parse_unary(cur))
        else:
            return node


def _parse_unary(cur: _Cursor):
    cur.skip_ws()
    ch = cur.peek()
    if ch == "-":
        cur.advance()
        return Unary("-", _parse_unary(cur))
    if ch == "!" and not cur.text.startswith("!=", cur.pos):
        cur.advance()
        return Unary("!", _parse_unary(cur))
    return _parse_power(cur)


def _parse_power(cur: _Cursor):
    node = _parse_primary(cur)
    cur.skip_ws()
    if cur.peek() == "^":
        cur.advance()
        return Binary("^", node, _parse_unary(cur))  # right associative
    return node


def _parse_primary(cur: _Cursor):
    cur.skip_ws()
    if cur.eof():
        raise cur.error("unexpected end of expression")
    ch = cur.peek()
    if ch == "(":
        cur.advance()
        node = _parse_expr(cur)
        cur.expect(")")
        return node
    if ch.isdigit() or ch == ".":
        return Num(cur.number())
    if ch in _IDENT_START:
        name = cur.ident()
        if cur.match("("):
            args = []
            if not cur.match(")"):
                while True:
                    args.append(_parse_expr(cur))
                    if cur.match(")"):
                        break
                    cur.expect(",")
            return Call(name, tuple(args))
        return Name(name)
    raise cur.error(f"unexpected character {ch!r} in expression")


# ------------------------------------------------------------- module strings

def _parse_module_seq(cur: _Cursor) -> tuple[Module, ...]:
    modules = []
    while True:
        cur.skip_ws()
        if cur.eof() or cur.peek() == "#":
            break
        ch = cur.peek()
        if ch in _SYMBOL_PUNCT or ch in string.ascii_letters:
            col = cur.col()
            cur.advance()
            args = ()
            if not cur.eof() and cur.peek() == "(":
                cur.advance()
                parsed = []
                if not cur.match(")"):
                    while True:
                        parsed.append(_parse_expr(cur))
                        cur.skip_ws()
                        if cur.eof():
                            raise ParseError("unclosed '(' in module arguments",
                                             cur.line, col)
                        if cur.match(")"):
                            break
                        cur.expect(",")
                args = tuple(parsed)
            modules.append(Module(ch, args))
        else:
            raise cur.error(f"unexpected character {ch!r} in module string")
    return tuple(modules)


# ------------------------------------------------------------------ top level

def _strip_comment(line: str) -> str:
    if "#" in line:
        return line.split("#", 1)[0]
    return line


def parse_lsystem(source: str) -> LSystemProgram:
    """Parse grammar text into a validated program.

    Raises ParseError with a line/column position on any syntax or
    validation problem: undeclared symbols, inconsistent arities,
    guards referencing non-parameters, or bad curve knots.
    """
    constants: dict[str, float] = {}
    curves: dict[str, FunctionCurve] = {}
    axiom: tuple[Module, ...] | None = None
    productions: list[Production] = []
    section = None

    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        lowered = stripped.lower()
        if lowered == "constants:":
            section = "constants"
            continue
        if lowered == "curves:":
            section = "curves"
            continue
        if lowered == "productions:":
            section = "productions"
            continue
        if lowered.startswith("axiom:"):
            cur = _Cursor(line, line_no)
            cur.pos = line.index(":") + 1
            axiom = _parse_module_seq(cur)
            section = None
            continue

        indent = len(line) - len(line.lstrip())
        cur = _Cursor(line, line_no)
        cur.pos = indent

        if section == "constants":
            name = cur.ident()
            cur.expect("=")
            expr = _parse_expr(cur)
            _expect_line_end(cur)
            refs = free_names(expr) - set(constants)
            if refs:
                raise ParseError(f"constant {name!r} references undefined "
                                 f"{sorted(refs)}", line_no, 1)
            if called_names(expr):
                raise ParseError(f"constant {name!r} may not call functions",
                                 line_no, 1)
            constants[name] = evaluate(expr, EvalContext(constants=constants))
        elif section == "curves":
            name = cur.ident()
            cur.expect("=")
            pairs = []
            while True:
                cur.skip_ws()
                if cur.eof():
                    break
                cur.expect("(")
                x = _signed_number(cur)
                cur.expect(",")
                y = _signed_number(cur)
                cur.expect(")")
                pairs.append((x, y))
            if len(pairs) < 2:
                raise ParseError(f"curve {name!r} needs >= 2 knots", line_no, 1)
            try:
                curves[name] = FunctionCurve(tuple(p[0] for p in pairs),
                                             tuple(p[1] for p in pairs), name)
            except ValueError as exc:
                raise ParseError(str(exc), line_no, 1) from None
        elif section == "productions":
            productions.append(_parse_production(cur, line_no))
        else:
            raise ParseError(f"statement outside any section: {stripped!r}",
                             line_no, 1)

    if axiom is None:
        raise ParseError("grammar has no axiom", 1, 1)

    program = LSystemProgram(axiom=axiom, productions=tuple(productions),
                             curves=curves, constants=constants)
    _validate(program)
    return program


def _signed_number(cur: _Cursor) -> float:
    cur.skip_ws()
    sign = 1.0
    if cur.peek() == "-":
        cur.advance()
        sign = -1.0
    return sign * cur.number()


def _expect_line_end(cur: _Cursor):
    cur.skip_ws()
    if not cur.eof():
        raise cur.error(f"unexpected trailing text {cur.text[cur.pos:]!r}")


def _parse_production(cur: _Cursor, line_no: int) -> Production:
    cur.skip_ws()
    if cur.eof():
        raise cur.error("empty production")
    symbol = cur.peek()
    if symbol not in string.ascii_letters:
        raise cur.error(f"production predecessor must be a letter, got {symbol!r}")
    cur.advance()
    params: tuple[str, ...] = ()
    if cur.peek() == "(":
        cur.advance()
        names = []
        if not cur.match(")"):
            while True:
                names.append(cur.ident())
                if cur.match(")"):
                    break
                cur.expect(",")
        params = tuple(names)
    guard = None
    if cur.match(":"):
        guard = _parse_guard(cur)
    cur.skip_ws()
    if not cur.text.startswith("->", cur.pos):
        raise cur.error("expected '->'")
    cur.pos += 2
    successor = _parse_module_seq(cur)
    return Production(symbol, params, guard, successor, line_no)


def _parse_guard(cur: _Cursor):
    # parse everything up to the '->' as one expression
    arrow = cur.text.find("->", cur.pos)
    if arrow < 0:
        raise cur.error("guard must be followed by '->'")
    sub = _Cursor(cur.text[:arrow], cur.line)
    sub.pos = cur.pos
    guard = _parse_expr(sub)
    sub.skip_ws()
    if not sub.eof():
        raise sub.error("unexpected text after guard expression")
    cur.pos = arrow
    return guard


# ------------------------------------------------------------------ validation

def _validate(program: LSystemProgram):
    predecessors = program.predecessor_symbols
    builtin = builtin_arities()
    clashes = set(program.curves) & set(builtin)
    if clashes:
        raise ParseError(f"curve names shadow builtins: {sorted(clashes)}", 1, 1)

    arity: dict[str, int] = {}

    def check_symbol(module: Module, line: int, where: str):
        sym = module.symbol
        declared = sym in predecessors
        terminal = sym in TURTLE_SYMBOLS
        if not declared and not terminal:
            raise ParseError(f"undeclared symbol {sym!r} in {where}", line, 1)
        n = len(module.args)
        if sym in arity:
            if arity[sym] != n:
                raise ParseError(
                    f"symbol {sym!r} used with {n} argument(s) but previously "
                    f"with {arity[sym]}", line, 1)
        else:
            if terminal and not declared and n not in TURTLE_ARITIES[sym]:
                raise ParseError(
                    f"turtle command {sym!r} does not accept {n} argument(s)",
                    line, 1)
            arity[sym] = n

    # predecessor arities come first so axiom/successor uses must agree
    for prod in program.productions:
        sym, n = prod.symbol, len(prod.params)
        if sym in arity and arity[sym] != n:
            raise ParseError(
                f"production for {sym!r} declares {n} parameter(s) but the "
                f"symbol is used with {arity[sym]}", prod.line, 1)
        arity.setdefault(sym, n)

    known_calls = set(program.curves) | set(builtin)
    for module in program.axiom:
        check_symbol(module, 1, "axiom")
        for arg in module.args:
            bad = free_names(arg) - set(program.constants)
            if bad:
                raise ParseError(f"axiom argument references {sorted(bad)}; "
                                 f"only constants are allowed", 1, 1)
            _check_calls(arg, known_calls, builtin, program, 1)

    for prod in program.productions:
        scope = set(prod.params) | set(program.constants)
        if prod.guard is not None:
            bad = free_names(prod.guard) - scope
            if bad:
                raise ParseError(
                    f"guard of {prod.symbol!r} references {sorted(bad)}; only "
                    f"formal parameters and constants are allowed", prod.line, 1)
            calls = called_names(prod.guard)
            banned = calls & (set(program.curves) | set(RANDOM_FUNCS))
            if banned:
                raise ParseError(
                    f"guard of {prod.symbol!r} calls {sorted(banned)}; guards "
                    f"must be deterministic in parameters and constants",
                    prod.line, 1)
            _check_calls(prod.guard, known_calls, builtin, program, prod.line)
        for module in prod.successor:
            check_symbol(module, prod.line, f"successor of {prod.symbol!r}")
            for arg in module.args:
                bad = free_names(arg) - scope
                if bad:
                    raise ParseError(
                        f"successor of {prod.symbol!r} references {sorted(bad)}",
                        prod.line, 1)
                _check_calls(arg, known_calls, builtin, program, prod.line)

    _check_balance(program.axiom, 1)
    for prod in program.productions:
        _check_balance(prod.successor, prod.line)


def _check_calls(expr, known_calls, builtin, program, line):
    for fn in called_names(expr):
        if fn not in known_calls:
            raise ParseError(f"unknown function {fn!r}", line, 1)
        if fn in program.curves:
            continue
    # arity of builtin calls
    def walk(node):
        if isinstance(node, Call):
            if node.func in builtin and len(node.args) not in builtin[node.func]:
                raise ParseError(
                    f"{node.func}() takes {builtin[node.func]} argument(s), "
                    f"got {len(node.args)}", line, 1)
            if node.func in program.curves and len(node.args) != 1:
                raise ParseError(f"curve {node.func!r} takes 1 argument", line, 1)
            for a in node.args:
                walk(a)
        elif isinstance(node, Binary):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Unary):
            walk(node.operand)
    walk(expr)


def _check_balance(modules, line):
    depth = 0
    for m in modules:
        if m.symbol == "[":
            depth += 1
        elif m.symbol == "]":
            depth -= 1
            if depth < 0:
                raise ParseError("']' without matching '['", line, 1)
    if depth != 0:
        raise ParseError("unbalanced brackets", line, 1)
