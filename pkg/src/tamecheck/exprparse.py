"""Lexer, polynomial parser and problem-file reader.

Grammar (usual precedence, ``^`` binds tightest and takes an integer literal)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/" INT) unary?)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := IDENT | INT | "(" expr ")"

Division is only accepted with an integer literal on the right, so rational
coefficients such as ``3/2*x`` can be written without opening the door to
rational functions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ParseError, ValidationError
from .poly import QQ, Polynomial, to_qq

DEFAULT_MAX_EXPONENT = 64

OPTION_KEYS = {
    "max_power": int,
    "max_weight": int,
    "budget_pairs": int,
    "budget_degree": int,
    "max_arcs": int,
    "max_base_points": int,
}


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "int", "op", "lparen", "rparen"
    text: str
    line: int
    column: int

    def __repr__(self) -> str:
        return f"{self.kind}:{self.text}"


_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z_][A-Za-z_0-9]*)|(\d+)|([-+*^/])|(\()|(\)))")


def tokenize(text: str, line: int = 1) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"illegal character {text[pos]!r}", line, pos + 1)
        col = m.start(m.lastindex) + 1
        if m.group(1):
            tokens.append(Token("ident", m.group(1), line, col))
        elif m.group(2):
            tokens.append(Token("int", m.group(2), line, col))
        elif m.group(3):
            tokens.append(Token("op", m.group(3), line, col))
        elif m.group(4):
            tokens.append(Token("lparen", "(", line, col))
        else:
            tokens.append(Token("rparen", ")", line, col))
        pos = m.end()
    return tokens


@dataclass(frozen=True)
class VarContext:
    spatial_vars: tuple[str, ...]
    param: str = "t"

    def __post_init__(self):
        object.__setattr__(self, "spatial_vars", tuple(self.spatial_vars))
        names = list(self.spatial_vars)
        if not names:
            raise ValidationError("at least one spatial variable is required")
        if any(not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v) for v in names + [self.param]):
            raise ValidationError("variable names must be identifiers")
        if len(set(names)) != len(names):
            raise ValidationError("spatial variable names must be distinct")
        if self.param in names:
            raise ValidationError("the parameter must differ from the spatial variables")

    @property
    def n(self) -> int:
        return len(self.spatial_vars)

    @property
    def gens(self) -> tuple[str, ...]:
        """Full variable list: spatial variables followed by the parameter."""
        return self.spatial_vars + (self.param,)


class _Parser:
    def __init__(self, tokens: Sequence[Token], gens: tuple[str, ...], max_exponent: int):
        self.tokens = list(tokens)
        self.i = 0
        self.gens = gens
        self.max_exponent = max_exponent

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        if tok is None and self.tokens:
            last = self.tokens[-1]
            raise ParseError(msg, last.line, last.column + len(last.text))
        if tok is None:
            raise ParseError(msg)
        raise ParseError(msg, tok.line, tok.column)

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of expression")
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            self.error("empty expression")
        p = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected token {self.peek().text!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while (tok := self.peek()) is not None and tok.kind == "op" and tok.text in "+-":
            self.take()
            q = self.term()
            p = p + q if tok.text == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while (tok := self.peek()) is not None and tok.kind == "op" and tok.text in "*/":
            self.take()
            if tok.text == "*":
                p = p * self.unary()
            else:
                d = self.peek()
                if d is None or d.kind != "int":
                    self.error("division is only allowed by an integer literal", d or tok)
                self.take()
                if int(d.text) == 0:
                    self.error("division by zero", d)
                nxt = self.peek()
                if nxt is not None and nxt.kind == "op" and nxt.text == "^":
                    self.error("division is only allowed by an integer literal", nxt)
                p = p * QQ(1, int(d.text))
        return p

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text in "+-":
            self.take()
            p = self.unary()
            return -p if tok.text == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text == "^":
            self.take()
            e = self.peek()
            if e is not None and e.kind == "op" and e.text == "-":
                self.error("negative exponents are not allowed", e)
            if e is None or e.kind != "int":
                self.error("exponent must be an integer literal", e or tok)
            self.take()
            k = int(e.text)
            if k > self.max_exponent:
                self.error(f"exponent {k} exceeds the cap {self.max_exponent}", e)
            return base ** k
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "ident":
            if tok.text not in self.gens:
                self.error(f"unknown variable {tok.text!r}", tok)
            return Polynomial.var(self.gens, tok.text)
        if tok.kind == "int":
            return Polynomial.constant(self.gens, int(tok.text))
        if tok.kind == "lparen":
            p = self.expr()
            close = self.peek()
            if close is None or close.kind != "rparen":
                self.error("missing ')'", close)
            self.take()
            return p
        self.error(f"unexpected token {tok.text!r}", tok)


def parse_polynomial(tokens: Sequence[Token] | str, ctx: VarContext | Sequence[str],
                     max_exponent: int = DEFAULT_MAX_EXPONENT) -> Polynomial:
    """Expand a token list (or raw text) into a polynomial over ``ctx``'s variables."""
    gens = ctx.gens if isinstance(ctx, VarContext) else tuple(ctx)
    if isinstance(tokens, str):
        tokens = tokenize(tokens)
    return _Parser(tokens, gens, max_exponent).parse()


def parse_in_gens(text: str, gens: Iterable[str]) -> Polynomial:
    return parse_polynomial(tokenize(text), tuple(gens))


def parse_rational(text: str):
    text = text.strip()
    if not re.fullmatch(r"[-+]?\d+(/\d+)?", text):
        raise ValueError(f"not a rational literal: {text!r}")
    return to_qq(text)


@dataclass
class DeformationProblem:
    vars: VarContext
    F: Polynomial
    witness_points: list[tuple] = field(default_factory=list)
    options: dict[str, int] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if self.F.gens != self.vars.gens:
            self.F = self.F.embed(self.vars.gens)
        validate_deformation(self.F, self.vars)
        pts = []
        for p in self.witness_points:
            p = tuple(to_qq(a) for a in p)
            if len(p) != self.vars.n:
                raise ValidationError(f"witness point {p} must have {self.vars.n} coordinates")
            pts.append(p)
        self.witness_points = pts

    @property
    def n(self) -> int:
        return self.vars.n

    def to_text(self) -> str:
        lines = [
            f"vars = {' '.join(self.vars.spatial_vars)}",
            f"param = {self.vars.param}",
            f"F = {self.F}",
        ]
        for p in self.witness_points:
            lines.append("witness = " + " ".join(str(a) for a in p))
        for k in sorted(self.options):
            lines.append(f"{k} = {self.options[k]}")
        return "\n".join(lines) + "\n"


def validate_deformation(F: Polynomial, ctx: VarContext) -> None:
    at_origin = F.subs({v: 0 for v in ctx.spatial_vars})
    if not at_origin.is_zero():
        raise ValidationError(f"F(0,t) ≠ 0: F(0,{ctx.param}) = {at_origin}")
    f0 = F.subs({ctx.param: 0})
    if f0.is_zero():
        raise ValidationError("F(x,0) is identically zero; the deformed germ must be non-constant")


def parse_problem_file(text: str, name: str = "") -> DeformationProblem:
    """Read the line-oriented ``key = value`` problem format."""
    entries: dict[str, tuple[str, int]] = {}
    witnesses: list[tuple[str, int]] = []
    options: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, 1)
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "witness":
            witnesses.append((value, lineno))
        elif key in ("vars", "param", "F"):
            if key in entries:
                raise ParseError(f"duplicate section {key!r}", lineno, 1)
            entries[key] = (value, lineno)
        elif key in OPTION_KEYS:
            try:
                v = int(value)
            except ValueError:
                raise ParseError(f"option {key} expects an integer", lineno, raw.index("=") + 2) from None
            if v <= 0:
                raise ParseError(f"option {key} must be positive", lineno, 1)
            options[key] = v
        else:
            raise ParseError(f"unknown section {key!r}", lineno, 1)
    for required in ("vars", "F"):
        if required not in entries:
            raise ParseError(f"missing section {required!r}")
    names = entries["vars"][0].split()
    param = entries["param"][0] if "param" in entries else "t"
    try:
        ctx = VarContext(tuple(names), param)
    except ValidationError as exc:
        raise ParseError(str(exc), entries["vars"][1], 1) from None
    ftext, fline = entries["F"]
    F = parse_polynomial(tokenize(ftext, fline), ctx)
    points = []
    for value, lineno in witnesses:
        try:
            pt = tuple(parse_rational(a) for a in value.split())
        except ValueError as exc:
            raise ParseError(str(exc), lineno, 1) from None
        if len(pt) != ctx.n:
            raise ParseError(f"witness needs {ctx.n} coordinates", lineno, 1)
        points.append(pt)
    return DeformationProblem(ctx, F, points, options, name)
