"""Expression language for the command line: parsing and typed evaluation.

Grammar (LL, standard precedence; ``#`` binds loosest and associates left):

    expr    := tensor
    tensor  := sum ( '#' sum )*
    sum     := product ( ('+' | '-') product )*
    product := unary ( '*' unary )*
    unary   := '-' unary | power
    power   := atom ( '^' INT )*
    atom    := NUMBER | NAME | NAME '(' expr (',' expr)* ')'
             | '(' expr ')' | '[' expr (';' expr)* ']'
    NUMBER  := INT ( '/' INT )?

Evaluation is directed by a declared handle: scalars and base variables
embed upward (unit-multiples into series, length-1 tensors into tensor
carriers), ``#`` concatenates tensor factors bilinearly, and operator
names resolve against the handle: ``P`` to the prepend operator on tensor
carriers and to the lift on series carriers, ``D`` to the free derivation
on tensor carriers and the shift on series carriers.  The descending maps
``eps``, ``mu``, and ``beta`` change the carrier, so they are only allowed
at the top level of an expression.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from . import algebra, distlaw, freerb, hurwitz
from .algebra import (Derivation, Handle, HurwitzHandle, Poly,
                      PolyHandle, RBOperator, ShaHandle)
from .coeffs import Ring, RingError, Scalar
from .freerb import Tensor
from .hurwitz import Series


class ParseError(ValueError):
    """Syntax or type diagnosis carrying a source span."""

    def __init__(self, msg: str, src: str, pos: int):
        self.msg = msg
        self.src = src
        self.pos = pos
        line = src.count("\n", 0, pos) + 1
        col = pos - (src.rfind("\n", 0, pos) + 1) + 1
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {msg}")


# --------------------------------------------------------------------------
# Tokens and AST


_PUNCT = ("#", "+", "-", "*", "^", "(", ")", "[", "]", ";", ",", "/")


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "name" | punctuation | "end"
    text: str
    pos: int


def _tokenize(src: str) -> list[Token]:
    out = []
    i = 0
    n = len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            out.append(Token("int", src[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            out.append(Token("name", src[i:j], i))
            i = j
            continue
        if c in _PUNCT:
            out.append(Token(c, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", src, i)
    out.append(Token("end", "", n))
    return out


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class Var:
    name: str
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    lhs: object
    rhs: object
    pos: int


@dataclass(frozen=True)
class Neg:
    arg: object
    pos: int


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: int


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple
    pos: int


@dataclass(frozen=True)
class SeriesLit:
    items: tuple
    pos: int


_FUNCTIONS = ("P", "D", "eta", "eps", "mu", "beta", "partial")


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.k = 0

    def peek(self) -> Token:
        return self.tokens[self.k]

    def next(self) -> Token:
        t = self.tokens[self.k]
        self.k += 1
        return t

    def expect(self, kind: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            shown = t.text or "end of input"
            raise ParseError(f"expected {kind!r}, found {shown!r}", self.src, t.pos)
        return self.next()

    def parse(self):
        node = self.tensor()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", self.src, t.pos)
        return node

    def tensor(self):
        node = self.sum()
        while self.peek().kind == "#":
            t = self.next()
            node = BinOp("#", node, self.sum(), t.pos)
        return node

    def sum(self):
        node = self.product()
        while self.peek().kind in ("+", "-"):
            t = self.next()
            node = BinOp(t.kind, node, self.product(), t.pos)
        return node

    def product(self):
        node = self.unary()
        while self.peek().kind == "*":
            t = self.next()
            node = BinOp("*", node, self.unary(), t.pos)
        return node

    def unary(self):
        t = self.peek()
        if t.kind == "-":
            self.next()
            return Neg(self.unary(), t.pos)
        return self.power()

    def power(self):
        node = self.atom()
        while self.peek().kind == "^":
            t = self.next()
            e = self.expect("int")
            node = Pow(node, int(e.text), t.pos)
        return node

    def atom(self):
        t = self.peek()
        if t.kind == "int":
            self.next()
            num = int(t.text)
            if self.peek().kind == "/":
                self.next()
                den = self.expect("int")
                return Num(Fraction(num, int(den.text)), t.pos)
            return Num(Fraction(num), t.pos)
        if t.kind == "name":
            self.next()
            if self.peek().kind == "(":
                if t.text not in _FUNCTIONS:
                    raise ParseError(f"unknown function {t.text!r}", self.src, t.pos)
                self.next()
                args = [self.tensor()]
                while self.peek().kind == ",":
                    self.next()
                    args.append(self.tensor())
                self.expect(")")
                return Call(t.text, tuple(args), t.pos)
            return Var(t.text, t.pos)
        if t.kind == "(":
            self.next()
            node = self.tensor()
            self.expect(")")
            return node
        if t.kind == "[":
            self.next()
            items = [self.tensor()]
            while self.peek().kind == ";":
                self.next()
                items.append(self.tensor())
            self.expect("]")
            return SeriesLit(tuple(items), t.pos)
        shown = t.text or "end of input"
        raise ParseError(f"expected an expression, found {shown!r}", self.src, t.pos)


def parse(src: str):
    """Parse one expression; raises ParseError with line/column on failure."""
    return _Parser(src).parse()


# --------------------------------------------------------------------------
# Handles from text


def parse_handle(src: str, ring: Ring, weight: Scalar, precision: int) -> Handle:
    """Parse "poly(x,y)", "sha(H)", or "hur(H[,N])", nested up to the limit."""
    tokens = _tokenize(src)
    k = 0

    def next_tok() -> Token:
        nonlocal k
        t = tokens[k]
        k += 1
        return t

    def expect(kind: str) -> Token:
        t = next_tok()
        if t.kind != kind:
            shown = t.text or "end of input"
            raise ParseError(f"expected {kind!r}, found {shown!r}", src, t.pos)
        return t

    def handle() -> Handle:
        t = expect("name")
        if t.text == "poly":
            expect("(")
            names = [expect("name").text]
            while tokens[k].kind == ",":
                next_tok()
                names.append(expect("name").text)
            expect(")")
            return algebra.poly_handle(names, ring, weight)
        if t.text == "sha":
            expect("(")
            inner = handle()
            expect(")")
            return ShaHandle(inner)
        if t.text == "hur":
            expect("(")
            inner = handle()
            n = precision
            if tokens[k].kind == ",":
                next_tok()
                n = int(expect("int").text)
            expect(")")
            return HurwitzHandle(inner, n)
        raise ParseError(f"unknown carrier {t.text!r}", src, t.pos)

    out = handle()
    t = tokens[k]
    if t.kind != "end":
        raise ParseError(f"unexpected {t.text!r}", src, t.pos)
    return out


# --------------------------------------------------------------------------
# Evaluation


class EvalError(ValueError):
    """Type or domain failure during evaluation, with the offending span."""

    def __init__(self, msg: str, pos: int):
        self.msg = msg
        self.pos = pos
        super().__init__(msg)


@dataclass(frozen=True)
class EvalContext:
    """Operator resolution for a declared handle."""

    ring: Ring
    weight: Scalar
    precision: int
    rb_choice: str = "auto"  # auto | integration | scaled

    def base_variables(self, handle: Handle) -> tuple[str, ...]:
        while not isinstance(handle, PolyHandle):
            handle = handle.inner
        return handle.variables

    def rb_for(self, handle: Handle) -> RBOperator:
        if isinstance(handle, ShaHandle):
            return freerb.free_rb_operator(handle)
        if isinstance(handle, HurwitzHandle):
            return hurwitz.lifted_rb(handle, self.rb_for(handle.inner))
        if self.rb_choice == "integration" or (
                self.rb_choice == "auto" and handle.ring.is_rational
                and handle.weight.is_zero):
            return algebra.integration_on(handle, handle.variables[0])
        return algebra.scaled_identity_on(handle)

    def derivation_for(self, handle: Handle) -> Derivation:
        if isinstance(handle, ShaHandle):
            return freerb.free_derivation(handle, self.derivation_for(handle.inner))
        if isinstance(handle, HurwitzHandle):
            return hurwitz.shift_derivation(handle)
        if handle.weight.is_zero:
            return algebra.derivative_on(handle, handle.variables[0])
        return algebra.difference_quotient_on(handle, handle.variables[0])


def _embed(x, expected: Handle, pos: int):
    """Coerce an element into an enclosing carrier, one layer at a time."""
    if x.handle == expected:
        return x
    if isinstance(expected, ShaHandle):
        return freerb.eta(_embed(x, expected.inner, pos), expected)
    if isinstance(expected, HurwitzHandle):
        return Series.constant(_embed(x, expected.inner, pos), expected)
    raise EvalError(f"cannot embed a {x.handle} element into {expected}", pos)


def _tensor_concat(u: Tensor, v: Tensor) -> Tensor:
    out = Tensor.zero(u.handle)
    for t1, c1 in u.terms.items():
        for t2, c2 in v.terms.items():
            out = out + Tensor(u.handle, {t1 + t2: c1 * c2})
    return out


def evaluate(node, handle: Handle, ctx: EvalContext):
    """Evaluate a parsed expression against the declared handle.

    The result normally lives in the declared carrier; a top-level ``eps``,
    ``mu``, or ``beta`` descends to the appropriate target carrier.
    """
    if isinstance(node, Call) and node.fn in ("eps", "mu", "beta"):
        if len(node.args) != 1:
            raise EvalError(f"{node.fn} takes one argument", node.pos)
        arg = _eval_at(node.args[0], handle, ctx)
        if node.fn == "eps":
            if isinstance(handle, ShaHandle):
                return freerb.counit_eval(arg, ctx.rb_for(handle.inner))
            if isinstance(handle, HurwitzHandle):
                return hurwitz.counit(arg)
            raise EvalError("eps needs a tensor or series carrier", node.pos)
        if node.fn == "mu":
            if not (isinstance(handle, ShaHandle) and isinstance(handle.inner, ShaHandle)):
                raise EvalError("mu needs a doubly-tensored carrier", node.pos)
            return freerb.mu(arg)
        if not (isinstance(handle, ShaHandle) and isinstance(handle.inner, HurwitzHandle)):
            raise EvalError("beta needs tensors over a series carrier", node.pos)
        return distlaw.beta(arg)
    return _eval_at(node, handle, ctx)


def _eval_at(node, expected: Handle, ctx: EvalContext):
    if isinstance(node, Num):
        try:
            c = ctx.ring.from_fraction(node.value)
        except RingError as e:
            raise EvalError(str(e), node.pos) from None
        return algebra.unit(expected).scale(c)
    if isinstance(node, Var):
        names = ctx.base_variables(expected)
        if node.name not in names:
            raise EvalError(f"unknown variable {node.name!r} (have {', '.join(names)})",
                            node.pos)
        base = expected
        while not isinstance(base, PolyHandle):
            base = base.inner
        return _embed(Poly.variable(base, node.name), expected, node.pos)
    if isinstance(node, Neg):
        x = _eval_at(node.arg, expected, ctx)
        return x.scale(-ctx.ring.one())
    if isinstance(node, Pow):
        x = _eval_at(node.base, expected, ctx)
        out = algebra.unit(expected)
        for _ in range(node.exponent):
            out = out * x
        return out
    if isinstance(node, BinOp):
        if node.op == "#":
            if not isinstance(expected, ShaHandle):
                raise EvalError(f"'#' builds tensors; the carrier {expected} has none",
                                node.pos)
            u = _eval_at(node.lhs, expected, ctx)
            v = _eval_at(node.rhs, expected, ctx)
            return _tensor_concat(u, v)
        x = _eval_at(node.lhs, expected, ctx)
        y = _eval_at(node.rhs, expected, ctx)
        if node.op == "+":
            return x + y
        if node.op == "-":
            return x - y
        return x * y
    if isinstance(node, SeriesLit):
        if isinstance(expected, ShaHandle):
            # a literal inside a tensor carrier names a factor one level down
            return freerb.eta(_eval_at(node, expected.inner, ctx), expected)
        if not isinstance(expected, HurwitzHandle):
            raise EvalError(f"series literal needs a series carrier, not {expected}",
                            node.pos)
        values = tuple(_eval_at(item, expected.inner, ctx) for item in node.items)
        return Series(expected, values)
    if isinstance(node, Call):
        if node.fn in ("eps", "mu", "beta"):
            raise EvalError(f"{node.fn} is only allowed at the top level", node.pos)
        if len(node.args) != 1:
            raise EvalError(f"{node.fn} takes one argument", node.pos)
        if node.fn == "eta":
            if not isinstance(expected, ShaHandle):
                raise EvalError(f"eta embeds into a tensor carrier, not {expected}",
                                node.pos)
            return freerb.eta(_eval_at(node.args[0], expected.inner, ctx), expected)
        if node.fn == "partial":
            if not isinstance(expected, HurwitzHandle):
                raise EvalError(f"partial acts on series carriers, not {expected}",
                                node.pos)
            arg = _eval_at(node.args[0], expected, ctx)
            if arg.precision < 1:
                raise EvalError("cannot shift a precision-0 series", node.pos)
            return hurwitz.shift(arg)
        arg = _eval_at(node.args[0], expected, ctx)
        if node.fn == "P":
            return ctx.rb_for(expected)(arg)
        if node.fn == "D":
            return ctx.derivation_for(expected)(arg)
    raise EvalError(f"cannot evaluate node {node!r}", getattr(node, "pos", 0))


def eval_text(src: str, handle: Handle, ctx: EvalContext):
    """Parse and evaluate in one step; every failure carries a source span."""
    try:
        return evaluate(parse(src), handle, ctx)
    except EvalError as e:
        line = src.count("\n", 0, e.pos) + 1
        col = e.pos - (src.rfind("\n", 0, e.pos) + 1) + 1
        raise EvalError(f"line {line}, col {col}: {e.msg}", e.pos) from None
