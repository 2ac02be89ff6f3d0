"""Expression language for holomorphic functions of one complex variable.

Parsing, evaluation, symbolic differentiation and canonical printing of a
small closed language:

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ['^' ['-'] digits]
    atom   := number | 'i' | 'z' | name '(' expr ')' | '(' expr ')'

Functions: exp, log, sin, cos, sinh, cosh, tanh, sqrt, and sconj, where
``sconj(e)`` denotes the Schwarz conjugate z -> conj(e(conj(z))).  sconj is
involutive and distributes over arithmetic nodes; the ``sconj`` constructor
applies both rules eagerly, so stored trees only carry sconj wrappers around
function applications.  log and sqrt use principal branches.  Exponents are
integer literals; write exp(w*log(z)) for anything else.

Canonical printing is deterministic and structurally round-trips: parsing
the printed form rebuilds an identical tree, so re-evaluation is bit-exact.
Expression trees are immutable and all operations here are pure, so they
are safe to share across threads.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass
from typing import Callable, Union

__all__ = [
    "Add",
    "Call",
    "Const",
    "Div",
    "EvalError",
    "Expr",
    "Mul",
    "Neg",
    "ParseError",
    "Pow",
    "Sconj",
    "Sub",
    "Var",
    "compile_fn",
    "differentiate",
    "evaluate",
    "format_expr",
    "parse",
    "sconj",
    "substitute",
]


class ParseError(Exception):
    """Malformed input; carries the byte offset and what was expected there."""

    def __init__(self, offset: int, expected: str):
        super().__init__(f"at offset {offset}: expected {expected}")
        self.offset = offset
        self.expected = expected


class EvalError(Exception):
    """Evaluation fault (division by zero, log of zero, overflow)."""

    def __init__(self, message: str, node: "Expr | None" = None):
        self.node = node
        if node is not None:
            message = f"{message} in '{format_expr(node)}'"
        super().__init__(message)


@dataclass(frozen=True)
class Const:
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


@dataclass(frozen=True)
class Sconj:
    arg: "Expr"


Expr = Union[Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call, Sconj]

_FUNCTIONS: dict[str, Callable[[complex], complex]] = {
    "exp": cmath.exp,
    "log": cmath.log,
    "sin": cmath.sin,
    "cos": cmath.cos,
    "sinh": cmath.sinh,
    "cosh": cmath.cosh,
    "tanh": cmath.tanh,
    "sqrt": cmath.sqrt,
}


def sconj(e: Expr) -> Expr:
    """Schwarz conjugate of an expression: z -> conj(e(conj(z))).

    Applies the involution sconj(sconj(e)) = e and distributes over
    arithmetic nodes, so the wrapper survives only on function calls.
    """
    if isinstance(e, Sconj):
        return e.arg
    if isinstance(e, Const):
        return Const(e.value.conjugate())
    if isinstance(e, Var):
        return e
    if isinstance(e, Neg):
        return Neg(sconj(e.arg))
    if isinstance(e, Add):
        return Add(sconj(e.left), sconj(e.right))
    if isinstance(e, Sub):
        return Sub(sconj(e.left), sconj(e.right))
    if isinstance(e, Mul):
        return Mul(sconj(e.left), sconj(e.right))
    if isinstance(e, Div):
        return Div(sconj(e.left), sconj(e.right))
    if isinstance(e, Pow):
        return Pow(sconj(e.base), e.exponent)
    return Sconj(e)


# ---------------------------------------------------------------------------
# parsing

_NUMBER = re.compile(r"\d+(?:\.\d+)?(?:[eE][+-]?\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_EXPONENT = re.compile(r"-?\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def _peek(self) -> str | None:
        self._ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def _expect(self, ch: str):
        if self._peek() != ch:
            raise ParseError(self.pos, f"'{ch}'")
        self.pos += 1

    def expr(self) -> Expr:
        e = self.term()
        while True:
            ch = self._peek()
            if ch == "+":
                self.pos += 1
                e = Add(e, self.term())
            elif ch == "-":
                self.pos += 1
                e = Sub(e, self.term())
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                e = Mul(e, self.factor())
            elif ch == "/":
                self.pos += 1
                e = Div(e, self.factor())
            else:
                return e

    def factor(self) -> Expr:
        if self._peek() == "-":
            self.pos += 1
            e = self.factor()
            # fold signed literals so printed constants re-parse structurally
            if isinstance(e, Const):
                return Const(-e.value)
            return Neg(e)
        return self.power()

    def power(self) -> Expr:
        e = self.atom()
        if self._peek() == "^":
            self.pos += 1
            self._ws()
            m = _EXPONENT.match(self.text, self.pos)
            if m is None:
                raise ParseError(self.pos, "integer exponent")
            self.pos = m.end()
            return Pow(e, int(m.group()))
        return e

    def atom(self) -> Expr:
        ch = self._peek()
        if ch is None:
            raise ParseError(self.pos, "operand")
        if ch == "(":
            self.pos += 1
            e = self.expr()
            self._expect(")")
            return e
        if ch.isdigit():
            m = _NUMBER.match(self.text, self.pos)
            self.pos = m.end()
            return Const(complex(float(m.group())))
        m = _NAME.match(self.text, self.pos)
        if m is None:
            raise ParseError(self.pos, "operand")
        name = m.group()
        start = self.pos
        self.pos = m.end()
        if name == "z":
            return Var()
        if name == "i":
            return Const(1j)
        if name == "sconj" or name in _FUNCTIONS:
            self._expect("(")
            e = self.expr()
            self._expect(")")
            return sconj(e) if name == "sconj" else Call(name, e)
        raise ParseError(start, "known function or variable")


def parse(text: str) -> Expr:
    """Parse an expression string, raising ParseError with the fault offset."""
    p = _Parser(text)
    e = p.expr()
    p._ws()
    if p.pos != len(text):
        raise ParseError(p.pos, "end of input")
    return e


# ---------------------------------------------------------------------------
# evaluation

def evaluate(e: Expr, z: complex) -> complex:
    """Evaluate at a point with principal branches; sconj(e)(z) = conj(e(conj z))."""
    return _eval(e, complex(z))


def _eval(e: Expr, z: complex) -> complex:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return z
    if isinstance(e, Neg):
        return -_eval(e.arg, z)
    if isinstance(e, Add):
        return _eval(e.left, z) + _eval(e.right, z)
    if isinstance(e, Sub):
        return _eval(e.left, z) - _eval(e.right, z)
    if isinstance(e, Mul):
        return _eval(e.left, z) * _eval(e.right, z)
    if isinstance(e, Div):
        den = _eval(e.right, z)
        if den == 0:
            raise EvalError("division by zero", e)
        return _eval(e.left, z) / den
    if isinstance(e, Pow):
        base = _eval(e.base, z)
        try:
            return base ** e.exponent
        except ZeroDivisionError:
            raise EvalError("zero base with negative exponent", e) from None
        except OverflowError:
            raise EvalError("overflow", e) from None
    if isinstance(e, Call):
        arg = _eval(e.arg, z)
        if e.func == "log" and arg == 0:
            raise EvalError("log of zero", e)
        try:
            return _FUNCTIONS[e.func](arg)
        except (ValueError, OverflowError) as exc:
            raise EvalError(str(exc), e) from None
    if isinstance(e, Sconj):
        return _eval(e.arg, z.conjugate()).conjugate()
    raise TypeError(f"not an Expr node: {e!r}")


def compile_fn(e: Expr) -> Callable[[complex], complex]:
    """Compile to a closure; same semantics as evaluate but without dispatch cost.

    Faults surface as the underlying ZeroDivisionError/ValueError rather than
    EvalError; hot loops that need diagnostics should fall back to evaluate.
    """
    if isinstance(e, Const):
        v = e.value
        return lambda z: v
    if isinstance(e, Var):
        return lambda z: z
    if isinstance(e, Neg):
        a = compile_fn(e.arg)
        return lambda z: -a(z)
    if isinstance(e, Add):
        l, r = compile_fn(e.left), compile_fn(e.right)
        return lambda z: l(z) + r(z)
    if isinstance(e, Sub):
        l, r = compile_fn(e.left), compile_fn(e.right)
        return lambda z: l(z) - r(z)
    if isinstance(e, Mul):
        l, r = compile_fn(e.left), compile_fn(e.right)
        return lambda z: l(z) * r(z)
    if isinstance(e, Div):
        l, r = compile_fn(e.left), compile_fn(e.right)
        return lambda z: l(z) / r(z)
    if isinstance(e, Pow):
        b, n = compile_fn(e.base), e.exponent
        return lambda z: b(z) ** n
    if isinstance(e, Call):
        fn, a = _FUNCTIONS[e.func], compile_fn(e.arg)
        return lambda z: fn(a(z))
    if isinstance(e, Sconj):
        a = compile_fn(e.arg)
        return lambda z: a(z.conjugate()).conjugate()
    raise TypeError(f"not an Expr node: {e!r}")


# ---------------------------------------------------------------------------
# differentiation

def _is_const(e: Expr, v: complex) -> bool:
    return isinstance(e, Const) and e.value == v


def _neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def _add(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return Add(a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return _neg(b)
    return Sub(a, b)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0) or _is_const(b, 0):
        return Const(0)
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    return Mul(a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0):
        return Const(0)
    if _is_const(b, 1):
        return a
    return Div(a, b)


def _pow(b: Expr, n: int) -> Expr:
    if n == 0:
        return Const(1)
    if n == 1:
        return b
    return Pow(b, n)


def differentiate(e: Expr) -> Expr:
    """Symbolic derivative; d/dz sconj(e) = sconj(differentiate(e))."""
    if isinstance(e, Const):
        return Const(0)
    if isinstance(e, Var):
        return Const(1)
    if isinstance(e, Neg):
        return _neg(differentiate(e.arg))
    if isinstance(e, Add):
        return _add(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Sub):
        return _sub(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Mul):
        a, b = e.left, e.right
        return _add(_mul(differentiate(a), b), _mul(a, differentiate(b)))
    if isinstance(e, Div):
        a, b = e.left, e.right
        num = _sub(_mul(differentiate(a), b), _mul(a, differentiate(b)))
        return _div(num, Pow(b, 2))
    if isinstance(e, Pow):
        if e.exponent == 0:
            return Const(0)
        inner = _mul(Const(e.exponent), _pow(e.base, e.exponent - 1))
        return _mul(inner, differentiate(e.base))
    if isinstance(e, Call):
        a = e.arg
        outer: Expr
        if e.func == "exp":
            outer = Call("exp", a)
        elif e.func == "log":
            outer = Div(Const(1), a)
        elif e.func == "sin":
            outer = Call("cos", a)
        elif e.func == "cos":
            outer = _neg(Call("sin", a))
        elif e.func == "sinh":
            outer = Call("cosh", a)
        elif e.func == "cosh":
            outer = Call("sinh", a)
        elif e.func == "tanh":
            outer = _sub(Const(1), Pow(Call("tanh", a), 2))
        elif e.func == "sqrt":
            outer = Div(Const(0.5), Call("sqrt", a))
        else:
            raise ValueError(f"unknown function {e.func!r}")
        return _mul(outer, differentiate(a))
    if isinstance(e, Sconj):
        return sconj(differentiate(e.arg))
    raise TypeError(f"not an Expr node: {e!r}")


# ---------------------------------------------------------------------------
# substitution

def substitute(e: Expr, w: Expr) -> Expr:
    """Replace the variable z by the expression w (composition e o w)."""
    if isinstance(e, Const):
        return e
    if isinstance(e, Var):
        return w
    if isinstance(e, Neg):
        return Neg(substitute(e.arg, w))
    if isinstance(e, Add):
        return Add(substitute(e.left, w), substitute(e.right, w))
    if isinstance(e, Sub):
        return Sub(substitute(e.left, w), substitute(e.right, w))
    if isinstance(e, Mul):
        return Mul(substitute(e.left, w), substitute(e.right, w))
    if isinstance(e, Div):
        return Div(substitute(e.left, w), substitute(e.right, w))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, w), e.exponent)
    if isinstance(e, Call):
        return Call(e.func, substitute(e.arg, w))
    if isinstance(e, Sconj):
        # conj(e(conj(w(z)))) = sconj(e o sconj(w))(z)
        return sconj(substitute(e.arg, sconj(w)))
    raise TypeError(f"not an Expr node: {e!r}")


# ---------------------------------------------------------------------------
# printing

_P_ADD, _P_MUL, _P_NEG, _P_POW, _P_ATOM = 1, 2, 3, 4, 5


def _fmt_real(x: float) -> str:
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _fmt_const(v: complex) -> tuple[str, int]:
    re_, im_ = v.real, v.imag
    if im_ == 0:
        s = _fmt_real(re_)
        return s, (_P_NEG if s.startswith("-") else _P_ATOM)
    if re_ == 0:
        if im_ == 1:
            return "i", _P_ATOM
        if im_ == -1:
            return "-i", _P_NEG
        s = _fmt_real(im_) + "*i"
        return s, (_P_NEG if s.startswith("-") else _P_MUL)
    ims = "i" if abs(im_) == 1 else _fmt_real(abs(im_)) + "*i"
    sign = "+" if im_ > 0 else "-"
    return f"({_fmt_real(re_)}{sign}{ims})", _P_ATOM


def _fmt(e: Expr) -> tuple[str, int]:
    if isinstance(e, Const):
        return _fmt_const(e.value)
    if isinstance(e, Var):
        return "z", _P_ATOM
    if isinstance(e, Neg):
        s, p = _fmt(e.arg)
        if p < _P_NEG:
            s = f"({s})"
        return f"-{s}", _P_NEG
    if isinstance(e, (Add, Sub)):
        op = "+" if isinstance(e, Add) else "-"
        ls, lp = _fmt(e.left)
        rs, rp = _fmt(e.right)
        if lp < _P_ADD:
            ls = f"({ls})"
        if rp <= _P_ADD:
            rs = f"({rs})"
        return f"{ls}{op}{rs}", _P_ADD
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        ls, lp = _fmt(e.left)
        rs, rp = _fmt(e.right)
        if lp < _P_MUL:
            ls = f"({ls})"
        if rp <= _P_MUL:
            rs = f"({rs})"
        return f"{ls}{op}{rs}", _P_MUL
    if isinstance(e, Pow):
        bs, bp = _fmt(e.base)
        if bp < _P_ATOM:
            bs = f"({bs})"
        return f"{bs}^{e.exponent}", _P_POW
    if isinstance(e, Call):
        return f"{e.func}({_fmt(e.arg)[0]})", _P_ATOM
    if isinstance(e, Sconj):
        return f"sconj({_fmt(e.arg)[0]})", _P_ATOM
    raise TypeError(f"not an Expr node: {e!r}")


def format_expr(e: Expr) -> str:
    """Canonical printing; parse(format_expr(e)) rebuilds an identical tree."""
    return _fmt(e)[0]
