"""Parser for the literal grammar shared by every input surface.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | "s" | "t" | "g" | "(" expr ")"

``s`` is the transcendental of k = F_q(s), ``g`` the class of the modulus
variable of F_q (only when q > p) and ``t`` the Laurent variable (only in
target expressions). Whitespace is insignificant. Laurent expressions are
Laurent polynomials in t; a division must have a single-term divisor.
"""

import re

from ..errors import DivisionByZero, LiteralSyntaxError
from .finite import FiniteField
from .laurent import DEFAULT_PRECISION, LaurentSeries
from .ratfn import RatFn

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")

# A Laurent polynomial: exponent -> nonzero coefficient.
LaurentPoly = dict[int, RatFn]
Value = RatFn | LaurentPoly


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise LiteralSyntaxError(f"cannot tokenize {text[pos:]!r}")
        number, name, op = match.groups()
        if number is not None:
            tokens.append(("int", number))
        elif name is not None:
            tokens.append(("name", name))
        else:
            if op not in "+-*/^()":
                raise LiteralSyntaxError(f"unexpected character {op!r} in {text!r}")
            tokens.append(("op", op))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, field: FiniteField, allow_t: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.field = field
        self.allow_t = allow_t

    # Value algebra: RatFn until a t appears, then Laurent polynomials.

    def _lift(self, v: Value) -> LaurentPoly:
        if isinstance(v, RatFn):
            return {} if v.is_zero() else {0: v}
        return v

    def _add(self, a: Value, b: Value) -> Value:
        if isinstance(a, RatFn) and isinstance(b, RatFn):
            return a + b
        out = dict(self._lift(a))
        for j, c in self._lift(b).items():
            c = out[j] + c if j in out else c
            if c.is_zero():
                out.pop(j, None)
            else:
                out[j] = c
        return out

    def _neg(self, a: Value) -> Value:
        if isinstance(a, RatFn):
            return -a
        return {j: -c for j, c in a.items()}

    def _mul(self, a: Value, b: Value) -> Value:
        if isinstance(a, RatFn) and isinstance(b, RatFn):
            return a * b
        out: LaurentPoly = {}
        for i, x in self._lift(a).items():
            for j, y in self._lift(b).items():
                c = x * y
                c = out[i + j] + c if i + j in out else c
                if c.is_zero():
                    out.pop(i + j, None)
                else:
                    out[i + j] = c
        return out

    def _invert(self, b: Value) -> Value:
        if isinstance(b, RatFn):
            return b.inverse()
        if not b:
            raise DivisionByZero(f"division by zero in {self.text!r}")
        if len(b) != 1:
            raise LiteralSyntaxError(
                f"division by a multi-term series is not supported in {self.text!r}"
            )
        ((j, c),) = b.items()
        return {-j: c.inverse()}

    def _pow(self, a: Value, n: int) -> Value:
        if isinstance(a, RatFn):
            return a**n
        base = self._lift(self._invert(a) if n < 0 else a)
        n = abs(n)
        if len(base) == 1:
            ((j, c),) = base.items()
            return {n * j: c**n}
        result: Value = RatFn.one(self.field)
        square: Value = base
        while n:
            if n & 1:
                result = self._mul(result, square)
            n >>= 1
            if n:
                square = self._mul(square, square)
        return result

    # Recursive descent.

    def _peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> tuple[str, str]:
        tok = self._peek()
        if tok is None:
            raise LiteralSyntaxError(f"unexpected end of {self.text!r}")
        self.pos += 1
        return tok

    def _expect(self, op: str) -> None:
        tok = self._take()
        if tok != ("op", op):
            raise LiteralSyntaxError(
                f"expected {op!r}, got {tok[1]!r} in {self.text!r}"
            )

    def parse(self) -> Value:
        if not self.tokens:
            raise LiteralSyntaxError("empty literal")
        value = self._expr()
        rest = self._peek()
        if rest is not None:
            raise LiteralSyntaxError(f"trailing input {rest[1]!r} in {self.text!r}")
        return value

    def _expr(self) -> Value:
        value = self._term()
        while (tok := self._peek()) in (("op", "+"), ("op", "-")):
            self.pos += 1
            rhs = self._term()
            value = self._add(value, rhs if tok[1] == "+" else self._neg(rhs))
        return value

    def _term(self) -> Value:
        value = self._unary()
        while (tok := self._peek()) in (("op", "*"), ("op", "/")):
            self.pos += 1
            rhs = self._unary()
            value = self._mul(value, rhs if tok[1] == "*" else self._invert(rhs))
        return value

    def _unary(self) -> Value:
        if self._peek() == ("op", "-"):
            self.pos += 1
            return self._neg(self._unary())
        return self._power()

    def _power(self) -> Value:
        base = self._atom()
        if self._peek() == ("op", "^"):
            self.pos += 1
            sign = 1
            if self._peek() == ("op", "-"):
                self.pos += 1
                sign = -1
            kind, text = self._take()
            if kind != "int":
                raise LiteralSyntaxError(
                    f"exponent must be an integer in {self.text!r}"
                )
            return self._pow(base, sign * int(text))
        return base

    def _atom(self) -> Value:
        kind, text = self._take()
        if kind == "int":
            return RatFn.from_int(int(text), self.field)
        if kind == "name":
            if text == "s":
                return RatFn.s(self.field)
            if text == "g" and self.field.e > 1:
                return RatFn.constant(self.field.generator(), self.field)
            if text == "t" and self.allow_t:
                return {1: RatFn.one(self.field)}
            raise LiteralSyntaxError(f"unknown symbol {text!r} in {self.text!r}")
        if text == "(":
            value = self._expr()
            self._expect(")")
            return value
        raise LiteralSyntaxError(f"unexpected {text!r} in {self.text!r}")


def parse_ratfn(text: str, field: FiniteField) -> RatFn:
    """Parse an element of k = F_q(s)."""
    value = _Parser(text, field, allow_t=False).parse()
    assert isinstance(value, RatFn)
    return value


def parse_laurent(
    text: str,
    field: FiniteField,
    precision: int = DEFAULT_PRECISION,
    anchor: int | None = None,
) -> LaurentSeries:
    """Parse a Laurent polynomial in t over k as a truncated series."""
    value = _Parser(text, field, allow_t=True).parse()
    terms = {0: value} if isinstance(value, RatFn) else value
    return LaurentSeries.from_terms(terms, field, precision, anchor)
