"""The imperfect base field k = F_q(s)."""

from typing import Literal

from ..errors import DivisionByZero
from .finite import FiniteField, check_same_field
from .polys import PolyS


class RatFn:
    """Element num/den of F_q(s) in canonical form.

    The denominator is monic and coprime to the numerator, so two equal
    values always share the same representation.
    """

    __slots__ = ("num", "den", "field")

    def __init__(self, num: PolyS, den: PolyS | None = None):
        field = num.field
        if den is None:
            den = PolyS.constant(1, field)
        check_same_field(field, den.field)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            num, den = num, PolyS.constant(1, field)
        elif not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num, den = num // g, den // g
            lead = den.lead
            if lead != 1:
                inv = field.inv(lead)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den
        self.field = field

    @classmethod
    def _canonical(cls, num: PolyS, den: PolyS) -> "RatFn":
        """Wrap a pair already known to be canonical."""
        obj = cls.__new__(cls)
        obj.num, obj.den, obj.field = num, den, num.field
        return obj

    @classmethod
    def zero(cls, field: FiniteField) -> "RatFn":
        return cls._canonical(PolyS.zero(field), PolyS.constant(1, field))

    @classmethod
    def one(cls, field: FiniteField) -> "RatFn":
        return cls.constant(1, field)

    @classmethod
    def constant(cls, code: int, field: FiniteField) -> "RatFn":
        return cls._canonical(PolyS.constant(code, field), PolyS.constant(1, field))

    @classmethod
    def from_int(cls, n: int, field: FiniteField) -> "RatFn":
        return cls.constant(field.from_int(n), field)

    @classmethod
    def s(cls, field: FiniteField) -> "RatFn":
        return cls._canonical(PolyS.monomial(1, 1, field), PolyS.constant(1, field))

    @classmethod
    def from_poly(cls, poly: PolyS) -> "RatFn":
        return cls._canonical(poly, PolyS.constant(1, poly.field))

    @classmethod
    def parse(cls, text: str, field: FiniteField) -> "RatFn":
        """Parse a literal such as ``s^3/(s^2+1)``."""
        from .literal import parse_ratfn

        return parse_ratfn(text, field)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: "RatFn") -> "RatFn":
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den.is_one() and other.den.is_one():
            return RatFn._canonical(self.num + other.num, self.den)
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFn":
        return RatFn._canonical(-self.num, self.den)

    def __sub__(self, other: "RatFn") -> "RatFn":
        return self + (-other)

    def __mul__(self, other: "RatFn") -> "RatFn":
        check_same_field(self.field, other.field)
        if self.num.is_zero() or other.num.is_zero():
            return RatFn.zero(self.field)
        if self.den.is_one() and other.den.is_one():
            return RatFn._canonical(self.num * other.num, self.den)
        # Cross-cancel so the product is canonical without a final gcd.
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = (self.num // g1) * (other.num // g2)
        den = (self.den // g2) * (other.den // g1)
        return RatFn._canonical(num, den)

    def inverse(self) -> "RatFn":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero in F_q(s)")
        return RatFn(self.den, self.num)

    def __truediv__(self, other: "RatFn") -> "RatFn":
        return self * other.inverse()

    def __pow__(self, n: int) -> "RatFn":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFn._canonical(self.num**n, self.den**n)

    def frobenius(self, m: int) -> "RatFn":
        """a^(p^m): coprime monic pairs stay coprime monic under Frobenius."""
        if m == 0:
            return self
        return RatFn._canonical(self.num.frobenius(m), self.den.frobenius(m))

    def p_root(self, m: int) -> "RatFn | None":
        """The p^m-th root when self lies in k^(p^m), otherwise None."""
        if m == 0:
            return self
        num = self.num.p_root(m)
        if num is None:
            return None
        den = self.den.p_root(m)
        if den is None:
            return None
        return RatFn._canonical(num, den)

    def ord_s(self) -> int | None:
        """s-adic valuation; None for zero."""
        n = self.num.ord_s()
        if n is None:
            return None
        d = self.den.ord_s()
        return n - (d or 0)

    def __str__(self) -> str:
        num = str(self.num)
        if self.den.is_one():
            return num
        if len(self.num.coeffs) > 1 and sum(1 for c in self.num.coeffs if c) > 1:
            num = f"({num})"
        den = str(self.den)
        if sum(1 for c in self.den.coeffs if c) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RatFn({self})"


ArithOp = Literal["add", "sub", "mul", "div"]


def ratfn_arith(a: RatFn, b: RatFn, op: ArithOp) -> RatFn:
    """Exact field arithmetic; ``div`` by zero raises DivisionByZero."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def frobenius(a: RatFn, m: int) -> RatFn:
    if m < 0:
        raise ValueError("Frobenius exponent must be non-negative")
    return a.frobenius(m)


def p_root(a: RatFn, m: int) -> RatFn | None:
    if m < 0:
        raise ValueError("root exponent must be non-negative")
    return a.p_root(m)


def pm_decompose(c: RatFn, m: int) -> list[RatFn]:
    """Coordinates u_0 .. u_{p^m - 1} in k^(p^m) with c = sum_j u_j s^j.

    Writing c = N/D = N D^(p^m - 1) / D^(p^m), the numerator splits by
    exponent residue mod p^m into polynomials in s^(p^m), and dividing each
    by D^(p^m) keeps it inside k^(p^m).
    """
    if m < 1:
        raise ValueError("pm_decompose needs m >= 1")
    field = c.field
    step = field.p**m
    if c.is_zero():
        return [RatFn.zero(field)] * step
    spread = c.num * c.den ** (step - 1)
    den_power = c.den.frobenius(m)
    return [RatFn(part, den_power) for part in spread.residue_parts(m)]
