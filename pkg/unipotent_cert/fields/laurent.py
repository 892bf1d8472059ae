"""Truncated Laurent series over k = F_q(s) with explicit t-adic windows.

A series stores coefficients for exponents ``anchor .. end - 1``. Every
coefficient below ``anchor`` is exactly zero and every coefficient at or
beyond ``end`` is unknown, i.e. the series is known modulo t^end.
"""

from collections.abc import Mapping
from typing import Literal

from ..errors import DivisionByZero, PrecisionExceeded
from .finite import FiniteField, check_same_field
from .ratfn import RatFn

DEFAULT_PRECISION = 16


class LaurentSeries:
    """Immutable truncated element of L = k((t))."""

    __slots__ = ("anchor", "coeffs", "field")

    def __init__(self, anchor: int, coeffs: tuple[RatFn, ...], field: FiniteField):
        if not coeffs:
            raise ValueError("a series needs a window of at least one coefficient")
        self.anchor = anchor
        self.coeffs = tuple(coeffs)
        self.field = field

    @classmethod
    def _window(
        cls, anchor: int, end: int, terms: Mapping[int, RatFn], field: FiniteField
    ) -> "LaurentSeries":
        if anchor >= end:
            anchor = end - 1
        zero = RatFn.zero(field)
        return cls(
            anchor, tuple(terms.get(j, zero) for j in range(anchor, end)), field
        )

    @classmethod
    def from_terms(
        cls,
        terms: Mapping[int, RatFn],
        field: FiniteField,
        precision: int = DEFAULT_PRECISION,
        anchor: int | None = None,
    ) -> "LaurentSeries":
        """Series with the given terms, known modulo t^(anchor + precision).

        The anchor defaults to min(0, lowest exponent); terms at or beyond
        the window end are truncated away.
        """
        if precision < 1:
            raise ValueError("precision must be positive")
        nonzero = {j: c for j, c in terms.items() if not c.is_zero()}
        if anchor is None:
            anchor = min([0, *nonzero])
        elif nonzero and min(nonzero) < anchor:
            raise PrecisionExceeded(
                f"term t^{min(nonzero)} lies below the anchor {anchor}"
            )
        return cls._window(anchor, anchor + precision, nonzero, field)

    @classmethod
    def zero(
        cls, field: FiniteField, precision: int = DEFAULT_PRECISION, anchor: int = 0
    ) -> "LaurentSeries":
        return cls.from_terms({}, field, precision, anchor)

    @classmethod
    def constant(
        cls, c: RatFn, precision: int = DEFAULT_PRECISION, anchor: int = 0
    ) -> "LaurentSeries":
        return cls.from_terms({0: c}, c.field, precision, min(anchor, 0))

    @classmethod
    def monomial(
        cls, c: RatFn, exponent: int, precision: int = DEFAULT_PRECISION
    ) -> "LaurentSeries":
        return cls.from_terms({exponent: c}, c.field, precision)

    @property
    def end(self) -> int:
        return self.anchor + len(self.coeffs)

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def terms(self) -> dict[int, RatFn]:
        """Nonzero coefficients inside the window."""
        return {
            self.anchor + i: c for i, c in enumerate(self.coeffs) if not c.is_zero()
        }

    def valuation(self) -> int | None:
        """t-adic valuation, None when the series is zero within its window."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return self.anchor + i
        return None

    def _lower(self) -> int:
        v = self.valuation()
        return self.end if v is None else v

    def is_zero(self) -> bool:
        return self.valuation() is None

    def coeff_at(self, j: int) -> RatFn:
        if j >= self.end:
            raise PrecisionExceeded(
                f"coefficient of t^{j} requested; series known modulo t^{self.end}"
            )
        if j < self.anchor:
            return RatFn.zero(self.field)
        return self.coeffs[j - self.anchor]

    def truncate(self, end: int) -> "LaurentSeries":
        """Forget everything from t^end on (end may not exceed the window)."""
        if end > self.end:
            raise PrecisionExceeded(f"cannot extend a series known modulo t^{self.end}")
        return LaurentSeries._window(self.anchor, end, self.terms(), self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.field is other.field
            and self.end == other.end
            and self.terms() == other.terms()
        )

    def __hash__(self) -> int:
        return hash((self.end, frozenset(self.terms().items())))

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equal modulo t^e, e the smaller of the two window ends."""
        return (self - other).is_zero()

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        check_same_field(self.field, other.field)
        end = min(self.end, other.end)
        anchor = min(self.anchor, other.anchor)
        terms = dict(self.terms())
        for j, c in other.terms().items():
            terms[j] = terms[j] + c if j in terms else c
        return LaurentSeries._window(
            anchor, end, {j: c for j, c in terms.items() if j < end}, self.field
        )

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.anchor, tuple(-c for c in self.coeffs), self.field)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def scale(self, c: RatFn) -> "LaurentSeries":
        """Multiply by an exact constant of k."""
        check_same_field(self.field, c.field)
        return LaurentSeries(self.anchor, tuple(c * x for x in self.coeffs), self.field)

    def __mul__(self, other: "LaurentSeries | RatFn") -> "LaurentSeries":
        if isinstance(other, RatFn):
            return self.scale(other)
        check_same_field(self.field, other.field)
        lo_a, lo_b = self._lower(), other._lower()
        end = min(self.end + lo_b, other.end + lo_a)
        anchor = lo_a + lo_b
        ta, tb = self.terms(), other.terms()
        out: dict[int, RatFn] = {}
        for i, x in ta.items():
            for j, y in tb.items():
                k = i + j
                if k >= end:
                    continue
                prod = x * y
                out[k] = out[k] + prod if k in out else prod
        return LaurentSeries._window(anchor, end, out, self.field)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        v = self.valuation()
        if v is None:
            raise DivisionByZero(
                f"series is zero modulo t^{self.end}; its inverse is undefined"
            )
        unit = [self.coeff_at(v + i) for i in range(self.end - v)]
        b0 = unit[0].inverse()
        out = [b0]
        for n in range(1, len(unit)):
            acc = RatFn.zero(self.field)
            for i in range(1, n + 1):
                if not unit[i].is_zero() and not out[n - i].is_zero():
                    acc = acc + unit[i] * out[n - i]
            out.append(-(b0 * acc))
        return LaurentSeries(-v, tuple(out), self.field)

    def __truediv__(self, other: "LaurentSeries | RatFn") -> "LaurentSeries":
        if isinstance(other, RatFn):
            return self.scale(other.inverse())
        return self * other.inverse()

    def __pow__(self, n: int) -> "LaurentSeries":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return LaurentSeries.constant(RatFn.one(self.field), self.precision)
        result: LaurentSeries | None = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        assert result is not None
        return result

    def frobenius(self, m: int) -> "LaurentSeries":
        """a^(p^m), exact in characteristic p: exponents and window scale by p^m."""
        if m == 0:
            return self
        step = self.field.p**m
        zero = RatFn.zero(self.field)
        out = [zero] * (len(self.coeffs) * step)
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                out[i * step] = c.frobenius(m)
        return LaurentSeries(self.anchor * step, tuple(out), self.field)

    def __str__(self) -> str:
        parts = []
        for j, c in sorted(self.terms().items()):
            mono = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
            text = str(c)
            if not mono:
                parts.append(text)
            elif c.is_one():
                parts.append(mono)
            elif "+" in text or "/" in text:
                parts.append(f"({text})*{mono}")
            else:
                parts.append(f"{text}*{mono}")
        parts.append(f"O(t^{self.end})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentSeries({self})"


LaurentOp = Literal["add", "mul", "inv", "valuation", "coeff_at"]


def laurent_arith(
    a: LaurentSeries,
    b: LaurentSeries | None,
    op: LaurentOp,
    j: int | None = None,
) -> LaurentSeries | int | RatFn | None:
    """Dispatch over the series operations; unary ones ignore ``b``."""
    if op == "add":
        assert b is not None
        return a + b
    if op == "mul":
        assert b is not None
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "valuation":
        return a.valuation()
    if op == "coeff_at":
        if j is None:
            raise ValueError("coeff_at needs an exponent")
        return a.coeff_at(j)
    raise ValueError(f"unknown operation {op!r}")
