"""Polynomials in s over F_q."""

from collections.abc import Iterable
from functools import lru_cache

import galois

from ..errors import DivisionByZero
from .finite import FiniteField, check_same_field


def _to_galois(coeffs: tuple[int, ...], field: FiniteField) -> galois.Poly:
    return galois.Poly(list(coeffs), field=field.gf, order="asc")


def _from_galois(poly: galois.Poly) -> tuple[int, ...]:
    return tuple(int(c) for c in poly.coeffs[::-1])


# RatFn normalisation repeats the same small divisions many times.
@lru_cache(maxsize=1 << 14)
def _galois_divmod(
    a: tuple[int, ...], b: tuple[int, ...], field: FiniteField
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    quot, rem = divmod(_to_galois(a, field), _to_galois(b, field))
    return _from_galois(quot), _from_galois(rem)


@lru_cache(maxsize=1 << 14)
def _galois_gcd(
    a: tuple[int, ...], b: tuple[int, ...], field: FiniteField
) -> tuple[int, ...]:
    """Monic gcd of two nonzero polynomials."""
    return _from_galois(galois.gcd(_to_galois(a, field), _to_galois(b, field)))


class PolyS:
    """Immutable polynomial sum c_i s^i, coefficients as F_q codes.

    Trailing zeros are stripped, so equal polynomials have equal tuples.
    The zero polynomial has ``degree`` None.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable[int], field: FiniteField):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)
        self.field = field

    @classmethod
    def zero(cls, field: FiniteField) -> "PolyS":
        return cls((), field)

    @classmethod
    def constant(cls, code: int, field: FiniteField) -> "PolyS":
        return cls((code,), field)

    @classmethod
    def monomial(cls, code: int, exponent: int, field: FiniteField) -> "PolyS":
        return cls([0] * exponent + [code], field)

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def ord_s(self) -> int | None:
        """Lowest exponent with a nonzero coefficient (None for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyS):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.field.p, self.field.q))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "PolyS") -> "PolyS":
        check_same_field(self.field, other.field)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        f = self.field
        if f.e == 1:
            p = f.p
            out = [(x + y) % p for x, y in zip(a, b)]
        else:
            out = [f.add(x, y) for x, y in zip(a, b)]
        out.extend(a[len(b) :])
        return PolyS(out, f)

    def __neg__(self) -> "PolyS":
        f = self.field
        return PolyS([f.neg(c) for c in self.coeffs], f)

    def __sub__(self, other: "PolyS") -> "PolyS":
        return self + (-other)

    def scale(self, code: int) -> "PolyS":
        f = self.field
        if code == 0:
            return PolyS.zero(f)
        if code == 1:
            return self
        return PolyS([f.mul(c, code) for c in self.coeffs], f)

    def shift(self, k: int) -> "PolyS":
        """Multiply by s^k, k >= 0."""
        if not self.coeffs:
            return self
        return PolyS([0] * k + list(self.coeffs), self.field)

    def __mul__(self, other: "PolyS") -> "PolyS":
        check_same_field(self.field, other.field)
        a, b = self.coeffs, other.coeffs
        f = self.field
        if not a or not b:
            return PolyS.zero(f)
        if len(a) == 1:
            return other.scale(a[0])
        if len(b) == 1:
            return self.scale(b[0])
        if f.e == 1:
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            p = f.p
            return PolyS([c % p for c in out], f)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = f.add(out[i + j], f.mul(x, y))
        return PolyS(out, f)

    def __pow__(self, n: int) -> "PolyS":
        if n < 0:
            raise ValueError("negative exponent for a polynomial")
        result = PolyS.constant(1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "PolyS") -> tuple["PolyS", "PolyS"]:
        check_same_field(self.field, other.field)
        if not other.coeffs:
            raise DivisionByZero("polynomial division by zero")
        f = self.field
        if len(self.coeffs) < len(other.coeffs):
            return PolyS.zero(f), self
        if len(other.coeffs) == 1:
            return self.scale(f.inv(other.coeffs[0])), PolyS.zero(f)
        quot, rem = _galois_divmod(self.coeffs, other.coeffs, f)
        return PolyS(quot, f), PolyS(rem, f)

    def __floordiv__(self, other: "PolyS") -> "PolyS":
        return divmod(self, other)[0]

    def __mod__(self, other: "PolyS") -> "PolyS":
        return divmod(self, other)[1]

    def monic(self) -> "PolyS":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def gcd(self, other: "PolyS") -> "PolyS":
        """Monic greatest common divisor (zero only when both are zero)."""
        check_same_field(self.field, other.field)
        f = self.field
        if not other.coeffs:
            return self.monic()
        if not self.coeffs:
            return other.monic()
        if len(self.coeffs) == 1 or len(other.coeffs) == 1:
            return PolyS.constant(1, f)
        return PolyS(_galois_gcd(self.coeffs, other.coeffs, f), f).monic()

    def frobenius(self, m: int) -> "PolyS":
        """The p^m-th power, computed coefficient-wise in characteristic p."""
        if m == 0 or not self.coeffs:
            return self
        f = self.field
        step = f.p**m
        out = [0] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            out[i * step] = f.frobenius(c, m)
        return PolyS(out, f)

    def p_root(self, m: int) -> "PolyS | None":
        """The p^m-th root when every exponent is divisible by p^m."""
        if m == 0 or not self.coeffs:
            return self
        f = self.field
        step = f.p**m
        if any(c for i, c in enumerate(self.coeffs) if i % step):
            return None
        return PolyS([f.root(c, m) for c in self.coeffs[::step]], f)

    def residue_parts(self, m: int) -> list["PolyS"]:
        """Split into M_j with self = sum_j s^j M_j and M_j in F_q[s^(p^m)]."""
        step = self.field.p**m
        parts = []
        for j in range(step):
            out = [0] * len(self.coeffs)
            for i in range(j, len(self.coeffs), step):
                out[i - j] = self.coeffs[i]
            parts.append(PolyS(out, self.field))
        return parts

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        f = self.field
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("s" if i == 1 else f"s^{i}")
            text = f.format(c)
            if not mono:
                parts.append(text)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{text}*{mono}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"PolyS({self})"
