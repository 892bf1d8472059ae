"""Finite fields F_q, q = p^e, with elements encoded as integers.

Arithmetic is backed by ``galois.GF``. An element of F_p is its residue in
range(p); for e > 1 an element is the residue polynomial sum d_i g^i modulo
the irreducible modulus, encoded as the integer sum d_i p^i, which is the
integer representation galois uses.
"""

from dataclasses import dataclass
from functools import lru_cache

import galois
import numpy as np

from ..errors import FieldMismatch, InvalidField


def is_prime(n: int) -> bool:
    return n >= 2 and bool(galois.is_prime(n))


def modulus_poly(modulus: list[int] | tuple[int, ...], p: int) -> galois.Poly:
    """The modulus (lowest coefficient first) as a polynomial over GF(p)."""
    return galois.Poly([c % p for c in modulus], field=galois.GF(p), order="asc")


def is_irreducible(modulus: list[int] | tuple[int, ...], p: int) -> bool:
    poly = modulus_poly(modulus, p)
    return poly.degree >= 1 and bool(poly.is_irreducible())


class FiniteField:
    """The field F_q, q = p^e; e > 1 requires an irreducible monic modulus."""

    MAX_ORDER = 1 << 16

    def __init__(self, p: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise InvalidField(f"characteristic {p} is not prime")
        self.p = p
        if modulus is None or len(modulus) <= 2:
            # Degree-1 moduli give the prime field itself.
            self.modulus: tuple[int, ...] | None = None
            self.e = 1
        else:
            mod = [c % p for c in modulus]
            if mod[-1] != 1:
                raise InvalidField("modulus must be monic (lowest coefficient first)")
            if not is_irreducible(mod, p):
                raise InvalidField(f"modulus {list(modulus)} is reducible over F_{p}")
            self.modulus = tuple(mod)
            self.e = len(mod) - 1
        self.q = p**self.e
        if self.q > self.MAX_ORDER:
            raise InvalidField(f"field order {self.q} exceeds {self.MAX_ORDER}")
        if self.e == 1:
            self.gf = galois.GF(p)
        else:
            self.gf = galois.GF(
                self.q, irreducible_poly=modulus_poly(self.modulus or (), p)
            )
        self._exp: list[int] = []
        self._log: list[int] = []
        if self.e > 1:
            self._build_log_tables()

    def _build_log_tables(self) -> None:
        alpha = self.gf.primitive_element
        powers = (alpha ** np.arange(self.q - 1)).view(np.ndarray).astype(np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        log[powers] = np.arange(self.q - 1)
        self._exp = powers.tolist()
        self._log = log.tolist()

    def _digits(self, code: int) -> list[int]:
        """Coefficients d_0, d_1, ... of the residue polynomial."""
        vector = self.gf(code).vector().view(np.ndarray)
        return [int(d) for d in vector[::-1]]

    # Arithmetic on integer codes.

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return int(self.gf(a) + self.gf(b))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return int(-self.gf(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inv(a), -n)
        if self.e == 1:
            return pow(a, n, self.p)
        if a == 0:
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frobenius(self, a: int, m: int = 1) -> int:
        """a^(p^m); the identity on F_p."""
        if self.e == 1 or a == 0:
            return a
        return self.power(a, self.p ** (m % self.e))

    def root(self, a: int, m: int = 1) -> int:
        """The unique p^m-th root (F_q is perfect)."""
        if self.e == 1 or a == 0:
            return a
        return self.power(a, self.p ** ((-m) % self.e))

    def from_int(self, n: int) -> int:
        return n % self.p

    def generator(self) -> int:
        """Code of the class of the modulus variable (`g` in literals)."""
        if self.e == 1:
            raise InvalidField("the prime field has no generator symbol")
        return self.p

    def format(self, a: int) -> str:
        """Literal for an element; multi-term values are parenthesised."""
        if self.e == 1:
            return str(a)
        parts = []
        for i, d in reversed(list(enumerate(self._digits(a)))):
            if d == 0:
                continue
            mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
            if not mono:
                parts.append(str(d))
            else:
                parts.append(mono if d == 1 else f"{d}*{mono}")
        if not parts:
            return "0"
        text = "+".join(parts)
        return f"({text})" if len(parts) > 1 else text

    def describe(self) -> dict:
        return {"p": self.p, "q": self.q, "modulus": list(self.modulus or [])}

    def __repr__(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={list(self.modulus or [])})"

    def __reduce__(self):  # keep the shared-instance identity across processes
        return (get_field, (self.p, self.modulus))


@lru_cache(maxsize=None)
def _shared_field(p: int, modulus: tuple[int, ...] | None) -> FiniteField:
    return FiniteField(p, modulus)


def get_field(
    p: int, modulus: list[int] | tuple[int, ...] | None = None
) -> FiniteField:
    """Shared instance per (p, modulus) so that fields compare by identity."""
    if not is_prime(p):
        raise InvalidField(f"characteristic {p} is not prime")
    if modulus is not None and len(modulus) > 2:
        return _shared_field(p, tuple(int(c) % p for c in modulus))
    return _shared_field(p, None)


def check_same_field(a: FiniteField, b: FiniteField) -> None:
    if a is not b:
        raise FieldMismatch(f"operands over {a!r} and {b!r}")


@dataclass(frozen=True)
class FqElem:
    """Element of F_q in canonical (reduced) form."""

    value: int
    field: FiniteField

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"code {self.value} is not reduced for {self.field!r}")

    def __add__(self, other: "FqElem") -> "FqElem":
        check_same_field(self.field, other.field)
        return FqElem(self.field.add(self.value, other.value), self.field)

    def __sub__(self, other: "FqElem") -> "FqElem":
        check_same_field(self.field, other.field)
        return FqElem(self.field.sub(self.value, other.value), self.field)

    def __mul__(self, other: "FqElem") -> "FqElem":
        check_same_field(self.field, other.field)
        return FqElem(self.field.mul(self.value, other.value), self.field)

    def __truediv__(self, other: "FqElem") -> "FqElem":
        check_same_field(self.field, other.field)
        return FqElem(
            self.field.mul(self.value, self.field.inv(other.value)), self.field
        )

    def __neg__(self) -> "FqElem":
        return FqElem(self.field.neg(self.value), self.field)

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return self.field.format(self.value)


def first_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree e over F_p."""
    if e < 2:
        return (0, 1)
    poly = galois.irreducible_poly(p, e, method="min")
    return tuple(int(c) for c in poly.coeffs[::-1])
