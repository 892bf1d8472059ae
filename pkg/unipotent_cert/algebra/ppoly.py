"""p-polynomials P = sum_i P_i(T_i) over k and additive changes of variables.

A term (i, j, c) is the monomial c T_i^(p^j); height 0 is a linear monomial.
The kernel of P : G_a^r -> G_a is the group the rest of the package studies.
"""

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Literal, TypeVar

from ..errors import ArityMismatch, EmptyPolynomial, FieldMismatch
from ..fields.finite import FiniteField
from ..fields.laurent import LaurentSeries
from ..fields.ratfn import RatFn

# An additive expression sum a T_v^(p^e), keyed by (variable, height).
Expression = Mapping[tuple[int, int], RatFn]
V = TypeVar("V", RatFn, LaurentSeries)


def _accumulate(
    out: dict[tuple[int, int], RatFn], key: tuple[int, int], c: RatFn
) -> None:
    c = out[key] + c if key in out else c
    if c.is_zero():
        out.pop(key, None)
    else:
        out[key] = c


class PPolynomial:
    """p-polynomial in r named variables; zero coefficients are dropped."""

    __slots__ = ("field", "variables", "terms")

    def __init__(
        self,
        field: FiniteField,
        variables: Sequence[str],
        terms: Mapping[tuple[int, int], RatFn] | Iterable[tuple[int, int, RatFn]],
    ):
        self.field = field
        self.variables: tuple[str, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        items = terms.items() if isinstance(terms, Mapping) else (
            ((i, j), c) for i, j, c in terms
        )
        clean: dict[tuple[int, int], RatFn] = {}
        for (i, j), c in items:
            if not 0 <= i < len(self.variables):
                raise ArityMismatch(f"variable index {i} outside 0..{self.r - 1}")
            if j < 0:
                raise ValueError(f"negative height {j}")
            if c.field is not field:
                raise FieldMismatch(f"coefficient {c} is not over {field!r}")
            _accumulate(clean, (i, j), c)
        self.terms: dict[tuple[int, int], RatFn] = dict(sorted(clean.items()))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def r(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def heights(self, i: int) -> list[int]:
        return [j for (v, j) in self.terms if v == i]

    def leading(self, i: int) -> tuple[int, RatFn] | None:
        """(height, coefficient) of the leading term of P_i, if P_i != 0."""
        hs = self.heights(i)
        if not hs:
            return None
        m = max(hs)
        return m, self.terms[(i, m)]

    def occurring(self) -> list[int]:
        return sorted({i for (i, _) in self.terms})

    def absent(self) -> list[int]:
        used = set(self.occurring())
        return [i for i in range(self.r) if i not in used]

    def linear_only(self) -> list[int]:
        """Variables that occur, and only at height 0."""
        return [i for i in self.occurring() if self.heights(i) == [0]]

    def degree_measure(self) -> int:
        """sum_i p^(leading height of P_i); strictly drops under reductions."""
        return sum(self.p ** max(self.heights(i)) for i in self.occurring())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PPolynomial):
            return NotImplemented
        return (
            self.field is other.field
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.variables, tuple(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        order = sorted(self.terms.items(), key=lambda kv: (-kv[0][1], kv[0][0]))
        for (i, j), c in order:
            mono = self.variables[i] if j == 0 else f"{self.variables[i]}^{self.p**j}"
            text = str(c)
            if c.is_one():
                parts.append(mono)
            elif "+" in text or "/" in text:
                parts.append(f"({text})*{mono}")
            else:
                parts.append(f"{text}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"PPolynomial({self})"


@dataclass(frozen=True)
class FormEntry:
    """One summand c T_var^(p^height) of a diagonal form."""

    var: int
    coeff: RatFn
    height: int


@dataclass(frozen=True)
class DiagonalForm:
    """A principal part sum_i c_i T_i^(p^(m_i))."""

    field: FiniteField
    entries: tuple[FormEntry, ...]

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def coeffs(self) -> tuple[RatFn, ...]:
        return tuple(e.coeff for e in self.entries)

    @property
    def heights(self) -> tuple[int, ...]:
        return tuple(e.height for e in self.entries)

    def common_height(self) -> int | None:
        hs = set(self.heights)
        return hs.pop() if len(hs) == 1 else None

    def restrict(self, keep: Iterable[int]) -> "DiagonalForm":
        """Sub-form on the given entry positions."""
        return DiagonalForm(self.field, tuple(self.entries[i] for i in keep))

    def evaluate(self, w: Sequence[RatFn]) -> RatFn:
        if len(w) != self.r:
            raise ArityMismatch(f"form in {self.r} variables, got {len(w)} values")
        total = RatFn.zero(self.field)
        for e, x in zip(self.entries, w):
            if not x.is_zero():
                total = total + e.coeff * x.frobenius(e.height)
        return total

    def __str__(self) -> str:
        return " + ".join(
            f"({e.coeff})*T{e.var}^{self.field.p**e.height}" for e in self.entries
        )


def evaluate(P: PPolynomial, alpha: Sequence[V]) -> V:
    """sum c_ij alpha_i^(p^j), exact for RatFn, truncated for series."""
    if len(alpha) != P.r:
        raise ArityMismatch(f"P has {P.r} variables, got {len(alpha)} values")
    acc: V | None = None
    for (i, j), c in P.terms.items():
        x = alpha[i]
        if isinstance(x, LaurentSeries):
            term = x.frobenius(j).scale(c)
        else:
            term = c * x.frobenius(j)
        acc = term if acc is None else acc + term
    if acc is None:
        first = alpha[0] if alpha else None
        if isinstance(first, LaurentSeries):
            zero = LaurentSeries.zero(P.field, first.precision, first.anchor)
            return zero  # type: ignore[return-value]
        return RatFn.zero(P.field)  # type: ignore[return-value]
    return acc


def is_separable(P: PPolynomial) -> bool:
    """True iff some monomial has degree 1."""
    return any(j == 0 for (_, j) in P.terms)


def principal_part(P: PPolynomial) -> DiagonalForm:
    """The leading term of each P_i, in variable order."""
    if P.is_zero():
        raise EmptyPolynomial("principal part of the zero p-polynomial")
    entries = []
    for i in P.occurring():
        lead = P.leading(i)
        assert lead is not None
        entries.append(FormEntry(var=i, coeff=lead[1], height=lead[0]))
    return DiagonalForm(P.field, tuple(entries))


StepKind = Literal["transvection", "scale", "swap"]


@dataclass(frozen=True)
class ElementaryStep:
    """An invertible additive change of one or two variables.

    transvection: T_target <- T_target + coeff * T_source^(p^height)
    scale:        T_target <- coeff * T_target
    swap:         T_target <-> T_source
    """

    kind: StepKind
    target: int
    source: int | None = None
    coeff: RatFn | None = None
    height: int = 0

    def __post_init__(self) -> None:
        if self.kind == "transvection":
            if self.source is None or self.coeff is None or self.source == self.target:
                raise ValueError(
                    "a transvection needs a distinct source and a coefficient"
                )
        elif self.kind == "scale":
            if self.coeff is None or self.coeff.is_zero():
                raise ValueError("a scaling needs a nonzero coefficient")
        elif self.kind == "swap":
            if self.source is None:
                raise ValueError("a swap needs a source")
        else:
            raise ValueError(f"unknown step kind {self.kind!r}")

    def inverse(self) -> "ElementaryStep":
        if self.kind == "transvection":
            assert self.coeff is not None
            return ElementaryStep(
                "transvection", self.target, self.source, -self.coeff, self.height
            )
        if self.kind == "scale":
            assert self.coeff is not None
            return ElementaryStep("scale", self.target, coeff=self.coeff.inverse())
        return self

    def images(self, r: int, one: RatFn) -> list[dict[tuple[int, int], RatFn]]:
        out: list[dict[tuple[int, int], RatFn]] = [{(i, 0): one} for i in range(r)]
        if max(self.target, self.source or 0) >= r:
            raise ArityMismatch(f"step touches a variable outside 0..{r - 1}")
        if self.kind == "transvection":
            assert self.source is not None and self.coeff is not None
            out[self.target] = {(self.target, 0): one}
            _accumulate(out[self.target], (self.source, self.height), self.coeff)
        elif self.kind == "scale":
            assert self.coeff is not None
            out[self.target] = {(self.target, 0): self.coeff}
        else:
            assert self.source is not None
            out[self.target] = {(self.source, 0): one}
            out[self.source] = {(self.target, 0): one}
        return out


@dataclass(frozen=True)
class Substitution:
    """Additive change of variables T_i <- sigma_i(T).

    ``steps`` is the recorded chain of elementary steps when the substitution
    is known to be invertible (sigma = step_1 o step_2 o ...), else None.
    """

    field: FiniteField
    images: tuple[dict[tuple[int, int], RatFn], ...]
    steps: tuple[ElementaryStep, ...] | None = None

    @property
    def r(self) -> int:
        return len(self.images)

    @property
    def invertible(self) -> bool:
        return self.steps is not None

    @classmethod
    def identity(cls, fld: FiniteField, r: int) -> "Substitution":
        one = RatFn.one(fld)
        return cls(fld, tuple({(i, 0): one} for i in range(r)), ())

    @classmethod
    def from_steps(
        cls, fld: FiniteField, r: int, steps: Iterable[ElementaryStep]
    ) -> "Substitution":
        result = cls.identity(fld, r)
        one = RatFn.one(fld)
        for step in steps:
            result = result.compose(cls(fld, tuple(step.images(r, one)), (step,)))
        return result

    def compose(self, other: "Substitution") -> "Substitution":
        """self o other: first substitute with self, then with other."""
        if self.r != other.r:
            raise ArityMismatch(
                f"composing substitutions in {self.r} and {other.r} variables"
            )
        images = []
        for expr in self.images:
            out: dict[tuple[int, int], RatFn] = {}
            for (v, e), a in expr.items():
                for (w, f), b in other.images[v].items():
                    _accumulate(out, (w, e + f), a * b.frobenius(e))
            images.append(out)
        steps = (
            self.steps + other.steps
            if self.steps is not None and other.steps is not None
            else None
        )
        return Substitution(self.field, tuple(images), steps)

    def inverse(self) -> "Substitution":
        if self.steps is None:
            raise ValueError("substitution has no recorded inverse chain")
        return Substitution.from_steps(
            self.field, self.r, [s.inverse() for s in reversed(self.steps)]
        )

    def apply(self, alpha: Sequence[V]) -> list[V]:
        """sigma(alpha)_i = sum a alpha_v^(p^e)."""
        if len(alpha) != self.r:
            raise ArityMismatch(f"substitution in {self.r} variables, got {len(alpha)}")
        out: list[V] = []
        for i, expr in enumerate(self.images):
            acc: V | None = None
            for (v, e), a in expr.items():
                x = alpha[v]
                if isinstance(x, LaurentSeries):
                    term = x.frobenius(e).scale(a)
                else:
                    term = a * x.frobenius(e)
                acc = term if acc is None else acc + term
            if acc is None:
                x = alpha[i]
                acc = x - x
            out.append(acc)
        return out

    def describe(self, names: Sequence[str]) -> str:
        lines = []
        p = self.field.p
        for i, expr in enumerate(self.images):
            if expr == {(i, 0): RatFn.one(self.field)}:
                continue
            rhs = " + ".join(
                (names[v] if e == 0 else f"{names[v]}^{p**e}")
                if a.is_one()
                else f"({a})*" + (names[v] if e == 0 else f"{names[v]}^{p**e}")
                for (v, e), a in sorted(expr.items())
            )
            lines.append(f"{names[i]} <- {rhs or '0'}")
        return "; ".join(lines) or "identity"


def substitute(P: PPolynomial, sigma: Substitution) -> PPolynomial:
    """Q with Q(alpha) = P(sigma(alpha)); cancellations are dropped."""
    if sigma.r != P.r:
        raise ArityMismatch(f"P has {P.r} variables, substitution has {sigma.r}")
    if sigma.field is not P.field:
        raise FieldMismatch("substitution and polynomial over different fields")
    out: dict[tuple[int, int], RatFn] = {}
    for (i, j), c in P.terms.items():
        for (v, e), a in sigma.images[i].items():
            _accumulate(out, (v, e + j), c * a.frobenius(j))
    return PPolynomial(P.field, P.variables, out)
