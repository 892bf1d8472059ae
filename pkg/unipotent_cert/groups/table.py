"""Finite groups given by explicit multiplication tables."""

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidGroupTable

MAX_ORDER = 64


class FiniteGroupTable:
    """Group on 0..n-1 with ``table[a, b] = a * b`` (row is the left factor).

    The constructor verifies identity, inverses, the Latin property and
    associativity on all n^3 triples.
    """

    def __init__(
        self, table: Sequence[Sequence[int]] | np.ndarray, name: str | None = None
    ):
        T = np.asarray(table, dtype=np.int64)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
            raise InvalidGroupTable(
                f"table must be a nonempty square array, got shape {T.shape}"
            )
        n = T.shape[0]
        if n > MAX_ORDER:
            raise InvalidGroupTable(
                f"order {n} exceeds the supported maximum {MAX_ORDER}"
            )
        if T.min() < 0 or T.max() >= n:
            raise InvalidGroupTable(f"entries must be indices in 0..{n - 1}")
        idx = np.arange(n)
        candidates = [
            e
            for e in range(n)
            if np.array_equal(T[e], idx) and np.array_equal(T[:, e], idx)
        ]
        if not candidates:
            raise InvalidGroupTable("no two-sided identity")
        sorted_rows = np.sort(T, axis=1)
        sorted_cols = np.sort(T, axis=0)
        if not (sorted_rows == idx).all() or not (sorted_cols == idx[:, None]).all():
            raise InvalidGroupTable("table is not a Latin square (missing inverses)")
        left = T[T]  # (a*b)*c
        right = T[idx[:, None, None], T[None, :, :]]  # a*(b*c)
        if not np.array_equal(left, right):
            a, b, c = np.argwhere(left != right)[0]
            raise InvalidGroupTable(f"associativity fails at ({a}, {b}, {c})")
        self.table = T
        self.order = n
        self.identity = candidates[0]
        self.name = name or f"group of order {n}"
        self._rows: list[list[int]] = T.tolist()
        self._inverse = [int(row.index(self.identity)) for row in self._rows]

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inverse(self, a: int) -> int:
        return self._inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse(a), -k
        out = self.identity
        for _ in range(k):
            out = self._rows[out][a]
        return out

    def commutator(self, a: int, b: int) -> int:
        """a^-1 b^-1 a b."""
        return self.mul(self.mul(self.inverse(a), self.inverse(b)), self.mul(a, b))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self._rows[x][a]
            k += 1
        return k

    def closure(self, generators: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by the given elements."""
        gens = sorted(set(generators))
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            row = self._rows[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def relabel(self, perm: Sequence[int]) -> "FiniteGroupTable":
        """Isomorphic copy where element a is renamed perm[a]."""
        pi = np.asarray(perm, dtype=np.int64)
        if sorted(pi.tolist()) != list(range(self.order)):
            raise ValueError("relabeling must be a permutation of the elements")
        inv = np.argsort(pi)
        return FiniteGroupTable(pi[self.table[inv][:, inv]], self.name)

    def to_dict(self) -> dict:
        return {"order": self.order, "table": self._rows}

    def __repr__(self) -> str:
        return f"FiniteGroupTable({self.name})"


@dataclass(frozen=True)
class Subgroup:
    """Element index subset, verified closed under the table and inverses."""

    group: FiniteGroupTable
    elements: frozenset[int]

    def __post_init__(self) -> None:
        G = self.group
        if G.identity not in self.elements:
            raise InvalidGroupTable("subgroup misses the identity")
        for a in self.elements:
            if G.inverse(a) not in self.elements:
                raise InvalidGroupTable(f"subgroup misses the inverse of {a}")
            for b in self.elements:
                if G.mul(a, b) not in self.elements:
                    raise InvalidGroupTable(f"subgroup not closed: {a} * {b}")

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted(self) -> list[int]:
        return sorted(self.elements)


# Bundled corpus.


def cyclic(n: int) -> FiniteGroupTable:
    idx = np.arange(n)
    return FiniteGroupTable((idx[:, None] + idx[None, :]) % n, f"Z/{n}")


def elementary_abelian(p: int, k: int) -> FiniteGroupTable:
    """(Z/p)^k with base-p digit vectors as labels."""
    n = p**k
    digits = np.array(
        [[(a // p**i) % p for i in range(k)] for a in range(n)], dtype=np.int64
    )
    weights = p ** np.arange(k)
    table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    return FiniteGroupTable(table, f"(Z/{p})^{k}")


def direct_product(G: FiniteGroupTable, H: FiniteGroupTable) -> FiniteGroupTable:
    """G x H with (g, h) labelled g * |H| + h."""
    m = H.order
    table = np.empty((G.order * m, G.order * m), dtype=np.int64)
    for (g1, h1), (g2, h2) in itertools.product(
        itertools.product(range(G.order), range(m)), repeat=2
    ):
        table[g1 * m + h1, g2 * m + h2] = G.mul(g1, g2) * m + H.mul(h1, h2)
    return FiniteGroupTable(table, f"{G.name} x {H.name}")


def dihedral(n: int) -> FiniteGroupTable:
    """Symmetries of the n-gon; r^a s^b is labelled a + n*b."""
    size = 2 * n
    table = np.empty((size, size), dtype=np.int64)
    for x, y in itertools.product(range(size), repeat=2):
        a, b = x % n, x // n
        c, d = y % n, y // n
        table[x, y] = (a + (-1) ** b * c) % n + n * ((b + d) % 2)
    return FiniteGroupTable(table, f"D{n}")


# Unit products among 1, i, j, k as (sign, unit).
_QUATERNION_UNITS = [
    [(0, 0), (0, 1), (0, 2), (0, 3)],
    [(0, 1), (1, 0), (0, 3), (1, 2)],
    [(0, 2), (1, 3), (1, 0), (0, 1)],
    [(0, 3), (0, 2), (1, 1), (1, 0)],
]


def quaternion() -> FiniteGroupTable:
    """Q8; sign * unit is labelled 4*sign + unit (1, i, j, k)."""
    table = np.empty((8, 8), dtype=np.int64)
    for x, y in itertools.product(range(8), repeat=2):
        sx, ux = divmod(x, 4)
        sy, uy = divmod(y, 4)
        s, u = _QUATERNION_UNITS[ux][uy]
        table[x, y] = 4 * ((sx + sy + s) % 2) + u
    return FiniteGroupTable(table, "Q8")


def bundled_corpus() -> list[tuple[FiniteGroupTable, int]]:
    """p-groups of order <= 16 with the rank of G / Phi(G)."""
    return [
        (cyclic(2), 1),
        (cyclic(4), 1),
        (cyclic(8), 1),
        (cyclic(16), 1),
        (cyclic(3), 1),
        (cyclic(9), 1),
        (elementary_abelian(2, 2), 2),
        (elementary_abelian(2, 3), 3),
        (elementary_abelian(2, 4), 4),
        (elementary_abelian(3, 2), 2),
        (dihedral(4), 2),
        (quaternion(), 2),
        (direct_product(cyclic(2), cyclic(4)), 2),
        (direct_product(cyclic(4), cyclic(4)), 2),
        (direct_product(cyclic(2), dihedral(4)), 3),
    ]
