"""Frattini subgroup and the elementary abelian quotient of a finite p-group.

For a constant p-group G the quotient G / Phi(G) is (Z/p)^s, and a nonzero
class of H^1 for the Artin-Schreier kernel x^p - x gives one for G.
"""

import logging
from dataclasses import replace

import galois

from ..algebra.ppoly import PPolynomial
from ..cohomology.h1 import ExclusionCertificate, exclude_target
from ..errors import NotPGroup, RankOutOfRange, TrivialGroup
from ..fields.finite import FiniteField
from ..fields.laurent import DEFAULT_PRECISION, LaurentSeries
from ..fields.ratfn import RatFn
from .table import FiniteGroupTable, Subgroup

logger = logging.getLogger(__name__)


def prime_of_order(G: FiniteGroupTable) -> int | None:
    """p with |G| = p^k, None for the trivial group."""
    n = G.order
    if n == 1:
        return None
    primes, _ = galois.factors(n)
    if len(primes) != 1:
        raise NotPGroup(f"order {G.order} is not a prime power")
    return int(primes[0])


def subgroup_lattice(G: FiniteGroupTable) -> set[frozenset[int]]:
    """All subgroups, as joins of cyclic subgroups."""
    cyclic = {G.closure([g]) for g in range(G.order)}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        H = frontier.pop()
        for C in cyclic:
            if C <= H:
                continue
            J = G.closure(H | C)
            if J not in found:
                found.add(J)
                frontier.append(J)
    return found


def maximal_subgroups(G: FiniteGroupTable) -> list[frozenset[int]]:
    whole = frozenset(range(G.order))
    proper = [H for H in subgroup_lattice(G) if H != whole]
    return [H for H in proper if not any(H < K for K in proper)]


def frattini_by_maximals(G: FiniteGroupTable) -> frozenset[int]:
    maximals = maximal_subgroups(G)
    if not maximals:
        return frozenset({G.identity})
    return frozenset.intersection(*maximals)


def frattini_by_generators(G: FiniteGroupTable, p: int) -> frozenset[int]:
    """<g^p, [a, b]>, which equals Phi(G) for p-groups."""
    gens = {G.power(g, p) for g in range(G.order)}
    gens |= {G.commutator(a, b) for a in range(G.order) for b in range(G.order)}
    return G.closure(gens)


def frattini_subgroup(G: FiniteGroupTable) -> Subgroup:
    """Phi(G), computed from the maximal subgroups and cross-checked.

    Args:
        G: Finite group given by its multiplication table

    Returns:
        The Frattini subgroup; the trivial subgroup when G is trivial

    Raises:
        NotPGroup: If the order of G is not a prime power
    """
    p = prime_of_order(G)
    if p is None:
        return Subgroup(G, frozenset({G.identity}))
    phi = frattini_by_maximals(G)
    other = frattini_by_generators(G, p)
    if phi != other:
        raise RuntimeError(
            f"Frattini computations disagree on {G.name}: "
            f"{sorted(phi)} vs {sorted(other)}"
        )
    logger.debug("Phi(%s) has order %d", G.name, len(phi))
    return Subgroup(G, phi)


def elementary_quotient(G: FiniteGroupTable) -> int:
    """Rank s of G / Phi(G) = (Z/p)^s."""
    p = prime_of_order(G)
    if p is None:
        raise TrivialGroup("the trivial group has no elementary quotient")
    phi = frattini_subgroup(G).elements
    for a in range(G.order):
        if G.power(a, p) not in phi:
            raise RuntimeError(f"{a}^{p} is not in Phi(G)")
        for b in range(G.order):
            if G.commutator(a, b) not in phi:
                raise RuntimeError(f"[{a}, {b}] is not in Phi(G)")
    index = G.order // len(phi)
    s = 0
    while index > 1:
        index //= p
        s += 1
    return s


def artin_schreier(field: FiniteField) -> PPolynomial:
    """x^p - x, whose kernel is the constant group Z/p."""
    one = RatFn.one(field)
    return PPolynomial(field, ["x"], {(0, 1): one, (0, 0): -one})


def etale_not_special(
    s: int, field: FiniteField, precision: int = DEFAULT_PRECISION
) -> ExclusionCertificate:
    """Nontrivial class for (Z/p)^s = ker(x_i^p - x_i): t^-1 in coordinate 0.

    H^1 of the product is the product of the H^1 of the blocks, so the
    certificate for one block x^p - x settles the whole group.
    """
    if s < 1:
        raise RankOutOfRange(f"rank must be at least 1, got {s}")
    target = LaurentSeries.monomial(RatFn.one(field), -1, precision)
    cert = exclude_target(artin_schreier(field), target)
    return replace(cert, coordinate=0, rank=s)
