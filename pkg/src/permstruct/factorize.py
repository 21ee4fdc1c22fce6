"""Coprime factorizations G = AB and two elementary facts about them."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotAFactorization, NotASubgroup, PreconditionError
from .group import (
    DEFAULT_BUDGET,
    EnumerationBudget,
    PermGroup,
    _elements_raw,
    intersection,
    is_normal,
)
from .perm import Permutation, compose
from .structure import _elt_order, prime_factors

__all__ = [
    "FactorizationRecord",
    "is_factorization",
    "require_coprime_factorization",
    "check_lemma_l1",
    "check_lemma_l11",
    "enumerate_subgroups",
    "find_coprime_factorizations",
    "SubgroupCapExceeded",
]


class SubgroupCapExceeded(PreconditionError):
    """Exhaustive subgroup enumeration refused because |G| is above the cap."""


@dataclass
class FactorizationRecord:
    G: PermGroup
    A: PermGroup
    B: PermGroup
    coprime: bool
    a_order: int
    b_order: int

    def swapped(self) -> "FactorizationRecord":
        return FactorizationRecord(self.G, self.B, self.A, self.coprime, self.b_order, self.a_order)

    def is_valid(self, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
        return (self.A.order() == self.a_order and self.B.order() == self.b_order
                and self.coprime == (math.gcd(self.a_order, self.b_order) == 1)
                and is_factorization(self.G, self.A, self.B, budget))

    def to_dict(self) -> dict:
        return {
            "group_order": self.G.order(),
            "degree": self.G.degree,
            "A": [str(g) for g in self.A.generators],
            "B": [str(g) for g in self.B.generators],
            "a_order": self.a_order,
            "b_order": self.b_order,
            "coprime": self.coprime,
        }


def _require_subgroups(G: PermGroup, *Hs: PermGroup) -> None:
    for H in Hs:
        if H.degree != G.degree or not H.is_subgroup_of(G):
            raise NotASubgroup("factor is not a subgroup of G")


def is_factorization(G: PermGroup, A: PermGroup, B: PermGroup,
                     budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    """G = AB, decided by |A||B| = |G||A ∩ B|."""
    _require_subgroups(G, A, B)
    a, b = A.order(), B.order()
    if math.gcd(a, b) == 1:
        return a * b == G.order()
    if a * b < G.order():
        return False
    return a * b == G.order() * intersection(A, B, budget).order()


def require_coprime_factorization(G: PermGroup, A: PermGroup, B: PermGroup) -> None:
    _require_subgroups(G, A, B)
    a, b = A.order(), B.order()
    if math.gcd(a, b) != 1:
        raise NotAFactorization(f"|A| = {a} and |B| = {b} are not coprime")
    if a * b != G.order():
        raise NotAFactorization(f"|A||B| = {a * b} differs from |G| = {G.order()}")


def check_lemma_l1(G: PermGroup, N: PermGroup, a: Permutation, b: Permutation) -> bool:
    """Probe: coprime-order a, b with ab in the normal subgroup N both lie in N."""
    if not G.contains(a) or not G.contains(b):
        raise PreconditionError("a and b must lie in G")
    if not N.is_subgroup_of(G) or not is_normal(G, N):
        raise PreconditionError("N must be a normal subgroup of G")
    if math.gcd(a.order(), b.order()) != 1:
        raise PreconditionError("a and b must have coprime orders")
    if not N.contains(a * b):
        raise PreconditionError("ab must lie in N")
    return N.contains(a) and N.contains(b)


def check_lemma_l11(G: PermGroup, A: PermGroup, B: PermGroup, N: PermGroup,
                    budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    """Probe: a normal subgroup of a coprime product satisfies N = (N ∩ A)(N ∩ B)."""
    try:
        require_coprime_factorization(G, A, B)
    except (NotAFactorization, NotASubgroup) as e:
        raise PreconditionError(str(e)) from None
    if not N.is_subgroup_of(G) or not is_normal(G, N):
        raise PreconditionError("N must be a normal subgroup of G")
    return intersection(N, A, budget).order() * intersection(N, B, budget).order() == N.order()


# ---------------------------------------------------------------------------
# subgroup lattice


def _closure(gens: list[tuple], idt: tuple) -> frozenset:
    seen = {idt}
    queue = [idt]
    for x in queue:
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _cyclic_prime_power(G: PermGroup, budget) -> list[tuple[tuple, frozenset]]:
    """One generator per cyclic subgroup of prime-power order."""
    idt = G.chain.idt
    out = []
    covered: set[frozenset] = set()
    for x in _elements_raw(G, budget):
        o = _elt_order(x)
        if o == 1 or len(prime_factors(o)) != 1:
            continue
        powers = [idt]
        y = x
        while y != idt:
            powers.append(y)
            y = compose(y, x)
        C = frozenset(powers)
        if C not in covered:
            covered.add(C)
            out.append((x, C))
    return out


def _subgroup_sets(G: PermGroup, budget) -> dict[frozenset, list[tuple]]:
    idt = G.chain.idt
    cyclics = _cyclic_prime_power(G, budget)
    found: dict[frozenset, list[tuple]] = {frozenset([idt]): []}
    queue = list(found)
    for H in queue:
        hgens = found[H]
        for x, C in cyclics:
            if x in H:
                continue
            K = _closure(hgens + [x], idt)
            if K not in found:
                found[K] = hgens + [x]
                queue.append(K)
    return found


def enumerate_subgroups(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET,
                        max_order: int = 2000) -> list[PermGroup]:
    """Every subgroup of G (not up to conjugacy), sorted by order.

    Every group is generated by its cyclic subgroups of prime-power order, so
    closing the trivial group under joins with those cyclic subgroups reaches
    the whole lattice.
    """
    if G.order() > max_order:
        raise SubgroupCapExceeded(f"|G| = {G.order()} exceeds the enumeration cap {max_order}")
    found = _subgroup_sets(G, budget)
    subs = [PermGroup._from_raw(G.degree, gens, order_hint=len(H)) for H, gens in found.items()]
    return sorted(subs, key=PermGroup.order)


def _orient(A: PermGroup, B: PermGroup) -> tuple[PermGroup, PermGroup]:
    # A takes the even order (B is then the odd, hence soluble, factor)
    a, b = A.order(), B.order()
    if b % 2 == 0 or (a % 2 and b > a):
        return B, A
    return A, B


def find_coprime_factorizations(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET,
                                candidates: list[PermGroup] | None = None,
                                max_order: int = 2000) -> list[FactorizationRecord]:
    """All G = AB with A, B nontrivial of coprime orders, once per unordered pair.

    Without ``candidates`` the whole subgroup lattice is enumerated, which is
    only allowed up to ``max_order``.
    """
    n = G.order()
    subs = candidates if candidates is not None else enumerate_subgroups(G, budget, max_order)
    by_order: dict[int, list[PermGroup]] = {}
    for H in subs:
        if not H.is_subgroup_of(G):
            raise NotASubgroup("candidate is not a subgroup of G")
        by_order.setdefault(H.order(), []).append(H)
    records = []
    for a in sorted(by_order):
        b = n // a
        if a == 1 or b == 1 or a * b != n or math.gcd(a, b) != 1 or a > b:
            continue
        for X in by_order[a]:
            for Y in by_order.get(b, []):
                A, B = _orient(X, Y)
                records.append(FactorizationRecord(G, A, B, True, A.order(), B.order()))
    return records
