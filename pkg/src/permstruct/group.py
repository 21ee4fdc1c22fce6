"""Permutation groups given by generators, backed by a stabilizer chain.

The chain is built by Schreier-Sims: a seeded random phase proposes strong
generators cheaply, then a deterministic pass tests every Schreier generator
(or, when the true order is known in advance, the order equality itself
certifies completeness).  Results never depend on the random seed.

Centralizers, normalizers and intersections are found by bounded
enumeration; every enumeration is guarded by an :class:`EnumerationBudget`.
"""
from __future__ import annotations

import contextlib
import contextvars
import math
import random
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    NotASubgroup,
    NotNormal,
    ParseError,
)
from .perm import Permutation, compose, conjugate, identity, invert, parse_permutation

__all__ = [
    "EnumerationBudget",
    "DEFAULT_BUDGET",
    "PermGroup",
    "QuotientMap",
    "group_from_generators",
    "trivial_group",
    "order",
    "contains",
    "normal_closure",
    "derived_subgroup",
    "is_normal",
    "conjugate_subgroup",
    "elements",
    "conjugacy_class_reps",
    "intersection",
    "centralizer",
    "normalizer",
    "coset_action_quotient",
    "join",
    "parse_group",
    "format_group",
    "read_group",
    "write_group",
    "random_seed",
]


@dataclass(frozen=True)
class EnumerationBudget:
    max_elements: int = 2_000_000
    max_index: int = 200_000

    def __post_init__(self):
        if self.max_elements < 1 or self.max_index < 1:
            raise ValueError("budgets must be positive")

    def check_elements(self, n: int, what: str = "elements") -> None:
        if n > self.max_elements:
            raise BudgetExceeded(what, n, self.max_elements)

    def check_index(self, n: int, what: str = "coset action") -> None:
        if n > self.max_index:
            raise BudgetExceeded(what, n, self.max_index)


DEFAULT_BUDGET = EnumerationBudget()

_SEED: contextvars.ContextVar[int] = contextvars.ContextVar("permstruct_seed", default=0)


@contextlib.contextmanager
def random_seed(seed: int):
    """Seed the random phase of every chain built inside the block."""
    token = _SEED.set(seed)
    try:
        yield
    finally:
        _SEED.reset(token)


# ---------------------------------------------------------------------------
# stabilizer chain


class _Chain:
    """Base, per-level strong generators and explicit transversals.

    Level ``i`` holds the generators fixing ``base[:i]`` and a dict mapping
    every point of the orbit of ``base[i]`` to a coset representative ``u``
    with ``u[base[i]] == point``.
    """

    def __init__(self, degree: int, base_prefix: Sequence[int] = ()):
        self.n = degree
        self.idt = identity(degree)
        self.base: list[int] = []
        self.gens: list[list[tuple]] = []
        self.reps: list[dict[int, tuple]] = []
        self.inv: list[dict[int, tuple]] = []
        self.done: list[set] = []
        for b in base_prefix:
            self._new_level(b)

    def order(self) -> int:
        return math.prod(len(r) for r in self.reps)

    def copy(self) -> "_Chain":
        ch = _Chain(self.n)
        ch.base = list(self.base)
        ch.gens = [list(g) for g in self.gens]
        ch.reps = [dict(r) for r in self.reps]
        ch.inv = [dict(r) for r in self.inv]
        ch.done = [set(d) for d in self.done]
        return ch

    def _new_level(self, point: int) -> None:
        self.base.append(point)
        self.gens.append([])
        self.reps.append({point: self.idt})
        self.inv.append({point: self.idt})
        self.done.append(set())

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        base, reps, inv = self.base, self.reps, self.inv
        for i in range(start, len(base)):
            x = g[base[i]]
            if x not in reps[i]:
                return g, i
            if x != base[i]:
                g = tuple(map(inv[i][x].__getitem__, g))
        return g, len(base)

    def contains(self, g: tuple) -> bool:
        r, _ = self.sift(g)
        return r == self.idt

    def _extend_orbit(self, i: int) -> None:
        reps, inv, gens = self.reps[i], self.inv[i], self.gens[i]
        queue = list(reps)
        for p in queue:
            u = reps[p]
            for s in gens:
                q = s[p]
                if q not in reps:
                    v = tuple(map(s.__getitem__, u))
                    reps[q] = v
                    inv[q] = invert(v)
                    queue.append(q)

    def _insert(self, r: tuple, lo: int, hi: int) -> None:
        """Add r to levels lo..hi inclusive; hi == len(base) opens a level."""
        if hi == len(self.base):
            moved = next(i for i, x in enumerate(r) if i != x)
            self._new_level(moved)
        for level in range(lo, hi + 1):
            self.gens[level].append(r)
            self._extend_orbit(level)

    def complete(self, start: int) -> None:
        """Deterministic Schreier-Sims from level ``start`` downward."""
        i = min(start, len(self.base) - 1)
        idt = self.idt
        while i >= 0:
            jumped = False
            reps, inv, gens, done = self.reps[i], self.inv[i], self.gens[i], self.done[i]
            for beta in list(reps):
                u = reps[beta]
                for k in range(len(gens)):
                    if (beta, k) in done:
                        continue
                    done.add((beta, k))
                    s = gens[k]
                    img = s[beta]
                    h = tuple(map(inv[img].__getitem__, map(s.__getitem__, u)))
                    if h == idt:
                        continue
                    r, j = self.sift(h, i + 1)
                    if j < len(self.base) or r != idt:
                        self._insert(r, i + 1, j)
                        i = j
                        jumped = True
                        break
                if jumped:
                    break
            if not jumped:
                i -= 1

    def add_generator(self, g: tuple) -> bool:
        """Extend a complete chain by g; return False if g was already a member."""
        r, j = self.sift(g)
        if j == len(self.base) and r == self.idt:
            return False
        m = 0
        while m < len(self.base) and g[self.base[m]] == self.base[m]:
            m += 1
        self._insert(g, 0, m)
        self.complete(m)
        return True

    def random_phase(self, gens: Sequence[tuple], rng: random.Random,
                     target: int | None = None, patience: int = 25) -> None:
        slots = list(gens) * max(1, (10 + len(gens) - 1) // len(gens))
        acc = self.idt

        def step():
            nonlocal acc
            a, b = rng.sample(range(len(slots)), 2) if len(slots) > 1 else (0, 0)
            if a == b:
                slots[a] = compose(slots[a], slots[a])
            elif rng.random() < 0.5:
                slots[a] = compose(slots[a], slots[b])
            else:
                slots[a] = compose(slots[b], slots[a])
            acc = compose(acc, slots[a])
            return acc

        for _ in range(40):
            step()
        quiet = 0
        while quiet < patience:
            if target is not None and self.order() == target:
                return
            r, j = self.sift(step())
            if j == len(self.base) and r == self.idt:
                quiet += 1
                continue
            quiet = 0
            self._insert(r, 1 if j > 0 else 0, j)


def _build_chain(degree: int, gens: Sequence[tuple], order_hint: int | None = None,
                 base_prefix: Sequence[int] = ()) -> _Chain:
    ch = _Chain(degree, base_prefix)
    if not gens:
        return ch
    for g in gens:
        m = 0
        while m < len(ch.base) and g[ch.base[m]] == ch.base[m]:
            m += 1
        if m == len(ch.base):
            ch._new_level(next(i for i, x in enumerate(g) if i != x))
        for level in range(m + 1):
            ch.gens[level].append(g)
    for level in range(len(ch.base)):
        ch._extend_orbit(level)
    if ch.order() == order_hint:
        return ch
    rng = random.Random(_SEED.get())
    ch.random_phase(gens, rng, order_hint)
    if order_hint is not None and ch.order() == order_hint:
        # the chain's order never exceeds |G|, so equality proves completeness
        return ch
    ch.complete(len(ch.base) - 1)
    if order_hint is not None and ch.order() != order_hint:
        raise ValueError(f"order hint {order_hint} disagrees with chain order {ch.order()}")
    return ch


# ---------------------------------------------------------------------------
# groups


def _clean(gens: Iterable[tuple], degree: int) -> list[tuple]:
    idt = identity(degree)
    out, seen = [], set()
    for g in gens:
        if g != idt and g not in seen:
            seen.add(g)
            out.append(g)
    return out


class PermGroup:
    """A permutation group on ``{1..degree}`` given by generators.

    The stabilizer chain is built on first use, once, under a lock; after
    that the object is immutable and safe to share between threads.
    """

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None,
                 *, order_hint: int | None = None):
        generators = list(generators)
        if degree is None:
            if not generators:
                raise ValueError("empty generator list needs an explicit degree; "
                                 "use PermGroup.trivial(degree)")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
        self._init(degree, [g._img for g in generators], order_hint)

    def _init(self, degree, raw, order_hint=None, chain=None):
        if degree < 1:
            raise ValueError("degree must be positive")
        self._degree = degree
        self._gens = _clean(raw, degree)
        self._order_hint = order_hint
        self._chain = chain
        self._lock = threading.Lock()

    @classmethod
    def _from_raw(cls, degree: int, raw: Iterable[tuple], order_hint: int | None = None,
                  chain: _Chain | None = None) -> "PermGroup":
        G = object.__new__(cls)
        G._init(degree, list(raw), order_hint, chain)
        return G

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls._from_raw(degree, [])

    # -- chain ------------------------------------------------------------

    @property
    def chain(self) -> _Chain:
        ch = self._chain
        if ch is None:
            with self._lock:
                if self._chain is None:
                    self._chain = _build_chain(self._degree, self._gens, self._order_hint)
                ch = self._chain
        return ch

    def base(self) -> list[int]:
        return [b + 1 for b in self.chain.base]

    def strong_generators(self) -> list[Permutation]:
        seen = []
        for level in self.chain.gens:
            for g in level:
                if g not in seen:
                    seen.append(g)
        return [Permutation._raw(g) for g in seen]

    def transversal_sizes(self) -> list[int]:
        return [len(r) for r in self.chain.reps]

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> list[Permutation]:
        return [Permutation._raw(g) for g in self._gens]

    def identity(self) -> Permutation:
        return Permutation.identity(self._degree)

    def order(self) -> int:
        return self.chain.order()

    def is_trivial(self) -> bool:
        return not self._gens

    def _contains_raw(self, g: tuple) -> bool:
        return self.chain.contains(g)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self._degree:
            raise DegreeMismatch(f"degree {g.degree} element tested against degree {self._degree} group")
        return self.chain.contains(g._img)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        if other._degree != self._degree:
            return False
        return all(other._contains_raw(g) for g in self._gens)

    def __le__(self, other: "PermGroup") -> bool:
        return self.is_subgroup_of(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self._degree == other._degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    def __hash__(self) -> int:
        return hash((self._degree, self.order()))

    def is_abelian(self) -> bool:
        gs = self._gens
        return all(compose(a, b) == compose(b, a) for i, a in enumerate(gs) for b in gs[i + 1:])

    def orbit(self, point: int) -> list[int]:
        p = point - 1
        seen = {p}
        queue = [p]
        for x in queue:
            for g in self._gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(q + 1 for q in seen)

    def orbits(self) -> list[list[int]]:
        left = set(range(1, self._degree + 1))
        out = []
        while left:
            o = self.orbit(min(left))
            left.difference_update(o)
            out.append(o)
        return out

    def stabilizer_chain_with_base(self, base: Sequence[int]) -> _Chain:
        """A fresh complete chain whose base starts with the given 1-based points."""
        return _build_chain(self._degree, self._gens, self.order(), [b - 1 for b in base])

    def point_stabilizer(self, point: int) -> "PermGroup":
        ch = self.stabilizer_chain_with_base([point])
        gens = ch.gens[1] if len(ch.base) > 1 else []
        return PermGroup._from_raw(self._degree, gens, order_hint=self.order() // len(ch.reps[0]))

    def random_element(self, rng: random.Random) -> Permutation:
        g = self.chain.idt
        for reps in reversed(self.chain.reps):
            g = compose(g, rng.choice(list(reps.values())))
        return Permutation._raw(g)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(elements(self))

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"PermGroup([{gens}], degree={self._degree})"


def trivial_group(degree: int) -> PermGroup:
    return PermGroup.trivial(degree)


def group_from_generators(gens: Sequence[Permutation]) -> PermGroup:
    if not gens:
        raise ValueError("empty generator list; use trivial_group(degree)")
    return PermGroup(gens)


def order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, g: Permutation) -> bool:
    return G.contains(g)


def _check_degree(*groups: PermGroup) -> None:
    if len({G.degree for G in groups}) > 1:
        raise DegreeMismatch("groups act on different degrees")


def _closure_from(degree: int, candidates: Iterable[tuple], start: PermGroup | None = None,
                  order_hint: int | None = None) -> PermGroup:
    """Smallest group containing ``start`` and every candidate, grown one element at a time."""
    if start is not None and start._gens:
        ch = start.chain.copy()
        gens = list(start._gens)
    else:
        ch = _Chain(degree)
        gens = []
    for x in candidates:
        if order_hint is not None and ch.order() == order_hint:
            break
        if ch.add_generator(x):
            gens.append(x)
    return PermGroup._from_raw(degree, gens, chain=ch)


def join(*groups: PermGroup, order_hint: int | None = None) -> PermGroup:
    """The subgroup generated by several subgroups of one symmetric group."""
    _check_degree(*groups)
    raw = [g for G in groups for g in G._gens]
    return PermGroup._from_raw(groups[0].degree, raw, order_hint=order_hint)


def normal_closure(G: PermGroup, S: Sequence[Permutation] | PermGroup) -> PermGroup:
    """Smallest normal subgroup of G containing S."""
    raw = S._gens if isinstance(S, PermGroup) else [s._img for s in S]
    for s in raw:
        if len(s) != G.degree:
            raise DegreeMismatch("element degree differs from group degree")
        if not G._contains_raw(s):
            raise NotASubgroup(f"{Permutation._raw(s)} is not in the group")
    return _normal_closure_raw(G, raw)


def _normal_closure_raw(G: PermGroup, raw: Iterable[tuple]) -> PermGroup:
    ch = _Chain(G.degree)
    gens: list[tuple] = []
    queue = list(raw)
    ggens = G._gens
    while queue:
        x = queue.pop()
        if ch.add_generator(x):
            gens.append(x)
            queue.extend(conjugate(x, g) for g in ggens)
    return PermGroup._from_raw(G.degree, gens, chain=ch)


def derived_subgroup(G: PermGroup) -> PermGroup:
    gs = G._gens
    comms = []
    for i, a in enumerate(gs):
        ai = invert(a)
        for b in gs[i + 1:]:
            c = compose(compose(ai, invert(b)), compose(a, b))
            comms.append(c)
    return _normal_closure_raw(G, comms)


def is_normal(G: PermGroup, H: PermGroup) -> bool:
    """True iff H is normal in G; H must be a subgroup of G."""
    _check_degree(G, H)
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not a subgroup of G")
    return all(H._contains_raw(conjugate(h, g)) for g in G._gens for h in H._gens)


def conjugate_subgroup(H: PermGroup, g: Permutation) -> PermGroup:
    """H^g = g^-1 H g."""
    if g.degree != H.degree:
        raise DegreeMismatch("element and group degrees differ")
    return PermGroup._from_raw(H.degree, [conjugate(h, g._img) for h in H._gens],
                               order_hint=H.order())


def _elements_raw(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[tuple]:
    budget.check_elements(G.order())
    ch = G.chain
    current = [ch.idt]
    for reps in reversed(ch.reps):
        us = list(reps.values())
        current = [tuple(map(u.__getitem__, x)) for x in current for u in us]
    return current


def elements(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[Permutation]:
    return [Permutation._raw(g) for g in _elements_raw(G, budget)]


def _classes_raw(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET,
                 elts: list[tuple] | None = None) -> list[tuple[tuple, int]]:
    """(representative, class size) for every conjugacy class."""
    if elts is None:
        elts = _elements_raw(G, budget)
    seen: set[tuple] = set()
    out = []
    gens = G._gens
    for x in elts:
        if x in seen:
            continue
        seen.add(x)
        cls = [x]
        for y in cls:
            for g in gens:
                z = conjugate(y, g)
                if z not in seen:
                    seen.add(z)
                    cls.append(z)
        out.append((x, len(cls)))
    return out


def conjugacy_class_reps(G: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[Permutation]:
    return [Permutation._raw(x) for x, _ in _classes_raw(G, budget)]


def intersection(A: PermGroup, B: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> PermGroup:
    _check_degree(A, B)
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    if small.is_subgroup_of(big):
        return small
    return _closure_from(A.degree, (x for x in _elements_raw(small, budget) if big._contains_raw(x)))


def centralizer(G: PermGroup, H: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> PermGroup:
    """All elements of G commuting with every element of H."""
    _check_degree(G, H)
    hs = H._gens
    if not hs:
        return G
    return _closure_from(G.degree, (x for x in _elements_raw(G, budget)
                                    if all(compose(x, h) == compose(h, x) for h in hs)))


def normalizer(G: PermGroup, H: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET) -> PermGroup:
    """All g in G with H^g = H."""
    _check_degree(G, H)
    hs = H._gens
    if not hs:
        return G
    return _closure_from(G.degree, (x for x in _elements_raw(G, budget)
                                    if all(H._contains_raw(conjugate(h, x)) for h in hs)))


# ---------------------------------------------------------------------------
# quotients


class QuotientMap:
    """The action of G on the right cosets of a normal subgroup N.

    ``group`` is the image, a faithful permutation representation of G/N on
    |G:N| points; calling the map sends an element of G to its image.
    """

    def __init__(self, G: PermGroup, N: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET):
        index = G.order() // N.order()
        budget.check_index(index)
        self.source = G
        self.kernel = N
        nch = N.chain
        self._nchain = nch
        start = self._canon(nch.idt)
        reps = [start]
        where = {start: 0}
        table = [[] for _ in G._gens]
        for c in reps:
            for k, g in enumerate(G._gens):
                d = self._canon(compose(c, g))
                if d not in where:
                    where[d] = len(reps)
                    reps.append(d)
                table[k].append(where[d])
        if len(reps) != index:
            raise AssertionError("coset enumeration disagrees with |G:N|")
        self._reps = reps
        self._where = where
        self.group = PermGroup._from_raw(index, [tuple(t) for t in table], order_hint=index)

    def _canon(self, y: tuple) -> tuple:
        """The canonical element of the coset N*y."""
        ch = self._nchain
        for i in range(len(ch.base)):
            reps = ch.reps[i]
            beta = min(reps, key=y.__getitem__)
            if beta != ch.base[i]:
                y = compose(reps[beta], y)
        return y

    @property
    def degree(self) -> int:
        return len(self._reps)

    def _image_raw(self, g: tuple) -> tuple:
        canon, where = self._canon, self._where
        return tuple(where[canon(compose(c, g))] for c in self._reps)

    def __call__(self, g: Permutation) -> Permutation:
        return Permutation._raw(self._image_raw(g._img))

    def image_of(self, H: PermGroup) -> PermGroup:
        """Image of a subgroup H of G."""
        return PermGroup._from_raw(self.degree, [self._image_raw(h) for h in H._gens])

    def _lift_raw(self, h: tuple) -> tuple:
        # cosets are indexed from the kernel itself, so h[0] names the coset of any preimage
        return self._reps[h[0]]

    def lift(self, h: Permutation) -> Permutation:
        return Permutation._raw(self._lift_raw(h._img))

    def preimage(self, H: PermGroup) -> PermGroup:
        """Full preimage in G of a subgroup H of the image."""
        raw = list(self.kernel._gens) + [self._lift_raw(h) for h in H._gens]
        return PermGroup._from_raw(self.source.degree, raw,
                                   order_hint=self.kernel.order() * H.order())


class IdentityMap:
    """Stand-in for the quotient by the trivial subgroup."""

    def __init__(self, G: PermGroup):
        self.source = G
        self.kernel = PermGroup.trivial(G.degree)
        self.group = G
        self.degree = G.degree

    def __call__(self, g: Permutation) -> Permutation:
        return g

    def _image_raw(self, g):
        return g

    def image_of(self, H: PermGroup) -> PermGroup:
        return H

    def lift(self, h: Permutation) -> Permutation:
        return h

    def _lift_raw(self, h):
        return h

    def preimage(self, H: PermGroup) -> PermGroup:
        return H


def coset_action_quotient(G: PermGroup, N: PermGroup,
                          budget: EnumerationBudget = DEFAULT_BUDGET) -> tuple[PermGroup, QuotientMap]:
    """G/N as a permutation group on the right cosets of N, plus the element map."""
    if not is_normal(G, N):
        raise NotNormal("N is not normal in G")
    q = QuotientMap(G, N, budget)
    return q.group, q


def quotient_map(G: PermGroup, N: PermGroup, budget: EnumerationBudget = DEFAULT_BUDGET):
    """Like coset_action_quotient but skips the action when N is trivial.

    Normality is the caller's responsibility.
    """
    if N.is_trivial() or N.order() == 1:
        return IdentityMap(G)
    return QuotientMap(G, N, budget)


# ---------------------------------------------------------------------------
# group files


def parse_group(text: str) -> PermGroup:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty group file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "degree":
        raise ParseError(f"expected 'degree <n>', got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError(f"bad degree {head[1]!r}") from None
    if n < 1:
        raise ParseError("degree must be positive")
    gens = [parse_permutation(ln, n) for ln in lines[1:]]
    return PermGroup(gens, n)


def format_group(G: PermGroup) -> str:
    out = [f"degree {G.degree}"]
    out.extend(str(g) for g in G.generators)
    return "\n".join(out) + "\n"


def read_group(path: str | Path) -> PermGroup:
    return parse_group(Path(path).read_text(encoding="utf-8"))


def write_group(G: PermGroup, path: str | Path) -> None:
    Path(path).write_text(format_group(G), encoding="utf-8")
