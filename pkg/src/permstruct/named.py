"""A small library of named groups with standard generators.

Matrix groups act on the nonzero vectors of their natural module, listed
in lexicographic order and numbered from 1:

* ``SL25``  SL(2,5) on the 24 nonzero vectors of F_5^2, generated by
  [[1,1],[0,1]] and [[0,-1],[1,0]]; order 120.
* ``GL23``  GL(2,3) on the 8 nonzero vectors of F_3^2, generated by
  [[1,1],[0,1]] and the Singer-type matrix [[0,1],[1,1]]; order 48.
* ``PSL27`` as GL(3,2) on the 7 nonzero vectors of F_2^3, generated by a
  transvection and a Singer cycle; order 168.

Permutation families use the textbook generators: an n-cycle and a
transposition for S_n, 3-cycles for A_n, rotation and reflection for D_2n,
x -> x+1 and x -> 2x on F_5 for F20.
"""
from __future__ import annotations

import itertools
import math
import re

from .errors import ParseError
from .group import PermGroup
from .perm import Permutation

__all__ = [
    "named_group",
    "NAMED_ORDERS",
    "symmetric",
    "alternating",
    "cyclic",
    "dihedral",
    "direct_product",
    "matrix_group_on_vectors",
]


def symmetric(n: int) -> PermGroup:
    if n == 1:
        return PermGroup.trivial(1)
    if n == 2:
        return PermGroup([Permutation.from_cycles([(1, 2)], 2)])
    return PermGroup([Permutation.from_cycles([tuple(range(1, n + 1))], n),
                      Permutation.from_cycles([(1, 2)], n)], order_hint=math.factorial(n))


def alternating(n: int) -> PermGroup:
    if n < 3:
        return PermGroup.trivial(max(n, 1))
    gens = [Permutation.from_cycles([(1, 2, k)], n) for k in range(3, n + 1)]
    return PermGroup(gens, order_hint=math.factorial(n) // 2)


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup.trivial(1)
    return PermGroup([Permutation.from_cycles([tuple(range(1, n + 1))], n)], order_hint=n)


def dihedral(order: int) -> PermGroup:
    """Dihedral group of the given order (2n) acting on n points."""
    if order % 2 or order < 4:
        raise ValueError("dihedral order must be even and at least 4")
    n = order // 2
    if n == 2:
        return PermGroup([Permutation.from_cycles([(1, 2)], 4), Permutation.from_cycles([(3, 4)], 4)])
    rot = Permutation.from_cycles([tuple(range(1, n + 1))], n)
    ref = Permutation([1] + list(range(n, 1, -1)))
    return PermGroup([rot, ref], order_hint=order)


def direct_product(*groups: PermGroup) -> PermGroup:
    """Direct product acting on the disjoint union of the point sets."""
    total = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            img = list(range(1, total + 1))
            for i, x in enumerate(g.images):
                img[offset + i] = offset + x
            gens.append(Permutation(img))
        offset += G.degree
    if not gens:
        return PermGroup.trivial(total)
    return PermGroup(gens, order_hint=math.prod(G.order() for G in groups))


def matrix_group_on_vectors(mats, p: int, dim: int, order_hint: int | None = None) -> PermGroup:
    """Matrices over F_p acting on row vectors v -> vM, one point per nonzero vector."""
    vecs = [v for v in itertools.product(range(p), repeat=dim) if any(v)]
    where = {v: i for i, v in enumerate(vecs)}
    gens = []
    for M in mats:
        img = []
        for v in vecs:
            w = tuple(sum(v[i] * M[i][j] for i in range(dim)) % p for j in range(dim))
            img.append(where[w] + 1)
        gens.append(Permutation(img))
    return PermGroup(gens, order_hint=order_hint)


def _v4() -> PermGroup:
    return PermGroup([Permutation.from_cycles([(1, 2), (3, 4)], 4),
                      Permutation.from_cycles([(1, 3), (2, 4)], 4)])


def _q8() -> PermGroup:
    # the Sylow 2-subgroup of SL(2,3) on the 8 nonzero vectors of F_3^2
    return matrix_group_on_vectors([[[0, 2], [1, 0]], [[1, 1], [1, 2]]], 3, 2)


def _f20() -> PermGroup:
    return PermGroup([Permutation.from_cycles([(1, 2, 3, 4, 5)], 5),
                      Permutation.from_cycles([(2, 3, 5, 4)], 5)])


_FIXED = {
    "V4": _v4,
    "Q8": _q8,
    "F20": _f20,
    "SL25": lambda: matrix_group_on_vectors([[[1, 1], [0, 1]], [[0, 4], [1, 0]]], 5, 2),
    "GL23": lambda: matrix_group_on_vectors([[[1, 1], [0, 1]], [[0, 1], [1, 1]]], 3, 2),
    "PSL27": lambda: matrix_group_on_vectors(
        [[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 1], [1, 1, 0]]], 2, 3),
}

NAMED_ORDERS = {"V4": 4, "Q8": 8, "F20": 20, "SL25": 120, "GL23": 48, "PSL27": 168}

_FAMILY = re.compile(r"^([ASCD])(\d+)$")


def named_group(name: str) -> PermGroup:
    """Build A<n>, S<n>, C<n>, D<2n> or one of the fixed names (V4, Q8, F20, SL25, GL23, PSL27)."""
    key = name.strip()
    if key.upper() in _FIXED:
        return _FIXED[key.upper()]()
    m = _FAMILY.match(key.upper())
    if not m:
        raise ParseError(f"unknown group name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise ParseError(f"bad size in {name!r}")
    if kind == "A":
        return alternating(n)
    if kind == "S":
        return symmetric(n)
    if kind == "C":
        return cyclic(n)
    return dihedral(n)
