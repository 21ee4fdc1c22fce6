"""Permutations of {1..n}.

Products act on the right: ``x^(g*h) = (x^g)^h``, so ``g*h`` applies ``g``
first.  Conjugation is ``g**-1 * h * g``, which relabels the cycles of ``h``
by ``g``.  Storage is a 0-based tuple of images; every public method speaks
1-based points.
"""
from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

from .errors import DegreeMismatch, ParseError

__all__ = ["Permutation", "parse_permutation"]


# Raw helpers on 0-based image tuples.  The group layer works with these
# directly and only wraps results in Permutation at its boundary.

def compose(g: tuple, h: tuple) -> tuple:
    """Image tuple of g*h (g first)."""
    return tuple(map(h.__getitem__, g))


def invert(g: tuple) -> tuple:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def conjugate(h: tuple, g: tuple) -> tuple:
    """Image tuple of g^-1 h g, i.e. h with its points relabelled by g."""
    out = [0] * len(h)
    for i, x in enumerate(h):
        out[g[i]] = g[x]
    return tuple(out)


def is_identity(g: tuple) -> bool:
    return all(i == x for i, x in enumerate(g))


def identity(n: int) -> tuple:
    return tuple(range(n))


class Permutation:
    """An immutable permutation of ``{1, ..., degree}``."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int]):
        """Build from the 1-based image list: ``images[i-1]`` is the image of ``i``."""
        img = tuple(x - 1 for x in images)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a permutation of 1..{len(img)}: {list(images)}")
        if not img:
            raise ValueError("degree must be positive")
        self._img = img
        self._hash = None

    @classmethod
    def _raw(cls, img: tuple) -> "Permutation":
        p = object.__new__(cls)
        p._img = img
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise ValueError("degree must be positive")
        return cls._raw(identity(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= degree:
                    raise ParseError(f"point {x} outside 1..{degree}")
                if x in seen:
                    raise ParseError(f"point {x} repeated")
                seen.add(x)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                img[a - 1] = b - 1
        return cls._raw(tuple(img))

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._img)

    def image(self, point: int) -> int:
        return self._img[point - 1] + 1

    __call__ = image

    def _check(self, other: "Permutation") -> None:
        if len(self._img) != len(other._img):
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree} differ")

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        self._check(other)
        return Permutation._raw(compose(self._img, other._img))

    def inverse(self) -> "Permutation":
        return Permutation._raw(invert(self._img))

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def __pow__(self, k: int) -> "Permutation":
        base = self._img if k >= 0 else invert(self._img)
        k = abs(k)
        result = identity(len(base))
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return Permutation._raw(result)

    def __xor__(self, g: "Permutation") -> "Permutation":
        """``h ^ g`` is the conjugate g^-1 h g."""
        self._check(g)
        return Permutation._raw(conjugate(self._img, g._img))

    def commutator(self, other: "Permutation") -> "Permutation":
        """[self, other] = self^-1 other^-1 self other."""
        self._check(other)
        a, b = self._img, other._img
        return Permutation._raw(compose(compose(invert(a), invert(b)), compose(a, b)))

    def is_identity(self) -> bool:
        return is_identity(self._img)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * len(self._img)
        out = []
        for i in range(len(self._img)):
            if seen[i] or self._img[i] == i:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self._img[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def support(self) -> list[int]:
        return [i + 1 for i, x in enumerate(self._img) if i != x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r}, degree={self.degree})"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(1 2 3)(4 5)"``.

    Points may be separated by spaces or commas.  ``"()"`` (or an empty
    string) is the identity.  Unmentioned points are fixed.
    """
    if degree < 1:
        raise ParseError("degree must be positive")
    s = text.strip()
    pos = 0
    cycles = []
    for m in _CYCLE.finditer(s):
        if s[pos:m.start()].strip():
            raise ParseError(f"unexpected text {s[pos:m.start()]!r} in {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(t) for t in body]
        except ValueError:
            raise ParseError(f"non-integer point in {text!r}") from None
        if pts:
            cycles.append(pts)
    if s[pos:].strip():
        raise ParseError(f"unexpected text {s[pos:]!r} in {text!r}")
    return Permutation.from_cycles(cycles, degree)
