"""Permutations of a finite set {0..n-1}, composed left to right.

Points are 0-based internally.  Cycle notation accepted and produced by this
module is 1-based, which is the convention used in most printed tables of
generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm

from .errors import CycleNotationError
from .partitions import SetPartition

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _compose_images(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # right action: i -> q[p[i]]
    return tuple(q[i] for i in p)


def _invert_images(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _orbit_rgs(images) -> bytes:
    """Restricted-growth string of the cycle partition of an image tuple.

    Labels are assigned in order of each cycle's minimum point, so the result
    is the canonical code of the orbit partition.
    """
    n = len(images)
    rgs = [-1] * n
    nxt = 0
    for i in range(n):
        if rgs[i] < 0:
            j = i
            while rgs[j] < 0:
                rgs[j] = nxt
                j = images[j]
            nxt += 1
    return bytes(rgs)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0..n-1} stored as its tuple of images.

    Composition acts on the right: ``(p * q)(i) == q(p(i))``, i.e. ``p * q``
    means "apply p, then q".
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images are not a bijection of 0..%d" % (len(self.images) - 1))

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        if degree < 1:
            raise ValueError("degree must be at least 1")
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Permutation:
        """Parse 1-based disjoint cycle notation, e.g. ``"(1 7)(4 10)"``.

        Points may be separated by spaces or commas.  Raises
        CycleNotationError for unbalanced parentheses, stray text, points
        outside 1..degree, or a point appearing twice.
        """
        if degree < 1:
            raise CycleNotationError("degree must be at least 1")
        outside = _CYCLE_RE.sub("", text)
        if outside.strip(" ,\t\n"):
            raise CycleNotationError("unexpected text outside cycles: %r" % text)
        images = list(range(degree))
        seen: set[int] = set()
        for match in _CYCLE_RE.finditer(text):
            toks = match.group(1).replace(",", " ").split()
            try:
                points = [int(t) for t in toks]
            except ValueError:
                raise CycleNotationError("non-integer point in %r" % match.group(0)) from None
            for pt in points:
                if not 1 <= pt <= degree:
                    raise CycleNotationError("point %d outside 1..%d" % (pt, degree))
                if pt in seen:
                    raise CycleNotationError("point %d repeated" % pt)
                seen.add(pt)
            for a, b in zip(points, points[1:]):
                images[a - 1] = b - 1
            if points:
                images[points[-1] - 1] = points[0] - 1
        return cls(tuple(images))

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise ValueError("degree mismatch: %d vs %d" % (self.degree, other.degree))
        return Permutation(_compose_images(self.images, other.images))

    def inverse(self) -> Permutation:
        return Permutation(_invert_images(self.images))

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = tuple(range(self.degree))
        square = base.images
        while k:
            if k & 1:
                result = _compose_images(result, square)
            square = _compose_images(square, square)
            k >>= 1
        return Permutation(result)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles (fixed points included), min point first, sorted by min."""
        out = []
        seen = [False] * self.degree
        for i in range(self.degree):
            if not seen[i]:
                cyc = [i]
                seen[i] = True
                j = self.images[i]
                while j != i:
                    cyc.append(j)
                    seen[j] = True
                    j = self.images[j]
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles()))

    def orbit_partition(self) -> SetPartition:
        """The partition of {0..n-1} into this permutation's cycles."""
        return SetPartition(tuple(_orbit_rgs(self.images)))

    def conjugate(self, by: Permutation) -> Permutation:
        """by^-1 * self * by."""
        return by.inverse() * self * by

    def cycle_string(self) -> str:
        """1-based cycle notation; fixed points omitted; identity is "()"."""
        parts = ["(%s)" % " ".join(str(p + 1) for p in c) for c in self.cycles() if len(c) > 1]
        return "".join(parts) if parts else "()"

    def __str__(self) -> str:
        return self.cycle_string()
