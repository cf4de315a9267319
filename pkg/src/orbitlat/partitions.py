"""Set partitions of {0..n-1} and their refinement lattice.

A partition is stored as a restricted-growth string (RGS): position i holds
the block label of point i, labels appearing in first-use order starting at 0.
The RGS is a canonical form, so equal partitions have equal codes and the
tuple doubles as a hash key.

Join is computed with a disjoint-set union over the two block relations;
meet buckets points by their pair of block labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import PartitionFormatError


def _canonical(labels) -> tuple[int, ...]:
    """Relabel an arbitrary labelling into restricted-growth form."""
    out = [0] * len(labels)
    ids: dict = {}
    for i, lab in enumerate(labels):
        if lab not in ids:
            ids[lab] = len(ids)
        out[i] = ids[lab]
    return tuple(out)


def join_codes(a, b):
    """Join of two partitions given as label sequences; canonical tuple out."""
    n = len(a)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for labels in (a, b):
        first: dict = {}
        for i in range(n):
            lab = labels[i]
            if lab in first:
                ra, rb = find(first[lab]), find(i)
                if ra != rb:
                    parent[rb] = ra
            else:
                first[lab] = i
    return _canonical([find(i) for i in range(n)])


def meet_codes(a, b):
    """Meet of two partitions given as label sequences; canonical tuple out."""
    return _canonical([(a[i], b[i]) for i in range(len(a))])


@dataclass(frozen=True)
class SetPartition:
    """A partition of {0..degree-1} in canonical restricted-growth form."""

    rgs: tuple[int, ...]

    def __post_init__(self):
        mx = -1
        for i, lab in enumerate(self.rgs):
            if not isinstance(lab, int) or lab < 0 or lab > mx + 1:
                raise ValueError("not a restricted-growth string at position %d" % i)
            if lab == mx + 1:
                mx = lab
        if not self.rgs:
            raise ValueError("degree must be at least 1")

    @property
    def degree(self) -> int:
        return len(self.rgs)

    @property
    def block_count(self) -> int:
        return max(self.rgs) + 1

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], degree: int) -> SetPartition:
        """Build from explicit blocks; they must be disjoint, nonempty and cover."""
        labels = [-1] * degree
        for k, block in enumerate(blocks):
            block = list(block)
            if not block:
                raise ValueError("empty block")
            for pt in block:
                if not 0 <= pt < degree:
                    raise ValueError("point %r outside 0..%d" % (pt, degree - 1))
                if labels[pt] != -1:
                    raise ValueError("point %d in two blocks" % pt)
                labels[pt] = k
        if -1 in labels:
            raise ValueError("point %d not covered" % labels.index(-1))
        return cls(_canonical(labels))

    @classmethod
    def discrete(cls, degree: int) -> SetPartition:
        return cls(tuple(range(degree)))

    @classmethod
    def single_block(cls, degree: int) -> SetPartition:
        return cls((0,) * degree)

    @classmethod
    def from_string(cls, text: str, degree: int) -> SetPartition:
        """Parse the 1-based textual form, e.g. ``"{1,2|3|4}"``."""
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise PartitionFormatError("expected {...}: %r" % text)
        blocks = []
        for chunk in text[1:-1].split("|"):
            toks = chunk.replace(",", " ").split()
            if not toks:
                raise PartitionFormatError("empty block in %r" % text)
            try:
                blocks.append([int(t) - 1 for t in toks])
            except ValueError:
                raise PartitionFormatError("non-integer point in %r" % chunk) from None
        try:
            return cls.from_blocks(blocks, degree)
        except ValueError as exc:
            raise PartitionFormatError(str(exc)) from None

    def blocks(self) -> list[list[int]]:
        """Blocks as sorted lists, ordered by least element."""
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for i, lab in enumerate(self.rgs):
            out[lab].append(i)
        return out

    def code(self) -> bytes:
        """Compact canonical key (degree must stay below 256)."""
        return bytes(self.rgs)

    def join(self, other: SetPartition) -> SetPartition:
        self._check(other)
        return SetPartition(join_codes(self.rgs, other.rgs))

    def meet(self, other: SetPartition) -> SetPartition:
        self._check(other)
        return SetPartition(meet_codes(self.rgs, other.rgs))

    __or__ = join
    __and__ = meet

    def refines(self, other: SetPartition) -> bool:
        """True when every block of self lies inside a block of other."""
        self._check(other)
        target: dict[int, int] = {}
        for i, lab in enumerate(self.rgs):
            want = target.setdefault(lab, other.rgs[i])
            if other.rgs[i] != want:
                return False
        return True

    def apply(self, g) -> SetPartition:
        """Image partition under a permutation: blocks are mapped pointwise."""
        if len(g.images) != self.degree:
            raise ValueError("degree mismatch")
        labels = [0] * self.degree
        for i, lab in enumerate(self.rgs):
            labels[g.images[i]] = lab
        return SetPartition(_canonical(labels))

    def _check(self, other: SetPartition):
        if self.degree != other.degree:
            raise ValueError("degree mismatch: %d vs %d" % (self.degree, other.degree))

    def __str__(self) -> str:
        return "{%s}" % "|".join(",".join(str(p + 1) for p in b) for b in self.blocks())


def is_chain(parts: Iterable[SetPartition]) -> bool:
    """True when the given partitions are pairwise comparable by refinement.

    In a chain the block count strictly decreases along refinement, so after
    deduplication it suffices to sort by block count and check neighbours.
    """
    unique = sorted(set(parts), key=lambda p: (-p.block_count, p.rgs))
    for a, b in zip(unique, unique[1:]):
        if a.block_count == b.block_count or not a.refines(b):
            return False
    return True


def all_partitions(degree: int) -> Iterator[SetPartition]:
    """Every partition of {0..degree-1}, by iterating restricted-growth strings."""
    rgs = [0] * degree
    mx = [0] * degree
    while True:
        yield SetPartition(tuple(rgs))
        i = degree - 1
        while i > 0 and rgs[i] == mx[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        mx[i] = max(mx[i - 1], rgs[i])
        for j in range(i + 1, degree):
            rgs[j] = 0
            mx[j] = mx[i]
