"""Finite permutation groups backed by a deterministic stabilizer chain.

The chain is the classic Schreier-Sims structure: a list of base points,
strong generators, and orbit transversals.  All choices (base points, orbit
breadth-first order, generator order) are deterministic, so group order,
element streaming order, and every derived result are reproducible across
runs and machines.

Elements are handled internally as raw image tuples; the `Permutation`
wrapper appears only at the public surface.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Iterator

from .arith import is_prime_power
from .errors import CapExceeded
from .partitions import SetPartition
from .perms import Permutation, _compose_images, _invert_images, _orbit_rgs

DEFAULT_PI_CAP = 20_000_000
DEFAULT_SUBGROUP_CAP = 10_000

# 'fork' keeps worker start cheap and lets shards share the chain read-only.
_PARALLEL_MIN_ORDER = 200_000


def _tuple_order(images) -> int:
    seen = [False] * len(images)
    orders = [1]
    for i in range(len(images)):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                length += 1
                j = images[j]
            orders.append(length)
    return lcm(*orders)


class _Chain:
    """Stabilizer chain with incremental deterministic Schreier-Sims.

    Level i stores base[i], the strong generators that fix base[:i] and move
    base[i], and the transversal {point: u} with base[i]^u == point.  New
    base points are the smallest point moved by the offending element, after
    any caller-supplied hint prefix.
    """

    def __init__(self, degree: int, base_hint: Iterable[int] = ()):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.base: list[int] = []
        self.gens: list[list[tuple[int, ...]]] = []
        self.transversal: list[dict[int, tuple[int, ...]]] = []
        for pt in base_hint:
            self._new_level(pt)

    def _new_level(self, pt: int):
        self.base.append(pt)
        self.gens.append([])
        self.transversal.append({pt: self.identity})

    def _level_gens(self, i: int) -> list[tuple[int, ...]]:
        out = []
        for lvl in range(i, len(self.base)):
            out.extend(self.gens[lvl])
        return out

    def sift(self, g, start: int = 0):
        """Reduce g by transversal representatives; identity iff g is a member."""
        for i in range(start, len(self.base)):
            img = g[self.base[i]]
            if img == self.base[i]:
                continue
            u = self.transversal[i].get(img)
            if u is None:
                return g
            g = _compose_images(g, _invert_images(u))
        return g

    def add(self, g):
        """Insert an element, extending the chain if it is not yet a member."""
        r = self.sift(g)
        if r == self.identity:
            return
        j = self._insert(r)
        for i in range(j, -1, -1):
            self._validate(i)

    def _insert(self, g) -> int:
        for i, pt in enumerate(self.base):
            if g[pt] != pt:
                self.gens[i].append(g)
                return i
        moved = min(i for i in range(self.degree) if g[i] != i)
        self._new_level(moved)
        self.gens[-1].append(g)
        return len(self.base) - 1

    def _validate(self, i: int):
        """Restore the chain condition at level i, assuming deeper levels hold:
        the orbit of base[i] is closed and every Schreier generator sifts to
        the identity through the rest of the chain."""
        while not self._schreier_pass(i):
            pass

    def _rebuild_orbit(self, i: int):
        gens_i = self._level_gens(i)
        trans = {self.base[i]: self.identity}
        frontier = [self.base[i]]
        while frontier:
            nxt = []
            for x in sorted(frontier):
                u = trans[x]
                for s in gens_i:
                    y = s[x]
                    if y not in trans:
                        trans[y] = _compose_images(u, s)
                        nxt.append(y)
            frontier = nxt
        self.transversal[i] = trans

    def _schreier_pass(self, i: int) -> bool:
        self._rebuild_orbit(i)
        trans = self.transversal[i]
        gens_i = self._level_gens(i)
        for x in sorted(trans):
            u = trans[x]
            for s in gens_i:
                ux = _compose_images(u, s)
                w = trans[ux[self.base[i]]]
                if ux == w:
                    continue
                r = self.sift(_compose_images(ux, _invert_images(w)), start=i + 1)
                if r != self.identity:
                    j = self._insert(r)
                    for k in range(j, i, -1):
                        self._validate(k)
                    return False
        return True

    @property
    def order(self) -> int:
        n = 1
        for trans in self.transversal:
            n *= len(trans)
        return n

    def element_images(self, shard: tuple[int, int] | None = None) -> Iterator[tuple[int, ...]]:
        """Stream every element exactly once as a product over the transversals.

        With shard=(k, m), only the cosets of the level-0 transversal whose
        sorted position is congruent to k mod m are produced, so the shards
        over k = 0..m-1 partition the group.
        """
        if not self.base:
            if shard is None or shard[0] == 0:
                yield self.identity
            return

        def rec(level):
            if level == len(self.base):
                yield self.identity
                return
            points = sorted(self.transversal[level])
            if level == 0 and shard is not None:
                points = points[shard[0] :: shard[1]]
            for pt in points:
                u = self.transversal[level][pt]
                for h in rec(level + 1):
                    yield _compose_images(h, u)

        yield from rec(0)


class PermGroup:
    """A permutation group of fixed degree, generated by explicit permutations."""

    def __init__(
        self,
        generators: Iterable[Permutation],
        degree: int | None = None,
        base_hint: Iterable[int] = (),
    ):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a generator-free group")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError("generator degree %d != %d" % (g.degree, degree))
        self.degree = degree
        self.generators = gens
        self._chain = _Chain(degree, base_hint)
        for g in gens:
            if not g.is_identity():
                self._chain.add(g.images)

    @property
    def order(self) -> int:
        return self._chain.order

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(self._chain.base)

    def __contains__(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        return self._chain.sift(p.images) == self._chain.identity

    def element_images(self, shard=None) -> Iterator[tuple[int, ...]]:
        return self._chain.element_images(shard)

    def elements(self) -> Iterator[Permutation]:
        """All elements in deterministic stream order, each exactly once."""
        for im in self._chain.element_images():
            yield Permutation(im)

    def orbits(self) -> list[list[int]]:
        """Orbits on points, by breadth-first closure under the generators."""
        gens = [g.images for g in self.generators]
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if not seen[start]:
                orbit = [start]
                seen[start] = True
                queue = [start]
                while queue:
                    nxt = []
                    for x in queue:
                        for g in gens:
                            y = g[x]
                            if not seen[y]:
                                seen[y] = True
                                orbit.append(y)
                                nxt.append(y)
                    queue = nxt
                out.append(sorted(orbit))
        return out

    def orbit_partition(self) -> SetPartition:
        return SetPartition.from_blocks(self.orbits(), self.degree)

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def is_semiregular(self) -> bool:
        order = self.order
        return all(len(o) == order for o in self.orbits())

    def point_stabilizer(self, point: int) -> PermGroup:
        """The subgroup fixing the given point.

        Rebuilding the chain with the point as first base element makes the
        deeper strong generators a generating set of the stabilizer.
        """
        if not 0 <= point < self.degree:
            raise ValueError("point %d outside 0..%d" % (point, self.degree - 1))
        chain = _Chain(self.degree, base_hint=(point,))
        for g in self.generators:
            if not g.is_identity():
                chain.add(g.images)
        gens = [Permutation(im) for im in chain._level_gens(1)]
        return PermGroup(gens, self.degree)

    def __repr__(self) -> str:
        return "PermGroup(degree=%d, order=%d)" % (self.degree, self.order)


@dataclass(frozen=True)
class PiSet:
    """The set of orbit partitions of a group's elements, as canonical codes."""

    degree: int
    codes: frozenset[bytes]
    source_order: int

    def __len__(self) -> int:
        return len(self.codes)

    def __contains__(self, p) -> bool:
        code = p.code() if isinstance(p, SetPartition) else bytes(p)
        return code in self.codes

    def partitions(self) -> Iterator[SetPartition]:
        """All member partitions, sorted by canonical code."""
        for code in sorted(self.codes):
            yield SetPartition(tuple(code))


_WORKER_GROUP: PermGroup | None = None


def _pi_init(group):
    global _WORKER_GROUP
    _WORKER_GROUP = group


def _pi_shard(args) -> set[bytes]:
    k, m = args
    return {_orbit_rgs(im) for im in _WORKER_GROUP.element_images(shard=(k, m))}


def pi_set(group: PermGroup, cap: int = DEFAULT_PI_CAP, workers: int = 1) -> PiSet:
    """Collect the orbit partition of every group element.

    Streams the whole group, so the order must not exceed `cap`; the raised
    error reports the cap that would be required.  With workers > 1 the
    element stream is sharded by level-0 coset and merged, which cannot
    change the resulting set.
    """
    order = group.order
    if order > cap:
        raise CapExceeded(
            "group order %d exceeds enumeration cap %d" % (order, cap), required=order
        )
    if workers > 1 and order >= _PARALLEL_MIN_ORDER and len(group.base) > 0:
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_pi_init, initargs=(group,)
        ) as pool:
            shards = pool.map(_pi_shard, [(k, workers) for k in range(workers)])
            codes: set[bytes] = set()
            for shard in shards:
                codes |= shard
    else:
        codes = {_orbit_rgs(im) for im in group.element_images()}
    return PiSet(group.degree, frozenset(codes), order)


def set_stabilizer_of_blocks(
    group: PermGroup, blocks: SetPartition, cap: int = DEFAULT_SUBGROUP_CAP
) -> PermGroup:
    """Subgroup of elements fixing every block of the partition setwise.

    Found by filtering the element stream, so the group order is capped.
    """
    if blocks.degree != group.degree:
        raise ValueError("partition degree mismatch")
    if group.order > cap:
        raise CapExceeded(
            "group order %d exceeds stream cap %d" % (group.order, cap), required=group.order
        )
    rgs = blocks.rgs
    chain = _Chain(group.degree)
    gens: list[Permutation] = []
    for im in group.element_images():
        if all(rgs[im[i]] == rgs[i] for i in range(group.degree)):
            if chain.sift(im) != chain.identity:
                chain.add(im)
                gens.append(Permutation(im))
    return PermGroup(gens, group.degree)


def induced_block_action(group: PermGroup, blocks: SetPartition) -> PermGroup:
    """The action induced on the blocks of an invariant partition.

    Block k is the k-th block in least-element order.  Raises ValueError if
    some generator fails to permute the blocks.
    """
    if blocks.degree != group.degree:
        raise ValueError("partition degree mismatch")
    rgs = blocks.rgs
    reps = {}
    for i, lab in enumerate(rgs):
        reps.setdefault(lab, i)
    images = []
    for g in group.generators:
        im = [rgs[g.images[reps[lab]]] for lab in range(blocks.block_count)]
        for i, lab in enumerate(rgs):
            if rgs[g.images[i]] != im[lab]:
                raise ValueError("partition is not invariant under %s" % g)
        images.append(Permutation(tuple(im)))
    return PermGroup(images, blocks.block_count)


def _mulclose(gens, degree: int, limit: int | None = None):
    """Closure of a generator list under composition, as a frozenset of tuples."""
    identity = tuple(range(degree))
    els = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = _compose_images(a, s)
                if b not in els:
                    if limit is not None and len(els) >= limit:
                        return None
                    els.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(els)


def subgroups(
    group: PermGroup,
    order_cap: int | None = None,
    enumeration_cap: int = DEFAULT_SUBGROUP_CAP,
) -> list[PermGroup]:
    """Every subgroup (each distinct element set once), smallest orders first.

    Subgroups are grown from the trivial group by adjoining one cyclic group
    of prime-power order at a time.  Every finite group is generated by its
    elements of prime-power order, so each subgroup is reached along a path
    of such extensions; insoluble subgroups are found too.
    """
    if group.order > enumeration_cap:
        raise CapExceeded(
            "group order %d exceeds enumeration cap %d" % (group.order, enumeration_cap),
            required=group.order,
        )
    degree = group.degree
    identity = tuple(range(degree))

    cyclics: dict[frozenset, tuple[int, ...]] = {}
    for im in sorted(group.element_images()):
        if im != identity and is_prime_power(_tuple_order(im)):
            powers = [im]
            while powers[-1] != identity:
                powers.append(_compose_images(powers[-1], im))
            cyclics.setdefault(frozenset(powers), im)
    cyclic_items = sorted(cyclics.items(), key=lambda kv: kv[1])

    trivial = frozenset({identity})
    found: dict[frozenset, tuple] = {trivial: ()}
    queue = [trivial]
    while queue:
        nxt = []
        for h_set in queue:
            h_gens = found[h_set]
            for c_set, g in cyclic_items:
                if c_set <= h_set:
                    continue
                k_set = _mulclose(h_gens + (g,), degree, limit=order_cap)
                if k_set is not None and k_set not in found:
                    found[k_set] = h_gens + (g,)
                    nxt.append(k_set)
        queue = nxt

    items = sorted(found.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    return [
        PermGroup([Permutation(g) for g in gens], degree)
        for els, gens in items
        if order_cap is None or len(els) <= order_cap
    ]
