"""Executable forms of the two constructive realizability criteria.

Given a target partition, decide whether it is the orbit partition of some
element of an imprimitive wreath product or of a symmetric-group centralizer,
and when it is, actually produce such an element.  Both builders follow the
constructive halves of the corresponding proofs step by step, then assert
their postconditions, so a slip in the bookkeeping cannot survive testing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import PermGroup
from .partitions import SetPartition, _canonical
from .perms import Permutation, _orbit_rgs


@dataclass(frozen=True)
class WreathConditions:
    """Report for the wreath-product criterion.

    c1: the induced partition of the block set is an orbit partition of H.
    c2: every within-block restriction is an orbit partition of G.
    c4: blocks equivalent under the induced partition can be aligned by a
        translation from G.  (The remaining condition of the criterion
        concerns infinite parts only and is vacuous here.)
    """

    c1: bool
    c2: bool
    c4: bool

    @property
    def overall(self) -> bool:
        return self.c1 and self.c2 and self.c4


_pi_code_cache: dict[tuple, frozenset[bytes]] = {}


def _pi_codes(group: PermGroup) -> frozenset[bytes]:
    key = (group.degree, tuple(p.images for p in group.generators))
    got = _pi_code_cache.get(key)
    if got is None:
        got = frozenset(_orbit_rgs(im) for im in group.element_images())
        _pi_code_cache[key] = got
    return got


def _find_by_code(group: PermGroup, code: bytes) -> Permutation | None:
    """First element in stream order with the given orbit-partition code."""
    for im in group.element_images():
        if _orbit_rgs(im) == code:
            return Permutation(im)
    return None


def induced_block_partition(partition: SetPartition, block_size: int) -> SetPartition:
    """The partition of {0..k-1} joining y and z when some part meets both
    contiguous blocks [y*s, (y+1)*s) and [z*s, (z+1)*s); closed transitively."""
    labels = partition.rgs
    count = partition.degree // block_size
    parent = list(range(count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    touched: dict[int, int] = {}
    for pt, lab in enumerate(labels):
        y = pt // block_size
        if lab in touched:
            ra, rb = find(touched[lab]), find(y)
            if ra != rb:
                if rb < ra:
                    ra, rb = rb, ra
                parent[rb] = ra
            touched[lab] = ra
        else:
            touched[lab] = y
    return SetPartition(_canonical([find(y) for y in range(count)]))


def restricted_partition(partition: SetPartition, block: int, block_size: int) -> SetPartition:
    """The partition of X induced on the contiguous block with index `block`."""
    base = block * block_size
    return SetPartition(_canonical(partition.rgs[base : base + block_size]))


def _translation(g_group: PermGroup, labels, dx: int, y: int, z: int) -> Permutation | None:
    """First c in G with (x, y) ~ (x c, z) for every x, if one exists."""
    ybase, zbase = y * dx, z * dx
    for im in g_group.element_images():
        if all(labels[ybase + x] == labels[zbase + im[x]] for x in range(dx)):
            return Permutation(im)
    return None


def wreath_partition_conditions(
    partition: SetPartition, g_group: PermGroup, h_group: PermGroup
) -> WreathConditions:
    """Decide whether the partition is realizable as an orbit partition in
    the imprimitive wreath product of G by H, condition by condition."""
    dx, dy = g_group.degree, h_group.degree
    if partition.degree != dx * dy:
        raise ValueError(
            "partition degree %d does not match %d x %d" % (partition.degree, dx, dy)
        )
    tilde = induced_block_partition(partition, dx)
    c1 = tilde.code() in _pi_codes(h_group)
    g_codes = _pi_codes(g_group)
    c2 = all(
        restricted_partition(partition, y, dx).code() in g_codes for y in range(dy)
    )
    labels = partition.rgs
    c4 = True
    for part in tilde.blocks():
        for y, z in zip(part, part[1:]):
            if _translation(g_group, labels, dx, y, z) is None:
                c4 = False
                break
        if not c4:
            break
    return WreathConditions(c1, c2, c4)


def build_wreath_element(
    partition: SetPartition, g_group: PermGroup, h_group: PermGroup
) -> Permutation:
    """Produce an element of the imprimitive wreath product of G by H whose
    orbit partition is the given one.

    Follows the constructive proof: pick h realizing the induced block
    partition, translations c along each h-orbit, then correct the first
    translation of each orbit so the round-trip product realizes the
    within-block restriction at the orbit representative.
    """
    conditions = wreath_partition_conditions(partition, g_group, h_group)
    if not conditions.overall:
        for name in ("c1", "c2", "c4"):
            if not getattr(conditions, name):
                raise ValueError("wreath criterion fails at condition %s" % name)
    dx, dy = g_group.degree, h_group.degree
    labels = partition.rgs
    tilde = induced_block_partition(partition, dx)
    h = _find_by_code(h_group, tilde.code())
    assert h is not None

    seen = [False] * dy
    f_parts: dict[int, Permutation] = {}
    for start in range(dy):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        nxt = h(start)
        while nxt != start:
            orbit.append(nxt)
            seen[nxt] = True
            nxt = h(nxt)
        m = len(orbit)
        trans = []
        for t in range(m):
            c = _translation(g_group, labels, dx, orbit[t], orbit[(t + 1) % m])
            assert c is not None
            trans.append(c)
        b = Permutation.identity(dx)
        for c in trans:
            b = b * c
        g_rep = _find_by_code(g_group, restricted_partition(partition, start, dx).code())
        assert g_rep is not None
        trans[0] = g_rep * b.inverse() * trans[0]
        for t, y in enumerate(orbit):
            f_parts[y] = trans[t]

    images = [0] * (dx * dy)
    for y in range(dy):
        fy = f_parts[y]
        target = h(y) * dx
        for x in range(dx):
            images[y * dx + x] = target + fy(x)
    k = Permutation(tuple(images))

    for y in range(dy):
        base = min(k(y * dx + x) // dx for x in range(dx))
        assert all(k(y * dx + x) // dx == base for x in range(dx)), "block system broken"
    assert k.orbit_partition() == partition
    return k


def centralizer_partition_conditions(partition: SetPartition, g: Permutation) -> bool:
    """Whether the partition is the orbit partition of an element commuting
    with g: no part may mix points from g-cycles of different lengths, and
    applying g must fix the partition."""
    if partition.degree != g.degree:
        raise ValueError("degree mismatch")
    length_of = [0] * g.degree
    for cycle in g.cycles():
        for pt in cycle:
            length_of[pt] = len(cycle)
    for block in partition.blocks():
        if any(length_of[pt] != length_of[block[0]] for pt in block):
            return False
    return partition.apply(g) == partition


def build_centralizer_element(partition: SetPartition, g: Permutation) -> Permutation:
    """Produce an element commuting with g whose orbit partition is the
    given one.

    Follows the constructive proof: work inside each part of the join of the
    partition with g's orbit partition, pick one part of the partition
    there, choose one representative per g-cycle inside it, and route each
    representative to the next, closing the loop with a shift by the least t
    that maps the chosen part back to itself under g^t.
    """
    if not centralizer_partition_conditions(partition, g):
        raise ValueError("partition is not realized in the centralizer")
    n = g.degree
    cycles = g.cycles()
    cycle_index: dict[int, tuple[int, int]] = {}
    for ci, cycle in enumerate(cycles):
        for pos, pt in enumerate(cycle):
            cycle_index[pt] = (ci, pos)

    labels = partition.rgs
    block_of: dict[int, list[int]] = {}
    for pt, lab in enumerate(labels):
        block_of.setdefault(lab, []).append(pt)

    images = list(range(n))
    merged = partition | g.orbit_partition()
    for part in merged.blocks():
        p0 = set(block_of[labels[part[0]]])
        m = len(cycles[cycle_index[part[0]][0]])

        t = 1
        current = {g(pt) for pt in p0}
        while current != p0:
            t += 1
            current = {g(pt) for pt in current}
        assert 1 <= t <= m and m % t == 0

        reps = []
        seen_cycles = set()
        for pt in sorted(p0):
            ci = cycle_index[pt][0]
            if ci not in seen_cycles:
                seen_cycles.add(ci)
                reps.append(pt)
        assert {cycle_index[pt][0] for pt in part} == seen_cycles

        for j, rep in enumerate(reps):
            cycle = cycles[cycle_index[rep][0]]
            base = cycle_index[rep][1]
            if j + 1 < len(reps):
                nxt_cycle = cycles[cycle_index[reps[j + 1]][0]]
                nxt_base = cycle_index[reps[j + 1]][1]
                shift = 0
            else:
                nxt_cycle = cycles[cycle_index[reps[0]][0]]
                nxt_base = cycle_index[reps[0]][1]
                shift = t
            for e in range(m):
                src = cycle[(base + e) % m]
                images[src] = nxt_cycle[(nxt_base + e + shift) % m]

    h = Permutation(tuple(images))
    assert h * g == g * h, "constructed element does not commute"
    assert h.orbit_partition() == partition
    return h
