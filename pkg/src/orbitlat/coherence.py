"""Decision procedures for closure properties of a group's orbit partitions.

A group is join-coherent when the set of its elements' orbit partitions is
closed under the lattice join, and meet-coherent for the meet.  Both are
decided by scanning all pairs of distinct partitions in lexicographic order
of their canonical codes; the first failing pair found this way is the
lexicographically least one, which makes failure reports reproducible.
"""

from __future__ import annotations

import json
import time
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd

from .arith import factorize, is_prime_power
from .errors import CapExceeded
from .groups import DEFAULT_PI_CAP, PermGroup, PiSet, pi_set, subgroups, _tuple_order
from .partitions import SetPartition, is_chain, join_codes, meet_codes
from .perms import Permutation, _orbit_rgs

_REPORT_FIELDS = (
    "group",
    "degree",
    "order",
    "pi_size",
    "join_coherent",
    "meet_coherent",
    "is_chain",
    "join_witness",
    "meet_witness",
    "ms_elapsed",
)


@dataclass
class CoherenceReport:
    """Verdicts for one group; unevaluated checks stay None."""

    group: str
    degree: int
    order: int
    pi_size: int
    join_coherent: bool | None = None
    meet_coherent: bool | None = None
    is_chain: bool | None = None
    join_witness: tuple[SetPartition, SetPartition] | None = None
    meet_witness: tuple[SetPartition, SetPartition] | None = None
    ms_elapsed: int = 0

    def to_json(self) -> str:
        def render(value):
            if isinstance(value, tuple):
                return [str(p) for p in value]
            return value

        return json.dumps(
            {name: render(getattr(self, name)) for name in _REPORT_FIELDS}
        )


def _scan_row_serial(codes, codeset, i, op):
    a = codes[i]
    for j in range(i + 1, len(codes)):
        if bytes(op(a, codes[j])) not in codeset:
            return j
    return None


_SCAN_STATE: tuple | None = None


def _scan_init(codes, op_name):
    global _SCAN_STATE
    op = join_codes if op_name == "join" else meet_codes
    _SCAN_STATE = (codes, frozenset(codes), op)


def _scan_row_task(i):
    codes, codeset, op = _SCAN_STATE
    return _scan_row_serial(codes, codeset, i, op)


def _closure_witness(pi: PiSet, op_name: str, workers: int = 1):
    """First pair (by code order) whose join/meet escapes the set, or None.

    Rows are scanned in order even with several workers, so the witness does
    not depend on the worker count.
    """
    codes = sorted(pi.codes)
    op = join_codes if op_name == "join" else meet_codes
    m = len(codes)
    if workers > 1 and m >= 64:
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_scan_init, initargs=(codes, op_name)
        ) as pool:
            chunk = max(1, m // (workers * 16))
            for i, j in enumerate(pool.map(_scan_row_task, range(m), chunksize=chunk)):
                if j is not None:
                    pool.shutdown(wait=False, cancel_futures=True)
                    return (
                        SetPartition(tuple(codes[i])),
                        SetPartition(tuple(codes[j])),
                    )
        return None
    codeset = frozenset(codes)
    for i in range(m):
        j = _scan_row_serial(codes, codeset, i, op)
        if j is not None:
            return SetPartition(tuple(codes[i])), SetPartition(tuple(codes[j]))
    return None


def _has_element_of_full_order(group: PermGroup) -> bool:
    order = group.order
    return any(_tuple_order(im) == order for im in group.element_images())


def analyze(
    group: PermGroup,
    description: str = "",
    join: bool = True,
    meet: bool = True,
    chain: bool = True,
    cap: int = DEFAULT_PI_CAP,
    workers: int = 1,
) -> CoherenceReport:
    """Run the requested coherence checks and assemble one report."""
    t0 = time.monotonic()
    pi = pi_set(group, cap=cap, workers=workers)
    report = CoherenceReport(
        group=description, degree=group.degree, order=pi.source_order, pi_size=len(pi)
    )
    if join:
        witness = _closure_witness(pi, "join", workers)
        report.join_coherent = witness is None
        report.join_witness = witness
    if meet:
        witness = _closure_witness(pi, "meet", workers)
        report.meet_coherent = witness is None
        report.meet_witness = witness
    if chain:
        report.is_chain = is_chain(pi.partitions())
    report.ms_elapsed = int((time.monotonic() - t0) * 1000)
    return report


def check_join_coherent(
    group: PermGroup, description: str = "", cap: int = DEFAULT_PI_CAP, workers: int = 1
) -> CoherenceReport:
    return analyze(group, description, join=True, meet=False, chain=False, cap=cap, workers=workers)


def check_meet_coherent(
    group: PermGroup, description: str = "", cap: int = DEFAULT_PI_CAP, workers: int = 1
) -> CoherenceReport:
    return analyze(group, description, join=False, meet=True, chain=False, cap=cap, workers=workers)


@dataclass(frozen=True)
class ChainClassification:
    is_chain: bool
    group_is_cyclic_prime_power: bool


def classify_chain(group: PermGroup, cap: int = DEFAULT_PI_CAP) -> ChainClassification:
    """Whether the orbit partitions form a chain, and the structural test that
    must agree with it for finite groups: prime-power order plus an element
    whose order is the full group order."""
    pi = pi_set(group, cap=cap)
    chain = is_chain(pi.partitions())
    order = group.order
    structural = order == 1 or (is_prime_power(order) and _has_element_of_full_order(group))
    return ChainClassification(chain, structural)


def find_witness_element(
    group: PermGroup, partition: SetPartition, cap: int = DEFAULT_PI_CAP
) -> Permutation | None:
    """First element in stream order whose orbit partition equals P, if any."""
    if partition.degree != group.degree:
        raise ValueError("degree mismatch")
    if group.order > cap:
        raise CapExceeded(
            "group order %d exceeds cap %d" % (group.order, cap), required=group.order
        )
    want = partition.code()
    for im in group.element_images():
        if _orbit_rgs(im) == want:
            return Permutation(im)
    return None


def _merge_components(a: bytes, b: bytes) -> bytes:
    """Orbit partition of the group generated by two partitions' relations,
    by breadth-first search over shared blocks.  This is deliberately an
    independent route from the disjoint-set join, used to cross-validate it."""
    n = len(a)
    blocks_a: dict[int, list[int]] = {}
    blocks_b: dict[int, list[int]] = {}
    for i in range(n):
        blocks_a.setdefault(a[i], []).append(i)
        blocks_b.setdefault(b[i], []).append(i)
    label = [-1] * n
    nxt = 0
    for start in range(n):
        if label[start] < 0:
            label[start] = nxt
            queue = [start]
            while queue:
                x = queue.pop()
                for bucket in (blocks_a[a[x]], blocks_b[b[x]]):
                    for y in bucket:
                        if label[y] < 0:
                            label[y] = nxt
                            queue.append(y)
            nxt += 1
    return bytes(label)


def check_subgroup_characterization(group: PermGroup, cap: int = 10_000) -> bool:
    """True iff every two-generated subgroup's orbit partition is realized by
    a single element.

    The subgroup's orbits are computed by component search over the two
    elements' orbit partitions, not by the lattice join, so agreement with
    check_join_coherent cross-validates both procedures.
    """
    if group.order > cap:
        raise CapExceeded(
            "group order %d exceeds cap %d" % (group.order, cap), required=group.order
        )
    pi = pi_set(group)
    codes = sorted(pi.codes)
    for i, a in enumerate(codes):
        for b in codes[i:]:
            if _merge_components(a, b) not in pi.codes:
                return False
    return True


# --- classification of groups with a regular normal cyclic subgroup --------


def _unit_group_subgroups(n: int) -> list[tuple[int, ...]]:
    """All subgroups of the unit group mod n, each as a sorted element tuple."""
    units = [u for u in range(1, n + 1) if gcd(u, n) == 1] if n > 1 else [0]
    if n == 1:
        return [(0,)]

    def closure(seed: frozenset[int]) -> frozenset[int]:
        els = set(seed) | {1 % n}
        frontier = list(els)
        while frontier:
            nxt = []
            for x in frontier:
                for y in list(els):
                    z = x * y % n
                    if z not in els:
                        els.add(z)
                        nxt.append(z)
            frontier = nxt
        return frozenset(els)

    found = {closure(frozenset())}
    queue = [closure(frozenset())]
    while queue:
        nxt = []
        for h in queue:
            for u in units:
                if u not in h:
                    k = closure(h | {u})
                    if k not in found:
                        found.add(k)
                        nxt.append(k)
        queue = nxt
    return sorted((tuple(sorted(h)) for h in found), key=lambda t: (len(t), t))


def _affine_group(n: int, h: tuple[int, ...]) -> PermGroup:
    """Z_n extended by the multipliers in h, acting on Z_n."""
    gens = [Permutation(tuple((x + 1) % n for x in range(n)))]
    for u in h:
        gens.append(Permutation(tuple(x * u % n for x in range(n))))
    return PermGroup(gens, n)


def _predict_normal_cyclic(n: int, h: tuple[int, ...]) -> bool:
    """Classification prediction for Z_n extended by multiplier subgroup h.

    Recomputed from first principles: split n into prime-power factors m_i;
    the kernel H_i of h acting away from factor i must multiply up to |h|
    (product decomposition), each factor group must be cyclic or the
    p^(a-1)+1 extension when a > 1 (any multiplier group is allowed on a
    prime factor, where the extension lies inside the full Frobenius group),
    and the factor group orders must be mutually coprime.
    """
    if n == 1:
        return True
    factors = sorted((p, a, p**a) for p, a in factorize(n).items())
    kernel_sizes = []
    factor_orders = []
    for p, a, m in factors:
        other = n // m
        kernel = sorted({u % m for u in h if u % other == 1 % other})
        kernel_sizes.append(len(kernel))
        factor_orders.append(m * len(kernel))
        if a > 1:
            r = p ** (a - 1) + 1
            allowed = {1 % m}
            x = r % m
            while x not in allowed:
                allowed.add(x)
                x = x * r % m
            if set(kernel) not in ({1 % m}, allowed):
                return False
    prod = 1
    for s in kernel_sizes:
        prod *= s
    if prod != len(h):
        return False
    for i in range(len(factor_orders)):
        for j in range(i + 1, len(factor_orders)):
            if gcd(factor_orders[i], factor_orders[j]) != 1:
                return False
    return True


@dataclass(frozen=True)
class NormalCyclicEntry:
    multipliers: tuple[int, ...]
    order: int
    verdict: bool
    prediction: bool

    @property
    def agrees(self) -> bool:
        return self.verdict == self.prediction


@dataclass(frozen=True)
class NormalCyclicReport:
    n: int
    entries: tuple[NormalCyclicEntry, ...]

    @property
    def all_agree(self) -> bool:
        return all(e.agrees for e in self.entries)


def verify_normal_cyclic_classification(n: int, workers: int = 1) -> NormalCyclicReport:
    """Compare computed join-coherence against the structural prediction for
    every extension of the regular cyclic group Z_n by unit multipliers."""
    if not 1 <= n <= 64:
        raise ValueError("n must be between 1 and 64")
    entries = []
    for h in _unit_group_subgroups(n):
        group = _affine_group(n, h)
        report = check_join_coherent(group, workers=workers)
        entries.append(
            NormalCyclicEntry(
                multipliers=h,
                order=group.order,
                verdict=bool(report.join_coherent),
                prediction=_predict_normal_cyclic(n, h),
            )
        )
    return NormalCyclicReport(n, tuple(entries))


_CENSUS_DEGREE_MAX = 6


def census(degree: int, cap: int = DEFAULT_PI_CAP, workers: int = 1) -> Iterator[dict]:
    """Analyze every subgroup of the symmetric group of the given degree.

    Yields one record per subgroup, smallest orders first and otherwise in a
    fixed deterministic order, followed by a closing record under the single
    key "summary".  Degrees above 6 are refused; the subgroup count grows too
    quickly for an exhaustive sweep.
    """
    if not 1 <= degree <= _CENSUS_DEGREE_MAX:
        raise ValueError("census degree must be between 1 and %d" % _CENSUS_DEGREE_MAX)
    from .constructions import symmetric_group

    subs = subgroups(symmetric_group(degree))
    counts = {
        "transitive": 0,
        "join_coherent": 0,
        "meet_coherent": 0,
        "join_coherent_transitive": 0,
        "meet_coherent_transitive": 0,
    }
    for index, sub in enumerate(subs):
        report = analyze(sub, join=True, meet=True, chain=True, cap=cap, workers=workers)
        transitive = sub.is_transitive()
        counts["transitive"] += transitive
        counts["join_coherent"] += report.join_coherent
        counts["meet_coherent"] += report.meet_coherent
        counts["join_coherent_transitive"] += report.join_coherent and transitive
        counts["meet_coherent_transitive"] += report.meet_coherent and transitive
        yield {
            "index": index,
            "degree": degree,
            "order": report.order,
            "transitive": transitive,
            "pi_size": report.pi_size,
            "join_coherent": report.join_coherent,
            "meet_coherent": report.meet_coherent,
            "is_chain": report.is_chain,
            "generators": [p.cycle_string() for p in sub.generators],
        }
    yield {"summary": {"degree": degree, "groups": len(subs), **counts}}
