import random

import pytest
from hypothesis import given, settings, strategies as st

from orbitlat.errors import PartitionFormatError
from orbitlat.partitions import SetPartition, all_partitions, is_chain
from orbitlat.perms import Permutation


# --- independent oracles -------------------------------------------------
#
# The join oracle merges blocks to a fixpoint; the meet oracle intersects
# blocks pairwise.  Neither shares code with the library implementations.

def join_oracle(P, Q):
    blocks = [set(b) for b in P.blocks()] + [set(b) for b in Q.blocks()]
    changed = True
    while changed:
        changed = False
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                if blocks[i] and blocks[j] and blocks[i] & blocks[j]:
                    blocks[i] |= blocks[j]
                    blocks[j] = set()
                    changed = True
    return SetPartition.from_blocks([b for b in blocks if b], P.degree)


def meet_oracle(P, Q):
    out = []
    for a in P.blocks():
        for b in Q.blocks():
            c = set(a) & set(b)
            if c:
                out.append(c)
    return SetPartition.from_blocks(out, P.degree)


def random_partition(rng, degree):
    rgs, mx = [0], 0
    for _ in range(degree - 1):
        lab = rng.randint(0, mx + 1)
        rgs.append(lab)
        mx = max(mx, lab)
    return SetPartition(tuple(rgs))


@st.composite
def partitions_st(draw, max_degree=9):
    n = draw(st.integers(1, max_degree))
    rgs, mx = [0], 0
    for _ in range(n - 1):
        lab = draw(st.integers(0, mx + 1))
        rgs.append(lab)
        mx = max(mx, lab)
    return SetPartition(tuple(rgs))


def pair_st(max_degree=9):
    return partitions_st(max_degree).flatmap(
        lambda p: st.tuples(st.just(p), partitions_st().filter(lambda q: q.degree == p.degree))
    )


class TestCanonical:
    def test_from_blocks(self):
        p = SetPartition.from_blocks([[2, 3], [0], [1]], 4)
        assert p.rgs == (0, 1, 2, 2)
        assert p.blocks() == [[0], [1], [2, 3]]

    def test_block_order_irrelevant(self):
        a = SetPartition.from_blocks([[0, 2], [1, 3]], 4)
        b = SetPartition.from_blocks([[3, 1], [2, 0]], 4)
        assert a == b

    def test_bad_blocks(self):
        with pytest.raises(ValueError):
            SetPartition.from_blocks([[0, 1], [1, 2]], 3)
        with pytest.raises(ValueError):
            SetPartition.from_blocks([[0, 1]], 3)
        with pytest.raises(ValueError):
            SetPartition.from_blocks([[0, 3]], 3)
        with pytest.raises(ValueError):
            SetPartition.from_blocks([[0], []], 1)

    def test_rgs_validation(self):
        with pytest.raises(ValueError):
            SetPartition((1, 0))
        with pytest.raises(ValueError):
            SetPartition((0, 2))

    def test_text_roundtrip(self):
        p = SetPartition.from_blocks([[0, 1], [2], [3]], 4)
        assert str(p) == "{1,2|3|4}"
        assert SetPartition.from_string("{1,2|3|4}", 4) == p

    def test_text_errors(self):
        with pytest.raises(PartitionFormatError):
            SetPartition.from_string("1,2|3", 3)
        with pytest.raises(PartitionFormatError):
            SetPartition.from_string("{1,2||3}", 3)
        with pytest.raises(PartitionFormatError):
            SetPartition.from_string("{1,2}", 3)


class TestLattice:
    def test_join_example(self):
        a = SetPartition.from_blocks([[0, 1], [2], [3]], 4)
        b = SetPartition.from_blocks([[1, 2], [0], [3]], 4)
        assert (a | b).blocks() == [[0, 1, 2], [3]]

    def test_meet_example(self):
        a = SetPartition.from_blocks([[0, 1, 2], [3]], 4)
        b = SetPartition.from_blocks([[0, 1], [2, 3]], 4)
        assert (a & b).blocks() == [[0, 1], [2], [3]]

    def test_against_oracles_random(self):
        rng = random.Random(20260823)
        for _ in range(400):
            n = rng.randint(1, 12)
            p, q = random_partition(rng, n), random_partition(rng, n)
            assert p | q == join_oracle(p, q)
            assert p & q == meet_oracle(p, q)

    @given(pair_st())
    @settings(max_examples=200)
    def test_join_meet_oracle_props(self, pq):
        p, q = pq
        assert p | q == join_oracle(p, q)
        assert p & q == meet_oracle(p, q)

    @given(pair_st())
    @settings(max_examples=100)
    def test_lattice_axioms(self, pq):
        p, q = pq
        assert p | q == q | p and p & q == q & p
        assert p | p == p and p & p == p
        assert (p & q).refines(p) and p.refines(p | q)
        # absorption
        assert p | (p & q) == p and p & (p | q) == p

    def test_distributive_inequalities_exhaustive_small(self):
        # The one-sided laws hold in any lattice.
        for n in (1, 2, 3, 4):
            parts = list(all_partitions(n))
            for p in parts:
                for q in parts:
                    for r in parts:
                        assert ((p & q) | (p & r)).refines(p & (q | r))
                        assert (p | (q & r)).refines((p | q) & (p | r))

    def test_partition_lattice_is_not_distributive(self):
        # The three pairings of {0,1,2} with top and bottom form an M3
        # diamond, the canonical non-distributive lattice, so the two-sided
        # distributive law cannot hold for degree >= 3.
        p = SetPartition.from_blocks([[0, 1], [2]], 3)
        q = SetPartition.from_blocks([[0, 2], [1]], 3)
        r = SetPartition.from_blocks([[1, 2], [0]], 3)
        assert p & (q | r) == p
        assert (p & q) | (p & r) == SetPartition.discrete(3)

    def test_bounds(self):
        p = SetPartition.from_blocks([[0, 2], [1]], 3)
        assert SetPartition.discrete(3).refines(p)
        assert p.refines(SetPartition.single_block(3))

    def test_refines_iff_join_meet(self):
        for n in (2, 3, 4):
            parts = list(all_partitions(n))
            for p in parts:
                for q in parts:
                    r = p.refines(q)
                    assert r == (p | q == q)
                    assert r == (p & q == p)

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            SetPartition.discrete(3) | SetPartition.discrete(4)


class TestApply:
    def test_blocks_move(self):
        p = SetPartition.from_blocks([[0, 1], [2, 3]], 4)
        g = Permutation.from_cycles("(1 3)", 4)
        assert p.apply(g).blocks() == [[0, 3], [1, 2]]

    def test_join_commutes_with_apply(self):
        rng = random.Random(7)
        for _ in range(100):
            n = rng.randint(2, 8)
            p, q = random_partition(rng, n), random_partition(rng, n)
            images = list(range(n))
            rng.shuffle(images)
            g = Permutation(tuple(images))
            assert (p | q).apply(g) == p.apply(g) | q.apply(g)
            assert (p & q).apply(g) == p.apply(g) & q.apply(g)


class TestChains:
    def test_power_partitions_of_4_cycle(self):
        g = Permutation.from_cycles("(1 2 3 4)", 4)
        parts = {(g ** k).orbit_partition() for k in range(4)}
        assert parts == {
            SetPartition.discrete(4),
            SetPartition.from_blocks([[0, 2], [1, 3]], 4),
            SetPartition.single_block(4),
        }
        assert is_chain(parts)

    def test_incomparable(self):
        a = SetPartition.from_blocks([[0, 1], [2], [3]], 4)
        b = SetPartition.from_blocks([[2, 3], [0], [1]], 4)
        assert not is_chain({a, b})

    def test_singleton_and_empty(self):
        assert is_chain([])
        assert is_chain([SetPartition.discrete(5)])


class TestCoarseningMaps:
    """Behaviour of P -> P | B, the projection onto partitions above B."""

    def test_join_homomorphism_and_surjectivity(self):
        # The join half holds in any lattice; checked here by enumeration.
        for n in (2, 3, 4):
            parts = list(all_partitions(n))
            for b in parts:
                above = {p for p in parts if b.refines(p)}
                image = {p | b for p in parts}
                assert image == above
                for p in parts:
                    for q in parts:
                        assert (p | q) | b == (p | b) | (q | b)

    def test_up_and_down_sets_are_sublattices(self):
        for n in (3, 4):
            parts = list(all_partitions(n))
            for b in parts:
                up = [p for p in parts if b.refines(p)]
                dn = [p for p in parts if p.refines(b)]
                for fam in (up, dn):
                    for p in fam:
                        for q in fam:
                            assert (p | q) in fam or not set(fam)
                            assert (p & q) in fam

    def test_meet_half_fails_without_distributivity(self):
        # (P & Q) | B == (P | B) & (Q | B) would need a distributive
        # lattice; the M3 diamond inside degree 3 breaks it.
        b = SetPartition.from_blocks([[0, 1], [2]], 3)
        p = SetPartition.from_blocks([[0, 2], [1]], 3)
        q = SetPartition.from_blocks([[1, 2], [0]], 3)
        assert (p & q) | b == b
        assert (p | b) & (q | b) == SetPartition.single_block(3)


class TestEnumeration:
    def test_bell_counts(self):
        # Bell numbers 1, 2, 5, 15, 52, 203
        for n, bell in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203)]:
            parts = list(all_partitions(n))
            assert len(parts) == bell
            assert len(set(parts)) == bell
