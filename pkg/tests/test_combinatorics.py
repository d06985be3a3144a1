from __future__ import annotations

from itertools import product
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from pqsym.combinatorics import (
    MultirectCoords,
    all_compositions,
    center,
    check_composition,
    check_partition,
    check_set_composition,
    compositions_of,
    interlacing_from_multirect,
    interlacing_from_partition,
    multirect_from_interlacing,
    partition_from_interlacing,
    partitions_of,
    reduce_interlacing,
    set_composition_size,
    set_compositions_of,
)


def ordered_bell(n: int) -> int:
    # a(n) = sum_k C(n, k) a(n - k): choose the first block
    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[n]


def stirling2(n: int, k: int) -> int:
    return sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1)) // factorial(k)


def profile_corners(lam):
    """Turning points of the diagram boundary, as contents ``column - row``.

    The boundary runs in from the right along the top edge, then alternates
    down steps and left steps, and leaves downward along the first column.
    """
    lam = list(lam)
    steps = ["L"]
    for i, r in enumerate(lam):
        steps.append("D")
        nxt = lam[i + 1] if i + 1 < len(lam) else 0
        steps += ["L"] * (r - nxt)
    steps.append("D")
    x, y = (lam[0] if lam else 0) + 1, 0
    turns = []
    for prev, step in zip(steps, steps[1:]):
        x, y = (x - 1, y) if prev == "L" else (x, y + 1)
        if prev != step:
            turns.append(x - y)
    return tuple(turns)


class TestCompositions:
    def test_small_lists(self):
        assert compositions_of(0) == [()]
        assert sorted(compositions_of(2)) == [(1, 1), (2,)]
        assert len(compositions_of(4)) == 8

    @pytest.mark.parametrize("n", range(1, 9))
    def test_count_and_distinct(self, n):
        comps = compositions_of(n)
        assert len(comps) == len(set(comps)) == 2 ** (n - 1)
        assert all(sum(c) == n and min(c) >= 1 for c in comps)

    def test_all_compositions(self):
        assert len(all_compositions(4)) == 1 + 1 + 2 + 4 + 8

    def test_rejects_zero_part(self):
        with pytest.raises(ValueError):
            check_composition((2, 0, 1))


class TestSetCompositions:
    def test_small(self):
        assert set_compositions_of(1) == [((1,),)]
        assert set(set_compositions_of(2)) == {((1, 2),), ((1,), (2,)), ((2,), (1,))}

    @pytest.mark.parametrize("n", range(0, 7))
    def test_ordered_bell_numbers(self, n):
        Ks = set_compositions_of(n)
        assert len(Ks) == len(set(Ks)) == ordered_bell(n)
        assert ordered_bell(n) == sum(factorial(k) * stirling2(n, k) for k in range(n + 1))
        for K in Ks:
            assert check_set_composition(K) == K
            assert set_composition_size(K) == n

    @pytest.mark.parametrize("n", range(0, 7))
    def test_brute_force_count(self, n):
        # set compositions of 1..n <-> words in 1..n whose letters form an initial segment
        count = sum(1 for w in product(range(1, n + 1), repeat=n) if set(w) == set(range(1, len(set(w)) + 1)))
        assert len(set_compositions_of(n)) == count

    def test_first_values(self):
        assert [len(set_compositions_of(n)) for n in range(1, 5)] == [1, 3, 13, 75]

    @pytest.mark.parametrize("bad", [[[1], []], [[1, 1]], [[2]], [[1], [3]]])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            check_set_composition(bad)


class TestPartitions:
    def test_counts(self):
        assert [len(partitions_of(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]

    def test_rejects_increasing(self):
        with pytest.raises(ValueError):
            check_partition((1, 2))


class TestCoordinates:
    def test_interlacing_examples(self):
        assert interlacing_from_partition((4, 4, 2)) == (4, 2, 0, -1, -3)
        assert interlacing_from_partition(()) == (0,)
        assert interlacing_from_partition((1,)) == (1, 0, -1)

    def test_center(self):
        assert center((4, 2, 0, -1, -3)) == 0
        assert center((0,)) == 0
        assert center((8, 6, 4, 3, 1)) == 4
        with pytest.raises(ValueError):
            center((1, 0))

    def test_partition_from_interlacing(self):
        assert partition_from_interlacing((4, 2, 0, -1, -3)) == ((4, 4, 2), 0)
        assert partition_from_interlacing((1, 0, -1)) == ((1,), 0)
        assert partition_from_interlacing((8, 6, 4, 3, 1)) == ((4, 4, 2), 4)
        assert partition_from_interlacing((5, 5, 3)) == partition_from_interlacing((3,))

    def test_reduce(self):
        assert reduce_interlacing((5, 5, 3)) == (3,)

    def test_multirect_examples(self):
        assert multirect_from_interlacing((4, 2, 0, -1, -3)) == MultirectCoords((2, 1, -3), (2, 2))
        assert multirect_from_interlacing((0,)) == MultirectCoords((0,), ())
        assert multirect_from_interlacing((8, 6, 4, 3, 1)) == MultirectCoords((2, 1, 1), (2, 2))
        assert interlacing_from_multirect(MultirectCoords((2, 1, -3), (2, 2))) == (4, 2, 0, -1, -3)
        assert interlacing_from_multirect(((0,), ())) == (0,)
        assert interlacing_from_multirect(((2, 1, 1), (2, 2))) == (8, 6, 4, 3, 1)

    @pytest.mark.parametrize("size", range(0, 13))
    def test_profile_walk_oracle(self, size):
        for lam in partitions_of(size):
            assert interlacing_from_partition(lam) == profile_corners(lam)

    @given(st.lists(st.integers(1, 9), max_size=7))
    def test_partition_round_trip(self, rows):
        lam = tuple(sorted(rows, reverse=True))
        xs = interlacing_from_partition(lam)
        assert center(xs) == 0
        assert partition_from_interlacing(xs) == (lam, 0)
        assert interlacing_from_multirect(multirect_from_interlacing(xs)) == xs

    @given(st.lists(st.integers(1, 9), max_size=6), st.integers(-10, 10))
    def test_shifted_diagram(self, rows, c):
        lam = tuple(sorted(rows, reverse=True))
        xs = tuple(x + c for x in interlacing_from_partition(lam))
        assert center(xs) == c
        assert partition_from_interlacing(xs) == (lam, c)

    @given(st.sets(st.integers(-12, 12), min_size=1, max_size=11))
    def test_arbitrary_decreasing_vectors(self, values):
        xs = tuple(sorted(values, reverse=True))
        if len(xs) % 2 == 0:
            xs = xs[:-1]
        pq = multirect_from_interlacing(xs)
        assert pq.m == (len(xs) - 1) // 2
        assert interlacing_from_multirect(pq) == xs
        assert all(v > 0 for v in pq.q) and all(v > 0 for v in pq.p[:-1])
