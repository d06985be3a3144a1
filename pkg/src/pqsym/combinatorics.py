"""Compositions, set compositions and coordinates on Young diagrams.

Plain tuples are used throughout:

* a composition is a tuple of positive ints, ``()`` being the composition of 0;
* a set composition is a tuple of blocks, each block a sorted tuple of ints;
* a partition is a weakly decreasing tuple of positive ints;
* interlacing coordinates are an odd-length decreasing tuple of ints.

Diagrams are drawn in the Russian convention, so a box in row ``i`` and
column ``j`` (both 1-based, French reading) sits above abscissa ``j - i``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

Composition = tuple[int, ...]
SetComposition = tuple[tuple[int, ...], ...]
Partition = tuple[int, ...]
Interlacing = tuple[int, ...]


class MultirectCoords(NamedTuple):
    """Multirectangular coordinates ``p_1..p_{m+1}`` and ``q_1..q_m``."""

    p: tuple[int, ...]
    q: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.q)


# -- validation -------------------------------------------------------------


def check_composition(parts: Iterable[int]) -> Composition:
    parts = tuple(parts)
    if any(not isinstance(i, int) or i < 1 for i in parts):
        raise ValueError(f"not a composition: {parts!r}")
    return parts


def check_partition(rows: Iterable[int]) -> Partition:
    rows = tuple(rows)
    if any(not isinstance(r, int) or r < 1 for r in rows):
        raise ValueError(f"partition rows must be positive ints: {rows!r}")
    if any(a < b for a, b in zip(rows, rows[1:])):
        raise ValueError(f"partition rows must be weakly decreasing: {rows!r}")
    return rows


def check_set_composition(blocks: Iterable[Iterable[int]]) -> SetComposition:
    """Validate and canonicalise an ordered set partition of ``{1..n}``."""
    canon = tuple(tuple(sorted(b)) for b in blocks)
    seen = [v for b in canon for v in b]
    if any(not b for b in canon):
        raise ValueError(f"set composition has an empty block: {canon!r}")
    if sorted(seen) != list(range(1, len(seen) + 1)):
        raise ValueError(f"blocks must partition {{1..n}}: {canon!r}")
    return canon


def set_composition_size(K: SetComposition) -> int:
    return sum(len(b) for b in K)


# -- enumeration ------------------------------------------------------------


def compositions_of(n: int) -> list[Composition]:
    """All compositions of ``n`` in reverse-lexicographic order.

    >>> compositions_of(3)
    [(3,), (2, 1), (1, 2), (1, 1, 1)]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return [()]
    out = []
    for first in range(n, 0, -1):
        out.extend((first,) + rest for rest in compositions_of(n - first))
    return out


def all_compositions(max_weight: int) -> list[Composition]:
    """Compositions of every weight ``0..max_weight``."""
    return [I for n in range(max_weight + 1) for I in compositions_of(n)]


def _set_compositions(elements: tuple[int, ...]) -> list[SetComposition]:
    if not elements:
        return [()]
    out = []
    for size in range(1, len(elements) + 1):
        for first in combinations(elements, size):
            rest = tuple(v for v in elements if v not in first)
            out.extend((first,) + tail for tail in _set_compositions(rest))
    return out


def set_compositions_of(n: int) -> list[SetComposition]:
    """All ordered set partitions of ``{1..n}``, reverse-lexicographic by blocks.

    The count is the ordered Bell (Fubini) number: 1, 1, 3, 13, 75, 541, ...
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sorted(_set_compositions(tuple(range(1, n + 1))), reverse=True)


def partitions_of(n: int, largest: int | None = None) -> list[Partition]:
    """Integer partitions of ``n`` with parts at most ``largest``."""
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        out.extend((first,) + rest for rest in partitions_of(n - first, first))
    return out


# -- Young diagram coordinates ----------------------------------------------


def interlacing_from_partition(lam: Sequence[int]) -> Interlacing:
    """Kerov interlacing coordinates of a (centered) Young diagram.

    Odd positions hold the local minima of the profile, which are the
    contents of the addable cells; even positions hold the local maxima,
    the contents of the removable cells.

    >>> interlacing_from_partition((4, 4, 2))
    (4, 2, 0, -1, -3)
    """
    lam = check_partition(lam)
    rows = lam + (0,)
    minima = []
    maxima = []
    for i, length in enumerate(rows, start=1):
        above = rows[i - 2] if i >= 2 else None
        # a box can be added at (i, length+1) iff the row above is longer
        if above is None or above > length:
            minima.append(length + 1 - i)
        if length > 0 and rows[i] < length:
            maxima.append(length - i)
    xs = sorted(minima + maxima, reverse=True)
    assert len(xs) == 2 * len(maxima) + 1
    return tuple(xs)


def _check_odd_weakly_decreasing(xs: Sequence[int]) -> tuple[int, ...]:
    xs = tuple(xs)
    if len(xs) % 2 == 0:
        raise ValueError(f"interlacing coordinates need odd length, got {len(xs)}")
    if any(a < b for a, b in zip(xs, xs[1:])):
        raise ValueError(f"interlacing coordinates must be decreasing: {xs!r}")
    return xs


def center(xs: Sequence[int]) -> int:
    """Shift ``c`` of the diagram with interlacing coordinates ``xs``.

    The profile is ``omega(x) = sum_odd |x - x_i| - sum_even |x - x_i|``,
    whose asymptotes are ``y = -x + c`` and ``y = x - c`` with
    ``c = x_1 - x_2 + x_3 - ...``.  Centered diagrams have ``c == 0``.
    """
    xs = _check_odd_weakly_decreasing(xs)
    return sum(x if i % 2 == 0 else -x for i, x in enumerate(xs))


def reduce_interlacing(xs: Sequence[int]) -> Interlacing:
    """Delete equal adjacent pairs until the sequence is strictly decreasing."""
    xs = _check_odd_weakly_decreasing(xs)
    out: list[int] = []
    for x in xs:
        if out and out[-1] == x:
            out.pop()
        else:
            out.append(x)
    assert all(a > b for a, b in zip(out, out[1:]))
    return tuple(out)


def multirect_from_interlacing(xs: Sequence[int]) -> MultirectCoords:
    xs = tuple(xs)
    if len(xs) % 2 == 0:
        raise ValueError(f"interlacing coordinates need odd length, got {len(xs)}")
    m = len(xs) // 2
    p = tuple(xs[2 * i] - xs[2 * i + 1] for i in range(m)) + (xs[2 * m],)
    q = tuple(xs[2 * i + 1] - xs[2 * i + 2] for i in range(m))
    return MultirectCoords(p, q)


def interlacing_from_multirect(pq: MultirectCoords | tuple) -> Interlacing:
    p, q = (tuple(v) for v in pq)
    m = len(q)
    if len(p) != m + 1:
        raise ValueError(f"need len(p) == len(q) + 1, got {len(p)} and {m}")
    xs = [0] * (2 * m + 1)
    # x_{2i+1} = q_{i+1}+...+q_m + p_{i+1}+...+p_{m+1}; x_{2i} adds q_i
    for i in range(m + 1):
        xs[2 * i] = sum(q[i:]) + sum(p[i:])
        if i >= 1:
            xs[2 * i - 1] = sum(q[i - 1:]) + sum(p[i:])
    return tuple(xs)


def partition_from_interlacing(xs: Sequence[int]) -> tuple[Partition, int]:
    """Rebuild the (possibly non-centered) diagram; returns ``(lambda, c)``.

    The reduced coordinates give multirectangular blocks: ``p_i`` rows of
    length ``q_i + ... + q_m``, bottom block first.

    >>> partition_from_interlacing((8, 6, 4, 3, 1))
    ((4, 4, 2), 4)
    """
    reduced = reduce_interlacing(xs)
    c = center(reduced)
    p, q = multirect_from_interlacing(reduced)
    rows: list[int] = []
    for i in range(len(q)):
        rows.extend([sum(q[i:])] * p[i])
    lam = check_partition(rows)
    assert interlacing_from_partition(lam) == tuple(x - c for x in reduced)
    return lam, c
