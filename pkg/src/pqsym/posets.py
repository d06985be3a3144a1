"""Labeled ranked posets and their P-partitions.

Elements are labeled ``1..n``.  A poset is given by its cover relations and
is *ranked* when every cover rises by exactly one height level, heights
being lengths of longest chains below an element.

An order map ``r`` (stored as a tuple, ``r[v - 1]`` is the value at ``v``)
is weakly increasing along the order and strictly increasing out of
elements of odd height.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Sequence

from .combinatorics import SetComposition, check_set_composition, set_compositions_of

OrderMap = tuple[int, ...]


class PosetError(ValueError):
    """Raised for cyclic or non-ranked cover relations."""


@dataclass(frozen=True)
class RankedPoset:
    n: int
    covers: frozenset[tuple[int, int]]
    heights: tuple[int, ...]
    _lower: tuple[tuple[int, ...], ...] = field(repr=False, compare=False, default=())

    def height(self, v: int) -> int:
        return self.heights[v - 1]

    @property
    def V0(self) -> frozenset[int]:
        return frozenset(v for v in range(1, self.n + 1) if self.heights[v - 1] % 2 == 0)

    @property
    def V1(self) -> frozenset[int]:
        return frozenset(v for v in range(1, self.n + 1) if self.heights[v - 1] % 2 == 1)

    def lower_covers(self, v: int) -> tuple[int, ...]:
        return self._lower[v - 1]

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        return tuple(sorted(range(1, self.n + 1), key=lambda v: (self.heights[v - 1], v)))

    @cached_property
    def strict_order(self) -> frozenset[tuple[int, int]]:
        """All pairs ``(u, v)`` with ``u <_P v`` (transitive closure of covers)."""
        below: dict[int, set[int]] = {}
        for v in self.topological_order:
            acc: set[int] = set()
            for u in self.lower_covers(v):
                acc.add(u)
                acc |= below[u]
            below[v] = acc
        return frozenset((u, v) for v, us in below.items() for u in us)

    def comparable(self, u: int, v: int) -> bool:
        return u == v or (u, v) in self.strict_order or (v, u) in self.strict_order

    def to_json(self) -> dict:
        return {"n": self.n, "covers": [list(c) for c in sorted(self.covers)]}

    def __str__(self) -> str:
        covers = ", ".join(f"{u}<{v}" for u, v in sorted(self.covers))
        return f"RankedPoset(n={self.n}, covers=[{covers}])"


def validate_ranked(n: int, covers: Iterable[Sequence[int]]) -> RankedPoset:
    """Check that ``covers`` is the Hasse diagram of a ranked poset on ``1..n``."""
    if not isinstance(n, int) or n < 0:
        raise PosetError(f"n must be a nonnegative int, got {n!r}")
    pairs = set()
    for c in covers:
        u, v = c
        if not (1 <= u <= n and 1 <= v <= n):
            raise PosetError(f"cover {(u, v)} has a label outside 1..{n}")
        if u == v:
            raise PosetError(f"cycle detected: self-cover at {u}")
        pairs.add((int(u), int(v)))
    lower: list[list[int]] = [[] for _ in range(n)]
    upper: list[list[int]] = [[] for _ in range(n)]
    for u, v in pairs:
        lower[v - 1].append(u)
        upper[u - 1].append(v)

    # Kahn's algorithm, computing longest-chain heights on the way
    indeg = [len(ls) for ls in lower]
    heights = [0] * n
    ready = [v for v in range(1, n + 1) if indeg[v - 1] == 0]
    seen = 0
    while ready:
        u = ready.pop()
        seen += 1
        for v in upper[u - 1]:
            heights[v - 1] = max(heights[v - 1], heights[u - 1] + 1)
            indeg[v - 1] -= 1
            if indeg[v - 1] == 0:
                ready.append(v)
    if seen != n:
        raise PosetError("cycle detected in cover relations")
    for u, v in pairs:
        if heights[v - 1] != heights[u - 1] + 1:
            raise PosetError(
                f"not ranked: cover {u}<{v} goes from height {heights[u - 1]} to {heights[v - 1]}"
            )
    return RankedPoset(
        n=n,
        covers=frozenset(pairs),
        heights=tuple(heights),
        _lower=tuple(tuple(sorted(ls)) for ls in lower),
    )


def poset_from_json(obj: Mapping) -> RankedPoset:
    return validate_ranked(int(obj["n"]), [tuple(c) for c in obj.get("covers", [])])


# -- order maps -------------------------------------------------------------


def _brute_force_order_maps(P: RankedPoset, N: int, odd_max: int) -> Iterator[OrderMap]:
    relations = sorted(P.strict_order)
    for r in product(range(1, N + 1), repeat=P.n):
        if any(r[v - 1] > odd_max for v in P.V1):
            continue
        ok = True
        for u, v in relations:
            if r[u - 1] > r[v - 1] or (P.height(u) % 2 == 1 and r[u - 1] == r[v - 1]):
                ok = False
                break
        if ok:
            yield r


def enumerate_order_maps(
    P: RankedPoset, N: int, odd_max: int | None = None, *, brute_force: bool = False
) -> Iterator[OrderMap]:
    """Yield every order map ``r: P -> {1..N}`` exactly once.

    ``odd_max`` additionally caps the values on odd-height elements (used for
    truncations in which the last odd-height variable is zero).  With
    ``brute_force=True`` all ``N**n`` candidates are filtered against the
    full order relation instead; this is kept as an independent oracle.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    odd_max = N if odd_max is None else min(odd_max, N)
    if brute_force:
        yield from _brute_force_order_maps(P, N, odd_max)
        return
    order = P.topological_order
    r = [0] * P.n

    def extend(k: int) -> Iterator[OrderMap]:
        if k == len(order):
            yield tuple(r)
            return
        v = order[k]
        lo = 1
        for u in P.lower_covers(v):
            lo = max(lo, r[u - 1] + (P.height(u) % 2))
        hi = odd_max if P.height(v) % 2 else N
        for value in range(lo, hi + 1):
            r[v - 1] = value
            yield from extend(k + 1)
        r[v - 1] = 0

    yield from extend(0)


def count_order_maps(P: RankedPoset, N: int) -> int:
    return sum(1 for _ in enumerate_order_maps(P, N))


# -- constructions ----------------------------------------------------------


def poset_from_set_composition(K: Iterable[Iterable[int]]) -> RankedPoset:
    """The poset ``P_K``: every element of ``K_i`` is covered by every element of ``K_{i+1}``."""
    K = check_set_composition(K)
    n = sum(len(b) for b in K)
    covers = [(u, v) for lo, hi in zip(K, K[1:]) for u in lo for v in hi]
    P = validate_ranked(n, covers)
    assert all(P.height(v) == i for i, block in enumerate(K) for v in block)
    return P


def disjoint_union_shifted(P: RankedPoset, P2: RankedPoset) -> RankedPoset:
    shift = P.n
    covers = set(P.covers) | {(u + shift, v + shift) for u, v in P2.covers}
    return validate_ranked(P.n + P2.n, covers)


def _nonempty_subsets(items: Sequence[int]) -> list[tuple[int, ...]]:
    return [s for k in range(1, len(items) + 1) for s in combinations(items, k)]


def _posets_with_levels(levels: SetComposition) -> Iterator[RankedPoset]:
    n = sum(len(b) for b in levels)
    choices = []
    for lo, hi in zip(levels, levels[1:]):
        for v in hi:
            choices.append([tuple((u, v) for u in s) for s in _nonempty_subsets(lo)])
    for picked in product(*choices):
        yield validate_ranked(n, [c for group in picked for c in group])


def enumerate_ranked_posets(n: int) -> Iterator[RankedPoset]:
    """All labeled ranked posets on ``{1..n}``, each exactly once.

    A ranked poset is determined by its level sets (an ordered set partition)
    together with, for each element above level 0, a nonempty set of lower
    covers in the level just below.
    """
    if not 0 <= n <= 6:
        raise ValueError(f"enumerate_ranked_posets supports 0 <= n <= 6, got {n}")
    for levels in set_compositions_of(n):
        yield from _posets_with_levels(levels)


def random_ranked_poset(n: int, rng: random.Random) -> RankedPoset:
    """A random labeled ranked poset on ``{1..n}`` (not uniformly distributed)."""
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    n_levels = rng.randint(1, n) if n else 0
    cuts = sorted(rng.sample(range(1, n), n_levels - 1)) if n_levels > 1 else []
    bounds = [0] + cuts + [n]
    levels = [labels[a:b] for a, b in zip(bounds, bounds[1:])]
    covers = []
    for lo, hi in zip(levels, levels[1:]):
        for v in hi:
            k = rng.randint(1, len(lo))
            covers.extend((u, v) for u in rng.sample(lo, k))
    return validate_ranked(n, covers)
