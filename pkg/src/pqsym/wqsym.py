"""Word quasi-symmetric functions and the noncommutative Luoto basis.

A homogeneous element of degree ``n`` is stored by its coefficients on
packed words of length ``n``; its truncation to ``n`` letters is faithful,
since a packed word of length ``n`` uses at most ``n`` distinct letters.

For a set composition ``K = (K_0, ..., K_{l-1})`` the poset ``P_K`` puts
``K_i`` at height ``i`` with every element of ``K_i`` below every element of
``K_{i+1}``.  The series ``bold_F_P(K)`` form a basis of WQSym; expansions in
it are computed by an exact linear solve and cross-checked by splitting the
order maps of a poset according to how its incomparable even/odd pairs
compare.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .algebra import CPoly, NCPoly, Var, Word, inverse_exact
from .combinatorics import SetComposition, check_set_composition, set_compositions_of
from .posets import RankedPoset, disjoint_union_shifted, enumerate_order_maps, poset_from_set_composition

PackedWord = tuple[int, ...]
WQElem = dict  # PackedWord -> int
EvaluationVector = tuple[int, ...]


class NotWordQuasiSymmetric(ValueError):
    pass


class LuotoExpansionError(ArithmeticError):
    """The basis system was singular or had a non-integral solution."""


# -- series -----------------------------------------------------------------


def bold_F_P(P: RankedPoset, k: int) -> NCPoly:
    """Sum of the words ``a_{r(1)} ... a_{r(n)}`` over order maps with values ``<= k``."""
    terms: dict[Word, int] = {}
    for r in enumerate_order_maps(P, k):
        w = tuple(Var("a", v) for v in r)
        terms[w] = terms.get(w, 0) + 1
    return NCPoly(terms)


def bold_N_P(P: RankedPoset, m: int) -> NCPoly:
    """Words in ``b`` (even height) and ``d`` (odd height) letters at level ``m``."""
    families = ["d" if P.height(v) % 2 else "b" for v in range(1, P.n + 1)]
    terms: dict[Word, int] = {}
    for r in enumerate_order_maps(P, m + 1, odd_max=m):
        w = tuple(Var(fam, val) for fam, val in zip(families, r))
        terms[w] = terms.get(w, 0) + 1
    return NCPoly(terms)


def commutative_projection(f: NCPoly) -> CPoly:
    """Abelianize, renaming letters ``a -> x``, ``b -> p``, ``d -> q``."""
    return f.abelianize({"a": "x", "b": "p", "d": "q"})


def a_to_bd_assignment(m: int) -> dict[Var, NCPoly]:
    """``a_{2i+1} = d_{i+1}+..+d_m + b_{i+1}+..+b_{m+1}``, ``a_{2i} = d_i+..+d_m + b_{i+1}+..+b_{m+1}``.

    Only the letter substitution is provided; the evaluation of a WQSym
    element on the corresponding signed alphabet is not.
    """
    out = {}
    for i in range(m + 1):
        tail = NCPoly({(Var("d", j),): 1 for j in range(i + 1, m + 1)}) + NCPoly(
            {(Var("b", j),): 1 for j in range(i + 1, m + 2)}
        )
        out[Var("a", 2 * i + 1)] = tail
        if i >= 1:
            out[Var("a", 2 * i)] = tail + NCPoly.letter("d", i)
    return out


# -- packed words -----------------------------------------------------------


def pack(word: Sequence[int]) -> PackedWord:
    values = sorted(set(word))
    rank = {v: i for i, v in enumerate(values, start=1)}
    return tuple(rank[v] for v in word)


def packed_word_from_set_composition(K: SetComposition) -> PackedWord:
    n = sum(len(b) for b in K)
    out = [0] * n
    for value, block in enumerate(K, start=1):
        for pos in block:
            out[pos - 1] = value
    return tuple(out)


def packed_words(n: int) -> list[PackedWord]:
    return [packed_word_from_set_composition(K) for K in set_compositions_of(n)]


def wq_expand(f: NCPoly, k: int) -> WQElem:
    """Coefficients on packed words of a word quasi-symmetric ``f`` in ``a_1..a_k``.

    Raises ``NotWordQuasiSymmetric`` unless every word carries the coefficient
    of its packing and each packing occurs on all ``C(k, max)`` letter sets.
    """
    if not f:
        return {}
    if not f.is_homogeneous():
        raise ValueError("wq_expand needs a homogeneous polynomial")
    if f.degree() > k:
        raise ValueError(f"degree {f.degree()} exceeds the {k} available letters")
    coeffs: dict[PackedWord, int] = {}
    seen: dict[PackedWord, int] = {}
    for word, c in f.items():
        if any(v.family != "a" for v in word):
            raise NotWordQuasiSymmetric("wq_expand only reads letters a_i")
        letters = tuple(v.index for v in word)
        if max(letters, default=0) > k:
            raise NotWordQuasiSymmetric(f"letter beyond a{k}")
        u = pack(letters)
        if coeffs.setdefault(u, c) != c:
            raise NotWordQuasiSymmetric(f"coefficients differ along the packing {u}")
        seen[u] = seen.get(u, 0) + 1
    for u, count in seen.items():
        need = comb(k, max(u, default=0))
        if count != need:
            raise NotWordQuasiSymmetric(f"packing {u} occurs {count} times, expected {need}")
    return coeffs


def wq_to_ncpoly(F: Mapping[PackedWord, int], k: int) -> NCPoly:
    terms: dict[Word, int] = {}
    for u, c in F.items():
        top = max(u, default=0)
        for letters in combinations(range(1, k + 1), top):
            terms[tuple(Var("a", letters[i - 1]) for i in u)] = c
    return NCPoly(terms)


# -- leading evaluations ----------------------------------------------------


def evaluation(word: Word) -> EvaluationVector:
    """``(#b_1, #d_1, #b_2, #d_2, ...)`` of a word in ``b``/``d`` letters."""
    top = max((v.index for v in word), default=0)
    counts = [0] * (2 * top)
    for v in word:
        if v.family not in ("b", "d"):
            raise ValueError(f"letter {v} is not a b/d letter")
        counts[2 * (v.index - 1) + (v.family == "d")] += 1
    return tuple(counts)


def _padded(e: EvaluationVector, length: int) -> EvaluationVector:
    return e + (0,) * (length - len(e))


def leading_evaluation(f: NCPoly) -> tuple[EvaluationVector, SetComposition]:
    """Lexicographically largest evaluation in ``f`` and the set composition it encodes.

    Block ``2j`` holds the positions of ``b_{j+1}``, block ``2j+1`` those of
    ``d_{j+1}``.
    """
    if not f:
        raise ValueError("leading evaluation of the zero polynomial")
    if not f.is_homogeneous():
        raise ValueError("leading evaluation needs a homogeneous polynomial")
    evals = {w: evaluation(w) for w in f}
    width = max(len(e) for e in evals.values())
    best = max(_padded(e, width) for e in evals.values())
    winners = [w for w, e in evals.items() if _padded(e, width) == best]
    if len(winners) > 1:
        raise ValueError(f"{len(winners)} words share the leading evaluation {best}")
    (word,) = winners
    blocks: list[list[int]] = [[] for _ in range(width)]
    for pos, v in enumerate(word, start=1):
        blocks[2 * (v.index - 1) + (v.family == "d")].append(pos)
    while blocks and not blocks[-1]:
        blocks.pop()
    if any(not b for b in blocks):
        raise ValueError(f"leading word {word} does not encode a set composition")
    trimmed = best[: len(blocks)]
    return trimmed, check_set_composition(blocks)


# -- Luoto basis ------------------------------------------------------------


@lru_cache(maxsize=None)
def luoto_series(K: SetComposition) -> WQElem:
    n = sum(len(b) for b in K)
    return wq_expand(bold_F_P(poset_from_set_composition(K), n), n)


@lru_cache(maxsize=None)
def _luoto_system(n: int):
    """Basis ordered by decreasing leading evaluation of ``bold_N_P(K)``, with exact inverse."""
    keyed = []
    for K in set_compositions_of(n):
        ev, decoded = leading_evaluation(bold_N_P(poset_from_set_composition(K), n))
        if decoded != K:
            raise LuotoExpansionError(f"leading evaluation decodes {K} as {decoded}")
        keyed.append((_padded(ev, 2 * n), K))
    keyed.sort(reverse=True)
    Ks = [K for _, K in keyed]
    words = packed_words(n)
    matrix = [[luoto_series(K).get(u, 0) for K in Ks] for u in words]
    try:
        inverse = inverse_exact(matrix)
    except ValueError as exc:
        raise LuotoExpansionError(f"Luoto system in degree {n} is singular") from exc
    return Ks, words, matrix, inverse


def luoto_matrix(n: int) -> tuple[list[SetComposition], list[PackedWord], list[list[int]]]:
    Ks, words, matrix, _ = _luoto_system(n)
    return list(Ks), list(words), [list(row) for row in matrix]


def luoto_expand(f: Mapping[PackedWord, int], n: int) -> dict[SetComposition, int]:
    """Coefficients ``c_K`` with ``f = sum_K c_K bold_F_P(K)`` (zero ones omitted)."""
    if any(len(u) != n for u in f):
        raise ValueError(f"element is not homogeneous of degree {n}")
    Ks, words, _, inverse = _luoto_system(n)
    rhs = [f.get(u, 0) for u in words]
    out = {}
    for K, row in zip(Ks, inverse):
        value = sum((a * b for a, b in zip(row, rhs) if b), Fraction(0))
        if value.denominator != 1:
            raise LuotoExpansionError(f"non-integral coefficient {value} on {K}")
        if value:
            out[K] = int(value)
    return out


def luoto_expand_poset(P: RankedPoset) -> dict[SetComposition, int]:
    return luoto_expand(wq_expand(bold_F_P(P, P.n), P.n), P.n)


def splitting_expand(P: RankedPoset) -> dict[SetComposition, int]:
    """Expand ``bold_F_P`` by splitting its order maps combinatorially.

    Each incomparable pair ``(x, y)`` with ``x`` of even and ``y`` of odd
    height is decided as ``r(x) <= r(y)`` or ``r(y) < r(x)``.  Together with
    the comparable pairs this orients every even/odd pair; the orientations
    without a cycle are exactly the ``P_K`` order conditions, with ``K``
    read off as longest-path levels.
    """
    V0, V1 = sorted(P.V0), sorted(P.V1)
    free = [(x, y) for x in V0 for y in V1 if not P.comparable(x, y)]
    fixed = []
    for x in V0:
        for y in V1:
            if (x, y) in P.strict_order:
                fixed.append((x, y))
            elif (y, x) in P.strict_order:
                fixed.append((y, x))
    out: dict[SetComposition, int] = {}
    for mask in range(1 << len(free)):
        edges = list(fixed)
        for bit, (x, y) in enumerate(free):
            edges.append((x, y) if mask >> bit & 1 else (y, x))
        levels = _longest_path_levels(P.n, edges)
        if levels is None:
            continue
        depth = max(levels.values(), default=-1) + 1
        K = [[] for _ in range(depth)]
        for v, lvl in levels.items():
            K[lvl].append(v)
        assert all(levels[v] % 2 == P.height(v) % 2 for v in range(1, P.n + 1)), "parity"
        assert all((levels[u] < levels[v]) for u, v in edges), "orientation"
        key = check_set_composition(K)
        out[key] = out.get(key, 0) + 1
    return out


def _longest_path_levels(n: int, edges: list[tuple[int, int]]) -> dict[int, int] | None:
    succ: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    indeg = {v: 0 for v in range(1, n + 1)}
    for u, v in edges:
        succ[u].append(v)
        indeg[v] += 1
    level = {v: 0 for v in range(1, n + 1)}
    ready = [v for v in range(1, n + 1) if indeg[v] == 0]
    done = 0
    while ready:
        u = ready.pop()
        done += 1
        for v in succ[u]:
            level[v] = max(level[v], level[u] + 1)
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
    return level if done == n else None


def luoto_product(K: Sequence[Sequence[int]], K2: Sequence[Sequence[int]]) -> dict[SetComposition, int]:
    """Expansion of ``bold_F_P(K) * bold_F_P(K2)`` in the Luoto basis."""
    K, K2 = check_set_composition(K), check_set_composition(K2)
    P1, P2 = poset_from_set_composition(K), poset_from_set_composition(K2)
    union = disjoint_union_shifted(P1, P2)
    n = union.n
    full = bold_F_P(union, n)
    assert bold_F_P(P1, n) * bold_F_P(P2, n) == full
    return luoto_expand(wq_expand(full, n), n)


# -- JSON -------------------------------------------------------------------


def wq_to_json(F: Mapping[PackedWord, int]) -> dict:
    if any(v > 9 for u in F for v in u):
        raise ValueError("digit-string keys support packed words with letters <= 9")
    return {"".join(map(str, u)): c for u, c in sorted(F.items()) if c}


def wq_from_json(obj: Mapping[str, int]) -> WQElem:
    out = {}
    for key, c in obj.items():
        u = tuple(int(ch) for ch in key)
        if pack(u) != u:
            raise ValueError(f"{key!r} is not a packed word")
        out[u] = int(c)
    return out


def set_composition_expansion_to_json(expansion: Mapping[SetComposition, int]) -> list[dict]:
    return [
        {"K": [list(b) for b in K], "coef": c}
        for K, c in sorted(expansion.items(), reverse=True)
    ]
