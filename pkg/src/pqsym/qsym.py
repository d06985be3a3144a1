"""Quasi-symmetric side: ``F_P``, monomial functions and virtual alphabets.

The virtual alphabet of level ``m`` is ``-(x_1) + (x_2) - (x_3) ... - (x_{2m+1})``.
A quasi-symmetric function ``F`` is evaluated on it through the ``S^I``
coefficients of the ordered product

    prod_{j=1}^{2m+1} sigma_{x_j}(A)^{(-1)^j}

so that ``M_I(X_m)`` is the coefficient of ``S^I``.  The product runs over
all ``2m+1`` letters; the single-part case reproduces
``M_(k) = -x_1^k + x_2^k - ... - x_{2m+1}^k``.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Mapping, NamedTuple, Sequence, Union

from .algebra import CPoly, Monomial, Var, alternating_sigma_product
from .combinatorics import Composition, check_composition
from .posets import RankedPoset, enumerate_order_maps
from .report import CheckReport

QSymElem = dict  # Composition -> int


class NotQuasiSymmetric(ValueError):
    pass


class VirtualEval(NamedTuple):
    """A polynomial in ``x_1..x_{2m+1}`` tagged with its level ``m``."""

    m: int
    value: CPoly


def _x(i: int) -> Var:
    return Var("x", i)


def _x_monomial(counts: Mapping[int, int]) -> Monomial:
    return tuple((_x(i), e) for i, e in sorted(counts.items()))


def _multiset_monomial(values: tuple[int, ...]) -> Monomial:
    return _x_monomial(Counter(values))


def monomial_M(I: Sequence[int], N: int) -> CPoly:
    """``M_I`` truncated to ``x_1..x_N``."""
    I = check_composition(I)
    terms = {}
    for idx in combinations(range(1, N + 1), len(I)):
        terms[tuple((_x(a), e) for a, e in zip(idx, I))] = 1
    return CPoly(terms)


def F_P(P: RankedPoset, N: int) -> CPoly:
    """Generating series of the order maps of ``P`` with values in ``1..N``."""
    multisets = Counter(tuple(sorted(r)) for r in enumerate_order_maps(P, N))
    return CPoly({_multiset_monomial(k): c for k, c in multisets.items()})


def _exponent_pattern(mono: Monomial, family: str = "x") -> tuple[Composition, tuple[int, ...]]:
    if any(v.family != family for v, _ in mono):
        raise NotQuasiSymmetric(f"monomial uses a variable outside family {family!r}")
    return tuple(e for _, e in mono), tuple(v.index for v, _ in mono)


def qsym_expand(f: CPoly, N: int) -> QSymElem:
    """Expand the truncation ``f`` of a quasi-symmetric function in the ``M`` basis.

    Coefficients are read off the packed monomials ``x_1^{i_1}..x_r^{i_r}``;
    then every monomial is checked to carry the coefficient of its packing and
    every packing to appear on all ``C(N, r)`` index sets.
    """
    if f.degree() > N:
        raise ValueError(f"degree {f.degree()} exceeds the {N} available variables")
    coeffs: dict[Composition, int] = {}
    seen: Counter = Counter()
    for mono, c in f.items():
        I, idx = _exponent_pattern(mono)
        if max(idx, default=0) > N:
            raise NotQuasiSymmetric(f"variable x{max(idx)} beyond x{N}")
        if coeffs.setdefault(I, c) != c:
            raise NotQuasiSymmetric(f"coefficients differ along the pattern {I}")
        seen[I] += 1
    for I, count in seen.items():
        if count != comb(N, len(I)):
            raise NotQuasiSymmetric(f"pattern {I} appears on {count} of {comb(N, len(I))} index sets")
    return coeffs


def qsym_to_cpoly(F: QSymElem, N: int) -> CPoly:
    out = CPoly()
    for I, c in F.items():
        out = out + c * monomial_M(I, N)
    return out


def _prefixes(I: Composition) -> frozenset:
    return frozenset(I[:k] for k in range(len(I) + 1))


@lru_cache(maxsize=None)
def _virtual_M(I: Composition, m: int) -> CPoly:
    keep = _prefixes(I)
    series = alternating_sigma_product(2 * m + 1, sum(I), keep)
    return series.coefficient(I)


def monomial_M_virtual(I: Sequence[int], m: int) -> VirtualEval:
    """``M_I`` evaluated on the virtual alphabet of level ``m``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return VirtualEval(m, _virtual_M(check_composition(I), m))


def eval_virtual(F: QSymElem, m: int) -> VirtualEval:
    out = CPoly()
    for I, c in F.items():
        if c:
            out = out + c * _virtual_M(tuple(I), m)
    return VirtualEval(m, out)


def closed_form_M_virtual(I: Sequence[int], m: int) -> CPoly:
    """Explicit sums for ``M_I(X_m)`` when ``len(I) <= 3``.

    Odd letters enter with an inverted ``sigma`` (a block of ``j`` parts gives
    ``(-1)^j x^{|block|}``) and even letters with ``sigma`` itself (single
    parts only).  All sums over odd letters run over ``x_1, x_3, ..., x_{2m+1}``.
    """
    I = check_composition(I)
    L = 2 * m + 1
    xs = [None] + [CPoly.var("x", j) for j in range(1, L + 1)]
    odd = range(1, L + 1, 2)
    total = CPoly()
    if len(I) == 0:
        return CPoly.const(1)
    if len(I) == 1:
        (k,) = I
        for j in range(1, L + 1):
            total = total + (-1) ** j * xs[j] ** k
        return total
    if len(I) == 2:
        k, l = I
        for j in odd:
            total = total + xs[j] ** (k + l)
        for i, j in combinations(range(1, L + 1), 2):
            total = total + (-1) ** (i + j) * xs[i] ** k * xs[j] ** l
        return total
    if len(I) == 3:
        k, l, n = I
        for j in odd:
            total = total - xs[j] ** (k + l + n)
        for i in range(1, L + 1):
            for j in odd:
                if i < j:
                    total = total + (-1) ** i * xs[i] ** k * xs[j] ** (l + n)
        for i in odd:
            for j in range(i + 1, L + 1):
                total = total + (-1) ** j * xs[i] ** (k + l) * xs[j] ** n
        for h, i, j in combinations(range(1, L + 1), 3):
            total = total + (-1) ** (h + i + j) * xs[h] ** k * xs[i] ** l * xs[j] ** n
        return total
    raise ValueError("closed forms are provided for compositions of length <= 3")


def kill_odd_variables(v: VirtualEval) -> CPoly:
    """Set ``x_1 = x_3 = ... = x_{2m+1} = 0``."""
    return v.value.substitute({_x(2 * i + 1): 0 for i in range(v.m + 1)})


def even_to_consecutive(f: CPoly) -> CPoly:
    """Rename ``x_{2i} -> x_i``; the input must not involve odd-indexed ``x``."""
    if any(v.family == "x" and v.index % 2 for v in f.variables()):
        raise ValueError("polynomial still involves odd-indexed variables")
    return f.substitute({v: CPoly.var("x", v.index // 2) for v in f.variables() if v.family == "x"})


def x_to_pq_assignment(m: int) -> dict[Var, CPoly]:
    """``x_{2i+1} = q_{i+1}+..+q_m + p_{i+1}+..+p_{m+1}``, ``x_{2i} = q_i+..+q_m + p_{i+1}+..+p_{m+1}``."""
    return dict(_x_to_pq(m))


@lru_cache(maxsize=None)
def _x_to_pq(m: int) -> dict[Var, CPoly]:
    ps = [None] + [CPoly.var("p", i) for i in range(1, m + 2)]
    qs = [None] + [CPoly.var("q", i) for i in range(1, m + 1)]
    out = {}
    for i in range(m + 1):
        tail = sum((qs[j] for j in range(i + 1, m + 1)), CPoly()) + sum(
            (ps[j] for j in range(i + 1, m + 2)), CPoly()
        )
        out[_x(2 * i + 1)] = tail
        if i >= 1:
            out[_x(2 * i)] = tail + qs[i]
    return out


def pq_to_x_assignment(m: int) -> dict[Var, CPoly]:
    """``p_i = x_{2i-1} - x_{2i}``, ``q_i = x_{2i} - x_{2i+1}``, ``p_{m+1} = x_{2m+1}``."""
    xs = [None] + [CPoly.var("x", j) for j in range(1, 2 * m + 2)]
    out = {Var("p", m + 1): xs[2 * m + 1]}
    for i in range(1, m + 1):
        out[Var("p", i)] = xs[2 * i - 1] - xs[2 * i]
        out[Var("q", i)] = xs[2 * i] - xs[2 * i + 1]
    return out


def substitute_x_to_pq(v: VirtualEval) -> CPoly:
    return v.value.substitute(_x_to_pq(v.m))


Family = Union[Callable[[int], Union[VirtualEval, CPoly]], Sequence[Union[VirtualEval, CPoly]]]


def family_level(family: Family, m: int) -> CPoly:
    member = family(m) if callable(family) else family[m]
    if isinstance(member, VirtualEval):
        return member.value
    return CPoly._coerce(member)


def check_Sx_membership(family: Family, m_max: int) -> CheckReport:
    """Check the collapsing equation and stability on levels ``1..m_max``.

    For each ``m`` and ``1 <= i <= 2m``, ``f_m`` with ``x_{i+1} := x_i`` must
    equal ``f_{m-1}`` written in ``x_1..x_{i-1}, x_{i+2}..x_{2m+1}``.
    Stability asks ``f_m(.., x_{2m}=0, x_{2m+1}=0) = f_{m-1}``.
    """
    report = CheckReport("S_x membership")
    levels = [family_level(family, m) for m in range(m_max + 1)]
    for m, f in enumerate(levels):
        allowed = {_x(j) for j in range(1, 2 * m + 2)}
        report.add(m, None, "support", f.variables() <= allowed)
    for m in range(1, m_max + 1):
        f, g = levels[m], levels[m - 1]
        for i in range(1, 2 * m + 1):
            lhs = f.substitute({_x(i + 1): CPoly.var("x", i)})
            rhs = g.substitute({_x(j): CPoly.var("x", j + 2) for j in range(i, 2 * m)})
            report.add(m, i, "collapse", lhs == rhs)
        tail = f.substitute({_x(2 * m): 0, _x(2 * m + 1): 0})
        report.add(m, None, "stability", tail == g)
    return report


@lru_cache(maxsize=256)
def _F_P_expansion(P: RankedPoset) -> QSymElem:
    # a degree-n quasi-symmetric function is determined by n variables
    return qsym_expand(F_P(P, P.n), P.n)


def verify_main_theorem(P: RankedPoset, m: int) -> bool:
    lhs, rhs = main_theorem_sides(P, m)
    return lhs == rhs


def main_theorem_sides(P: RankedPoset, m: int) -> tuple[CPoly, CPoly]:
    """``N_P`` at level ``m`` and ``(-1)^{|V_0|} F_P(X_m)`` in the ``p, q`` variables."""
    from .superqsym import N_P

    F = _F_P_expansion(P)
    rhs = substitute_x_to_pq(eval_virtual(F, m))
    if len(P.V0) % 2:
        rhs = -rhs
    return N_P(P, m), rhs


def qsym_to_json(F: QSymElem) -> dict:
    def key(I):
        return "(" + ",".join(map(str, I)) + ")"

    ordered = sorted(F.items(), key=lambda kv: (sum(kv[0]), tuple(-i for i in kv[0])))
    return {key(I): c for I, c in ordered if c}


def qsym_from_json(obj: Mapping[str, int]) -> QSymElem:
    out = {}
    for k, c in obj.items():
        inner = k.strip().strip("()").strip()
        I = tuple(int(t) for t in inner.split(",") if t.strip()) if inner else ()
        out[check_composition(I)] = int(c)
    return out

