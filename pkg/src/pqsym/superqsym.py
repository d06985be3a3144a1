"""Two-alphabet generating series ``N_P`` and the ``p, q`` functional equations.

At level ``m`` the alphabets are truncated to ``p_1..p_{m+1}`` and
``q_1..q_m``: order maps take values in ``1..m+1`` and an odd-height element
may not take the value ``m+1`` (its variable ``q_{m+1}`` is zero).
"""

from __future__ import annotations

from collections import Counter
from itertools import product
from typing import Callable, Sequence, Union

from .algebra import CPoly, Monomial, Var, var_key
from .posets import OrderMap, RankedPoset, enumerate_order_maps
from .qsym import (
    Family,
    VirtualEval,
    family_level,
    pq_to_x_assignment,
    substitute_x_to_pq,
)
from .report import CheckReport

PQFamily = Union[Callable[[int], CPoly], Sequence[CPoly]]


def _p(i: int) -> CPoly:
    return CPoly.var("p", i)


def _q(i: int) -> CPoly:
    return CPoly.var("q", i)


def pq_weight(P: RankedPoset, r: OrderMap) -> Monomial:
    exps = Counter()
    for v in range(1, P.n + 1):
        family = "q" if P.height(v) % 2 else "p"
        exps[Var(family, r[v - 1])] += 1
    return tuple(sorted(exps.items(), key=lambda ve: var_key(ve[0])))


def N_P(P: RankedPoset, m: int) -> CPoly:
    """``N_P`` at level ``m``: ``sum_r prod_{V_0} p_{r(v)} prod_{V_1} q_{r(v)}``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    terms: dict[Monomial, int] = {}
    for r in enumerate_order_maps(P, m + 1, odd_max=m):
        mono = pq_weight(P, r)
        terms[mono] = terms.get(mono, 0) + 1
    return CPoly(terms)


def F_P_truncated(P: RankedPoset, m: int) -> CPoly:
    """``F_P`` over the order maps used by ``N_P`` at level ``m``.

    Values lie in ``1..m+1`` and odd-height elements stay below ``m+1``;
    this is the exact image of ``N_P`` under ``p_i = q_i = x_i``.
    """
    terms: dict[Monomial, int] = {}
    for r in enumerate_order_maps(P, m + 1, odd_max=m):
        mono = tuple((Var("x", i), e) for i, e in sorted(Counter(r).items()))
        terms[mono] = terms.get(mono, 0) + 1
    return CPoly(terms)


def collapse_to_x(h: CPoly) -> CPoly:
    """Set ``p_i = q_i = x_i``."""
    return h.substitute(
        {v: CPoly.var("x", v.index) for v in h.variables() if v.family in ("p", "q")}
    )


def _pq_level(family: PQFamily, m: int) -> CPoly:
    member = family(m) if callable(family) else family[m]
    return CPoly._coerce(member)


def check_Spq_membership(family: PQFamily, m_max: int) -> CheckReport:
    """Check stability and both substitution equations on levels ``1..m_max``.

    ``q_i = 0`` must give the level ``m-1`` member with ``p_i + p_{i+1}``
    merged and ``q_i`` dropped; ``p_i = 0`` must give it with ``p_i``
    dropped and ``q_{i-1} + q_i`` merged (for ``i = 1`` nothing is merged).
    """
    report = CheckReport("S_pq membership")
    levels = [_pq_level(family, m) for m in range(m_max + 1)]
    for m, h in enumerate(levels):
        allowed = {Var("p", i) for i in range(1, m + 2)} | {Var("q", i) for i in range(1, m + 1)}
        report.add(m, None, "support", h.variables() <= allowed)
    for m in range(1, m_max + 1):
        h, g = levels[m], levels[m - 1]
        report.add(m, None, "stability", h.substitute({Var("p", m + 1): 0, Var("q", m): 0}) == g)
        for i in range(1, m + 1):
            # q_i = 0
            sub = {}
            for j in range(1, m + 1):
                if j == i:
                    sub[Var("p", j)] = _p(i) + _p(i + 1)
                elif j > i:
                    sub[Var("p", j)] = _p(j + 1)
            for j in range(i, m):
                sub[Var("q", j)] = _q(j + 1)
            lhs = h.substitute({Var("q", i): 0})
            report.add(m, i, "q=0", lhs == g.substitute(sub))
            # p_i = 0
            sub = {Var("p", j): _p(j + 1) for j in range(i, m + 1)}
            if i >= 2:
                sub[Var("q", i - 1)] = _q(i - 1) + _q(i)
            for j in range(i, m):
                sub[Var("q", j)] = _q(j + 1)
            lhs = h.substitute({Var("p", i): 0})
            report.add(m, i, "p=0", lhs == g.substitute(sub))
    return report


def verify_isomorphism_roundtrip(family: Family, m_max: int) -> CheckReport:
    """Send an ``S_x`` family to ``p, q`` coordinates, check it lands in ``S_pq``
    and that the inverse change of variables gives back the input."""
    images = []
    report = CheckReport("S_x -> S_pq")
    for m in range(m_max + 1):
        f = family_level(family, m)
        h = substitute_x_to_pq(VirtualEval(m, f))
        images.append(h)
        report.add(m, None, "inverse", h.substitute(pq_to_x_assignment(m)) == f)
    for cell in check_Spq_membership(images, m_max).cells:
        report.add(cell.m, cell.i, cell.check, cell.passed)
    return report


def merge_values(r: OrderMap, i: int) -> OrderMap:
    """Merge the values ``i`` and ``i+1`` of an order map."""
    return tuple(v if v <= i else v - 1 for v in r)


def i_avoiding(P: RankedPoset, r: OrderMap, i: int) -> bool:
    return all(r[v - 1] != i for v in P.V1)


def merge_fiber(P: RankedPoset, r_prime: OrderMap, i: int) -> list[OrderMap]:
    """The ``i``-avoiding maps sent to ``r_prime`` by ``merge_values``.

    Even-height elements valued ``i`` may go to ``i`` or ``i+1``; odd-height
    ones must go to ``i+1``.
    """
    options = []
    for v in range(1, P.n + 1):
        val = r_prime[v - 1]
        if val < i:
            options.append((val,))
        elif val > i:
            options.append((val + 1,))
        elif P.height(v) % 2:
            options.append((i + 1,))
        else:
            options.append((i, i + 1))
    return [tuple(choice) for choice in product(*options)]


def _primed_weight(P: RankedPoset, r_prime: OrderMap, i: int) -> CPoly:
    out = CPoly.const(1)
    for v in range(1, P.n + 1):
        j = r_prime[v - 1]
        if P.height(v) % 2:
            out = out * (_q(j) if j < i else _q(j + 1))
        elif j < i:
            out = out * _p(j)
        elif j == i:
            out = out * (_p(i) + _p(i + 1))
        else:
            out = out * _p(j + 1)
    return out


def i_avoiding_bijection_holds(P: RankedPoset, m: int, i: int) -> bool:
    """Check the merge map behind the ``q_i = 0`` equation for ``N_P``.

    ``merge_values`` must send the ``i``-avoiding order maps at level ``m``
    onto the order maps at level ``m-1``, its fibers must be exactly those
    given by ``merge_fiber`` (so ``r <-> (r', choice of lifts)`` is a
    bijection), and each fiber's total weight must equal the weight of
    ``r'`` in the merged variables.
    """
    if not 1 <= i <= m:
        raise ValueError(f"need 1 <= i <= m, got i={i}, m={m}")
    source = [r for r in enumerate_order_maps(P, m + 1, odd_max=m) if i_avoiding(P, r, i)]
    target = set(enumerate_order_maps(P, m, odd_max=m - 1))
    fibers: dict[OrderMap, set[OrderMap]] = {t: set() for t in target}
    for r in source:
        image = merge_values(r, i)
        if image not in fibers:
            return False
        fibers[image].add(r)
    for r_prime, fiber in fibers.items():
        expected = merge_fiber(P, r_prime, i)
        if set(expected) != fiber or len(expected) != len(fiber):
            return False
        weight = sum((CPoly({pq_weight(P, r): 1}) for r in expected), CPoly())
        if weight != _primed_weight(P, r_prime, i):
            return False
    return sum(len(f) for f in fibers.values()) == len(source)


def monomials_with_q1_have_p1(h: CPoly) -> bool:
    p1, q1 = Var("p", 1), Var("q", 1)
    for mono in h:
        letters = {v for v, _ in mono}
        if q1 in letters and p1 not in letters:
            return False
    return True
