"""Acceptance criteria 1-9, all checked with exact integer arithmetic.

Run under pytest (a summary section lists one PASS/FAIL line per
criterion) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from math import comb

import pytest

from pqsym.algebra import CPoly, NCPoly, SymSeries, Var
from pqsym.combinatorics import all_compositions, set_compositions_of
from pqsym.verify import (
    BatchResult,
    run_closed_forms,
    run_collapse,
    run_coordinates,
    run_i_avoiding,
    run_luoto_basis,
    run_main_theorem,
    run_positivity,
    run_spq_membership,
    run_sx_theorem,
)

SEED = 20240601


def _ordered_bell(n: int) -> int:
    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[n]


def _random_cpoly(rng: random.Random) -> CPoly:
    names = [Var("x", 1), Var("x", 2), Var("p", 1), Var("q", 1)]
    terms = {}
    for _ in range(rng.randint(0, 4)):
        mono = tuple((v, e) for v in names if (e := rng.randint(0, 2)))
        terms[mono] = terms.get(mono, 0) + rng.randint(-3, 3)
    return CPoly(terms)


def _random_ncpoly(rng: random.Random) -> NCPoly:
    letters = [Var("b", 1), Var("d", 1), Var("b", 2)]
    terms = {}
    for _ in range(rng.randint(0, 3)):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, 3)))
        terms[w] = terms.get(w, 0) + rng.randint(-2, 2)
    return NCPoly(terms)


def run_properties(trials: int = 150, seed: int = SEED) -> BatchResult:
    rng = random.Random(seed)
    result = BatchResult("properties")
    for t in range(trials):
        f, g, h = (_random_cpoly(rng) for _ in range(3))
        ok = f + g == g + f and f * g == g * f and (f * g) * h == f * (g * h)
        ok = ok and f * (g + h) == f * g + f * h and f - f == CPoly() and f * 1 == f
        result.check(ok, f"commutative ring axioms, trial {t}")

        u, v, w = (_random_ncpoly(rng) for _ in range(3))
        ok = (u * v) * w == u * (v * w) and u * (v + w) == u * v + u * w and (u + v) * w == u * w + v * w
        result.check(ok, f"noncommutative ring axioms, trial {t}")

        sub = {Var("x", 1): _random_cpoly(rng), Var("p", 1): _random_cpoly(rng)}
        ok = (f * g).substitute(sub) == f.substitute(sub) * g.substitute(sub)
        ok = ok and (f + g).substitute(sub) == f.substitute(sub) + g.substitute(sub)
        result.check(ok, f"substitution morphism, trial {t}")

        nsub = {Var("b", 1): NCPoly.letter("d", 1) + NCPoly.letter("b", 2)}
        ok = (u * v).letter_substitute(nsub) == u.letter_substitute(nsub) * v.letter_substitute(nsub)
        result.check(ok, f"letter substitution morphism, trial {t}")

        coeffs = {(): 1}
        for I in rng.sample(all_compositions(5)[1:], rng.randint(1, 6)):
            coeffs[I] = _random_cpoly(rng)
        A = SymSeries(5, coeffs)
        inv = A.invert()
        result.check(A * inv == SymSeries.one(5) == inv * A, f"series inverse to degree 5, trial {t}")
    return result


def criterion_1():
    return [run_main_theorem(n_max=4, m_max=2, random_count=200, random_sizes=(5, 6), seed=SEED)]


def criterion_2():
    return [run_closed_forms()]


def criterion_3():
    return [run_spq_membership(n_max=4, m_max=3)]


def criterion_4():
    return [run_sx_theorem(weight_max=4, m_max=3)]


def criterion_5():
    return [run_coordinates(size_max=20, grid=6)]


def criterion_6():
    counts = BatchResult("ordered Bell numbers")
    enumerated = [len(set_compositions_of(n)) for n in range(1, 5)]
    counts.check(enumerated == [_ordered_bell(n) for n in range(1, 5)] == [1, 3, 13, 75], str(enumerated))
    return [counts, run_luoto_basis(n_max=4)]


def criterion_7():
    return [run_positivity(n_max=4, product_max=4)]


def criterion_8():
    return [run_collapse(n_max=4, m_max=2)]


def criterion_9():
    return [run_properties(), run_i_avoiding(n_max=4, m_max=3)]


CRITERIA = {
    1: ("main identity, n <= 4 exhaustive + 200 random n in {5,6}, m <= 2", criterion_1),
    2: ("closed forms for M_I on the virtual alphabet", criterion_2),
    3: ("N_P satisfies both p, q functional equations", criterion_3),
    4: ("M_I(X_m) functional equations and rank 2^(n-1)", criterion_4),
    5: ("coordinate round trips", criterion_5),
    6: ("Luoto basis rank and leading-evaluation decoding", criterion_6),
    7: ("positive Luoto expansions and multiplication tables", criterion_7),
    8: ("collapse consistency", criterion_8),
    9: ("property suites and the merge bijection", criterion_9),
}


def evaluate(number: int) -> tuple[bool, str]:
    title, fn = CRITERIA[number]
    start = time.perf_counter()
    results = fn()
    elapsed = time.perf_counter() - start
    passed = all(r.passed for r in results)
    size = sum(r.corpus_size for r in results)
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}  [{size} cases, {elapsed:.1f}s]"
    failures = [f"{r.name}: {what}" for r in results for what in r.failures[:5]]
    if failures:
        line += "\n    " + "\n    ".join(failures)
    return passed, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_log):
    passed, line = evaluate(number)
    acceptance_log[number] = line
    print(line)
    assert passed, line


if __name__ == "__main__":
    all_ok = True
    for number in sorted(CRITERIA):
        ok, line = evaluate(number)
        all_ok &= ok
        print(line, flush=True)
    sys.exit(0 if all_ok else 1)
