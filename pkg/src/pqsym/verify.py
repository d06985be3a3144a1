"""Batch verification runs over exhaustive and seeded random poset corpora."""

from __future__ import annotations

import random
from itertools import product
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .algebra import exact_rank
from .combinatorics import (
    MultirectCoords,
    compositions_of,
    interlacing_from_multirect,
    interlacing_from_partition,
    multirect_from_interlacing,
    partition_from_interlacing,
    partitions_of,
    set_compositions_of,
)
from .posets import RankedPoset, enumerate_ranked_posets, poset_from_set_composition, random_ranked_poset
from .qsym import (
    F_P,
    check_Sx_membership,
    closed_form_M_virtual,
    monomial_M_virtual,
    verify_main_theorem,
)
from .superqsym import N_P, F_P_truncated, check_Spq_membership, collapse_to_x, i_avoiding_bijection_holds
from .wqsym import (
    bold_F_P,
    bold_N_P,
    commutative_projection,
    leading_evaluation,
    luoto_expand_poset,
    luoto_matrix,
    luoto_product,
    splitting_expand,
)


@dataclass
class BatchResult:
    name: str
    corpus_size: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: str) -> None:
        self.corpus_size += 1
        if not ok:
            self.failures.append(what)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "corpus_size": self.corpus_size,
            "failures": self.failures,
        }


def exhaustive_posets(n_max: int) -> list[RankedPoset]:
    return [P for n in range(n_max + 1) for P in enumerate_ranked_posets(n)]


def random_posets(count: int, sizes: Iterable[int], seed: int) -> list[RankedPoset]:
    rng = random.Random(seed)
    sizes = list(sizes)
    return [random_ranked_poset(rng.choice(sizes), rng) for _ in range(count)]


def _main_theorem_job(args: tuple[RankedPoset, int]) -> tuple[str, bool]:
    P, m_max = args
    ok = all(verify_main_theorem(P, m) for m in range(m_max + 1))
    return str(P), ok


def run_main_theorem(
    n_max: int = 4,
    m_max: int = 2,
    random_count: int = 0,
    random_sizes: Iterable[int] = (5, 6),
    seed: int = 0,
    jobs: int = 1,
) -> BatchResult:
    result = BatchResult("main theorem")
    corpus = exhaustive_posets(n_max) + random_posets(random_count, random_sizes, seed)
    work = [(P, m_max) for P in corpus]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_main_theorem_job, work, chunksize=8))
    else:
        outcomes = [_main_theorem_job(w) for w in work]
    for name, ok in outcomes:
        result.check(ok, name)
    return result


def run_closed_forms() -> BatchResult:
    result = BatchResult("closed forms")
    for k in range(1, 5):
        for m in range(4):
            result.check(closed_form_M_virtual((k,), m) == monomial_M_virtual((k,), m).value, f"M_({k}) m={m}")
    for m in range(3):
        for k in range(1, 4):
            for l in range(1, 4):
                I = (k, l)
                result.check(closed_form_M_virtual(I, m) == monomial_M_virtual(I, m).value, f"M_{I} m={m}")
                for n in range(1, 4):
                    J = (k, l, n)
                    result.check(closed_form_M_virtual(J, m) == monomial_M_virtual(J, m).value, f"M_{J} m={m}")
    return result


def run_spq_membership(n_max: int = 4, m_max: int = 3) -> BatchResult:
    result = BatchResult("N_P in S_pq")
    for P in exhaustive_posets(n_max):
        result.check(check_Spq_membership(lambda m, P=P: N_P(P, m), m_max).passed, str(P))
    return result


def run_sx_theorem(weight_max: int = 4, m_max: int = 3) -> BatchResult:
    result = BatchResult("M_I(X_m) in S_x")
    for n in range(weight_max + 1):
        for I in compositions_of(n):
            report = check_Sx_membership(lambda m, I=I: monomial_M_virtual(I, m), m_max)
            result.check(report.passed, f"M_{I}")
    for n in range(1, weight_max + 1):
        polys = [monomial_M_virtual(I, n).value for I in compositions_of(n)]
        monos = sorted({mono for f in polys for mono in f}, key=repr)
        rank = exact_rank([[f.coefficient(mono) for mono in monos] for f in polys])
        result.check(rank == 2 ** (n - 1), f"rank degree {n}: {rank}")
    return result


def run_coordinates(size_max: int = 20, grid: int = 6) -> BatchResult:
    result = BatchResult("coordinates")
    for size in range(size_max + 1):
        for lam in partitions_of(size):
            xs = interlacing_from_partition(lam)
            ok = partition_from_interlacing(xs) == (lam, 0)
            ok = ok and interlacing_from_multirect(multirect_from_interlacing(xs)) == xs
            result.check(ok, f"partition {lam}")
    values = list(range(grid, -grid - 1, -1))
    for mask in range(1, 1 << len(values)):
        xs = tuple(v for b, v in enumerate(values) if mask >> b & 1)
        if len(xs) % 2:
            result.check(interlacing_from_multirect(multirect_from_interlacing(xs)) == xs, f"x={xs}")
    for m in range(3):
        for ps in product(range(1, 4), repeat=m):
            for qs in product(range(1, 4), repeat=m):
                for last in range(-grid, grid + 1):
                    pq = MultirectCoords(ps + (last,), qs)
                    ok = multirect_from_interlacing(interlacing_from_multirect(pq)) == pq
                    result.check(ok, f"p={pq.p} q={pq.q}")
    result.check(interlacing_from_partition((4, 4, 2)) == (4, 2, 0, -1, -3), "(4,4,2) example")
    return result


def run_luoto_basis(n_max: int = 4) -> BatchResult:
    result = BatchResult("Luoto basis")
    for n in range(1, n_max + 1):
        Ks, words, matrix = luoto_matrix(n)
        result.check(exact_rank(matrix) == len(set_compositions_of(n)), f"rank degree {n}")
        for K in set_compositions_of(n):
            _, decoded = leading_evaluation(bold_N_P(poset_from_set_composition(K), n))
            result.check(decoded == K, f"decode {K}")
    return result


def run_positivity(n_max: int = 4, product_max: int = 4) -> BatchResult:
    result = BatchResult("positivity")
    for P in exhaustive_posets(n_max):
        expansion = luoto_expand_poset(P)
        ok = all(c >= 0 for c in expansion.values()) and expansion == splitting_expand(P)
        result.check(ok, str(P))
    for n1 in range(product_max + 1):
        for n2 in range(product_max + 1 - n1):
            for K in set_compositions_of(n1):
                for K2 in set_compositions_of(n2):
                    table = luoto_product(K, K2)
                    result.check(all(c >= 0 for c in table.values()), f"{K} * {K2}")
    return result


def run_collapse(n_max: int = 4, m_max: int = 2) -> BatchResult:
    result = BatchResult("collapse")
    for P in exhaustive_posets(n_max):
        k = max(P.n, 1)
        ok = commutative_projection(bold_F_P(P, k)) == F_P(P, k)
        for m in range(m_max + 1):
            ok = ok and commutative_projection(bold_N_P(P, m)) == N_P(P, m)
            ok = ok and collapse_to_x(N_P(P, m)) == F_P_truncated(P, m)
        result.check(ok, str(P))
    return result


def run_i_avoiding(n_max: int = 4, m_max: int = 3) -> BatchResult:
    result = BatchResult("i-avoiding merge")
    for P in exhaustive_posets(n_max):
        for m in range(1, m_max + 1):
            for i in range(1, m + 1):
                result.check(i_avoiding_bijection_holds(P, m, i), f"{P} m={m} i={i}")
    return result


ALL_RUNS: dict[str, Callable[..., BatchResult]] = {
    "main-theorem": run_main_theorem,
    "closed-forms": run_closed_forms,
    "spq-membership": run_spq_membership,
    "sx-theorem": run_sx_theorem,
    "coordinates": run_coordinates,
    "luoto-basis": run_luoto_basis,
    "positivity": run_positivity,
    "collapse": run_collapse,
    "i-avoiding": run_i_avoiding,
}
