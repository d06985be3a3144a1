from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from pqsym.algebra import (
    CPoly,
    NCPoly,
    SymSeries,
    Var,
    alternating_sigma_product,
    cpoly_from_json,
    cpoly_to_json,
    exact_rank,
    format_cpoly,
    inverse_exact,
    make_var,
    ncpoly_from_json,
    ncpoly_to_json,
    p,
    q,
    sigma_series,
    solve_exact,
    x,
)
from pqsym.combinatorics import all_compositions

VARS = [Var("x", 1), Var("x", 2), Var("x", 3), Var("p", 1), Var("q", 1)]


@st.composite
def cpolys(draw, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, 2)) for _ in VARS)
        mono = tuple((v, e) for v, e in zip(VARS, exps) if e)
        terms[mono] = terms.get(mono, 0) + draw(st.integers(-3, 3))
    return CPoly(terms)


def to_sympy(f: CPoly):
    syms = {v: sympy.Symbol(f"{v.family}{v.index}") for v in VARS}
    out = sympy.Integer(0)
    for mono, c in f.items():
        term = sympy.Integer(c)
        for v, e in mono:
            term *= syms[v] ** e
        out += term
    return sympy.expand(out)


letters = st.sampled_from([Var("b", 1), Var("d", 1), Var("b", 2)])


@st.composite
def ncpolys(draw):
    terms = {}
    for _ in range(draw(st.integers(0, 3))):
        w = tuple(draw(st.lists(letters, max_size=3)))
        terms[w] = terms.get(w, 0) + draw(st.integers(-2, 2))
    return NCPoly(terms)


class TestCPoly:
    def test_examples(self):
        assert x(1) + (-x(1)) == CPoly()
        assert (x(1) + x(2)) * (x(1) + x(2)) == x(1) ** 2 + 2 * x(1) * x(2) + x(2) ** 2
        assert (p(1) + p(2)) * q(1) == p(1) * q(1) + p(2) * q(1)
        assert (x(1) * x(2)).substitute({Var("x", 2): x(1)}) == x(1) ** 2
        assert x(3).substitute({Var("x", 3): 0}) == CPoly()

    def test_hand_substitution(self):
        f = -x(1) + x(2) - x(3)
        sub = {Var("x", 1): q(1) + p(1) + p(2), Var("x", 2): q(1) + p(2), Var("x", 3): p(2)}
        assert f.substitute(sub) == -p(1) - p(2)

    def test_zero_coefficients_dropped(self):
        assert len(CPoly({((Var("x", 1), 1),): 0})) == 0
        assert (x(1) - x(1)).degree() == -1 or not (x(1) - x(1))

    def test_variables_and_degree(self):
        f = x(1) ** 3 * p(2) + q(1)
        assert f.variables() == {Var("x", 1), Var("p", 2), Var("q", 1)}
        assert f.degree() == 4
        assert not f.is_homogeneous()
        assert f.homogeneous_component(1) == q(1)

    def test_bad_variable(self):
        with pytest.raises(ValueError):
            make_var("z", 1)
        with pytest.raises(ValueError):
            make_var("x", 0)

    @given(cpolys(), cpolys(), cpolys())
    def test_ring_axioms(self, f, g, h):
        assert f + g == g + f
        assert f * g == g * f
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f + CPoly() == f and f * 1 == f
        assert f - f == CPoly()

    @given(cpolys(), cpolys())
    def test_sympy_oracle(self, f, g):
        assert to_sympy(f * g) == sympy.expand(to_sympy(f) * to_sympy(g))
        assert to_sympy(f - g) == sympy.expand(to_sympy(f) - to_sympy(g))

    @given(cpolys(), cpolys(), cpolys(max_terms=2), cpolys(max_terms=2))
    def test_substitution_is_ring_morphism(self, f, g, a, b):
        sub = {Var("x", 1): a, Var("p", 1): b}
        assert (f * g).substitute(sub) == f.substitute(sub) * g.substitute(sub)
        assert (f + g).substitute(sub) == f.substitute(sub) + g.substitute(sub)

    @given(cpolys(), cpolys(max_terms=2), cpolys(max_terms=2))
    def test_substitution_is_simultaneous(self, f, a, b):
        sub = {Var("x", 1): a, Var("x", 2): b}
        syms = {f"{v.family}{v.index}": sympy.Symbol(f"{v.family}{v.index}") for v in VARS}
        expected = to_sympy(f).subs(
            {syms["x1"]: to_sympy(a), syms["x2"]: to_sympy(b)}, simultaneous=True
        )
        assert to_sympy(f.substitute(sub)) == sympy.expand(expected)

    @given(cpolys())
    def test_json_round_trip(self, f):
        assert cpoly_from_json(cpoly_to_json(f)) == f

    def test_canonical_order(self):
        f = x(2) + x(1) ** 2 + 3 * x(1)
        assert format_cpoly(f) == "x1^2 + 3*x1 + x2"


class TestNCPoly:
    def test_noncommutative(self):
        b1, d1 = NCPoly.letter("b", 1), NCPoly.letter("d", 1)
        assert b1 * d1 != d1 * b1
        assert (NCPoly.letter("b", 1) + NCPoly.letter("b", 2)) * b1 == b1 * b1 + NCPoly.letter("b", 2) * b1

    def test_letter_substitution(self):
        a1, a2 = Var("a", 1), Var("a", 2)
        f = NCPoly.word((a1, a2))
        b1, d1 = NCPoly.letter("b", 1), NCPoly.letter("d", 1)
        assert f.letter_substitute({a1: b1 + d1, a2: b1}) == b1 * b1 + d1 * b1

    def test_nonlinear_image_rejected(self):
        a1 = Var("a", 1)
        b1 = NCPoly.letter("b", 1)
        with pytest.raises(ValueError):
            NCPoly.word((a1,)).letter_substitute({a1: b1 * b1})

    @given(ncpolys(), ncpolys(), ncpolys())
    def test_ring_axioms(self, f, g, h):
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f + g) * h == f * h + g * h
        assert f * 1 == f == 1 * f

    @given(ncpolys(), ncpolys())
    def test_letter_substitution_is_morphism(self, f, g):
        sub = {Var("b", 1): NCPoly.letter("b", 2) + NCPoly.letter("d", 1)}
        assert (f * g).letter_substitute(sub) == f.letter_substitute(sub) * g.letter_substitute(sub)

    @given(ncpolys(), ncpolys())
    def test_abelianization_is_morphism(self, f, g):
        assert (f * g).abelianize() == f.abelianize() * g.abelianize()

    def test_commutator_abelianizes_to_zero(self):
        a1, a2 = NCPoly.letter("a", 1), NCPoly.letter("a", 2)
        assert (a1 * a2 - a2 * a1).abelianize() == CPoly()

    @given(ncpolys())
    def test_json_round_trip(self, f):
        assert ncpoly_from_json(ncpoly_to_json(f)) == f


class TestSymSeries:
    def test_basis_products(self):
        S1 = SymSeries(2, {(1,): 1})
        assert S1 * S1 == SymSeries(2, {(1, 1): 1})
        A = SymSeries(2, {(): 1, (1,): x(1)})
        B = SymSeries(2, {(): 1, (1,): x(2)})
        assert A * B == SymSeries(2, {(): 1, (1,): x(1) + x(2), (1, 1): x(1) * x(2)})

    def test_sigma(self):
        assert sigma_series(Var("x", 1), 0) == SymSeries.one(0)
        assert sigma_series(Var("x", 1), 2) == SymSeries(2, {(): 1, (1,): x(1), (2,): x(1) ** 2})

    def test_invert_one(self):
        assert SymSeries.one(3).invert() == SymSeries.one(3)

    def test_invert_needs_unit(self):
        with pytest.raises(ValueError):
            SymSeries(2, {(1,): 1}).invert()

    @given(st.lists(st.tuples(st.sampled_from(all_compositions(5)[1:]), st.integers(-3, 3)), max_size=5))
    def test_inverse_to_degree_five(self, terms):
        coeffs = {(): 1}
        for I, c in terms:
            coeffs[I] = coeffs.get(I, 0) + c * x(1) ** (len(I) % 2)
        A = SymSeries(5, coeffs)
        inv = A.invert()
        assert A * inv == SymSeries.one(5)
        assert inv * A == SymSeries.one(5)

    def test_sigma_inverse_closed_form(self):
        # sigma_t^{-1} has coefficient (-1)^len(I) t^|I| on every S^I
        inv = sigma_series(Var("x", 1), 4).invert()
        for I in all_compositions(4):
            assert inv.coefficient(I) == (-1) ** len(I) * x(1) ** sum(I)

    def test_restricted_product_agrees(self):
        full = alternating_sigma_product(3, 3)
        keep = frozenset({(), (2,), (2, 1)})
        part = alternating_sigma_product(3, 3, keep)
        assert part.coefficient((2, 1)) == full.coefficient((2, 1))


class TestExactLinearAlgebra:
    def test_rank(self):
        assert exact_rank([[1, 2], [2, 4]]) == 1
        assert exact_rank([[1, 0], [0, 1]]) == 2
        assert exact_rank([]) == 0

    @given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
    def test_rank_matches_sympy(self, rows):
        assert exact_rank(rows) == sympy.Matrix(rows).rank()

    def test_inverse_and_solve(self):
        A = [[2, 1], [1, 1]]
        assert inverse_exact(A) == [[1, -1], [-1, 2]]
        assert solve_exact(A, [3, 2]) == [Fraction(1), Fraction(1)]
        with pytest.raises(ValueError):
            inverse_exact([[1, 2], [2, 4]])
