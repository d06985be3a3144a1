"""Exact polynomial engines: commutative, noncommutative and truncated series.

``CPoly`` is a sparse integer polynomial whose monomials are sorted tuples of
``(Var, exponent)`` pairs.  ``NCPoly`` maps words (tuples of ``Var``) to
integer coefficients.  ``SymSeries`` is an element of the free algebra on
``S_1, S_2, ...`` truncated at a weight cap, with ``CPoly`` coefficients keyed
by composition; it is only used to extract the ``S^I`` coefficients of
ordered products of ``sigma`` series.

Coefficients are Python ints, so there is no overflow to guard against.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

# letters within a group interleave by index: b_1 < d_1 < b_2 < d_2 < ...
_FAMILY_RANK = {"x": (0, 0), "a": (1, 0), "p": (2, 0), "q": (2, 1), "b": (3, 0), "d": (3, 1)}


class Var(NamedTuple):
    family: str
    index: int

    def __str__(self) -> str:
        return f"{self.family}{self.index}"


def var_key(v: Var) -> tuple[int, int, int]:
    group, sub = _FAMILY_RANK[v.family]
    return (group, v.index, sub)


def make_var(family: str, index: int) -> Var:
    if family not in _FAMILY_RANK:
        raise ValueError(f"unknown variable family {family!r}")
    if not isinstance(index, int) or index < 1:
        raise ValueError(f"variable index must be a positive int, got {index!r}")
    return Var(family, index)


Monomial = tuple[tuple[Var, int], ...]
Word = tuple[Var, ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda ve: var_key(ve[0])))


def _mono_order_key(mono: Monomial):
    # graded lex: higher degree first, then larger exponent on the smaller variable
    return (-sum(e for _, e in mono), tuple((var_key(v), -e) for v, e in mono))


def _word_order_key(word: Word):
    return (-len(word), tuple(var_key(v) for v in word))


class CPoly:
    """Sparse commutative polynomial with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self._terms: dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> CPoly:
        return cls({(): c})

    @classmethod
    def var(cls, family: str, index: int) -> CPoly:
        return cls({((make_var(family, index), 1),): 1})

    @classmethod
    def monomial(cls, exps: Mapping[Var, int], coef: int = 1) -> CPoly:
        mono = tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda ve: var_key(ve[0])))
        if any(e < 0 for _, e in mono):
            raise ValueError("negative exponent")
        return cls({mono: coef})

    @staticmethod
    def _coerce(other) -> CPoly:
        if isinstance(other, CPoly):
            return other
        if isinstance(other, int):
            return CPoly.const(other)
        return NotImplemented

    # -- container protocol -------------------------------------------------

    def items(self):
        return self._terms.items()

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(mono, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def __eq__(self, other) -> bool:
        other = CPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> CPoly:
        other = CPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return CPoly(out)

    __radd__ = __add__

    def __neg__(self) -> CPoly:
        return CPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> CPoly:
        other = CPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> CPoly:
        return (-self) + other

    def __mul__(self, other) -> CPoly:
        other = CPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return CPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CPoly:
        if k < 0:
            raise ValueError("negative power")
        result = CPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure ----------------------------------------------------------

    def variables(self) -> set[Var]:
        return {v for m in self._terms for v, _ in m}

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e for _, e in m) for m in self._terms}) <= 1

    def homogeneous_component(self, d: int) -> CPoly:
        return CPoly({m: c for m, c in self._terms.items() if sum(e for _, e in m) == d})

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda mc: _mono_order_key(mc[0]))

    def substitute(self, assignment: Mapping[Var, Union[CPoly, int]]) -> CPoly:
        """Image under the ring morphism fixing every unassigned variable."""
        images = {v: CPoly._coerce(f) for v, f in assignment.items()}
        powers: dict[tuple[Var, int], CPoly] = {}
        out = CPoly()
        acc: dict[Monomial, int] = {}
        for mono, coef in self._terms.items():
            kept = []
            image = CPoly.const(coef)
            for v, e in mono:
                if v in images:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = images[v] ** e
                    image = image * powers[key]
                    if not image:
                        break
                else:
                    kept.append((v, e))
            if not image:
                continue
            if kept:
                image = image * CPoly({tuple(kept): 1})
            for m, c in image._terms.items():
                acc[m] = acc.get(m, 0) + c
        out._terms = {m: c for m, c in acc.items() if c}
        return out

    def __repr__(self) -> str:
        return f"CPoly({format_cpoly(self)!r})"

    def __str__(self) -> str:
        return format_cpoly(self)


def x(i: int) -> CPoly:
    return CPoly.var("x", i)


def p(i: int) -> CPoly:
    return CPoly.var("p", i)


def q(i: int) -> CPoly:
    return CPoly.var("q", i)


def _format_sum(pieces: list[tuple[int, str]]) -> str:
    if not pieces:
        return "0"
    out = []
    for k, (c, body) in enumerate(pieces):
        sign = "-" if c < 0 else ("+" if k else "")
        mag = abs(c)
        if body:
            text = body if mag == 1 else f"{mag}*{body}"
        else:
            text = str(mag)
        out.append(f"{sign} {text}" if k else f"{sign}{text}")
    return " ".join(out)


def format_cpoly(f: CPoly) -> str:
    pieces = []
    for mono, c in f.sorted_terms():
        body = "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in mono)
        pieces.append((c, body))
    return _format_sum(pieces)


class NCPoly:
    """Noncommutative polynomial: a finite map from words to integers."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, int] | None = None):
        self._terms: dict[Word, int] = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> NCPoly:
        return cls({(): c})

    @classmethod
    def letter(cls, family: str, index: int) -> NCPoly:
        return cls({(make_var(family, index),): 1})

    @classmethod
    def word(cls, letters: Iterable[Var], coef: int = 1) -> NCPoly:
        return cls({tuple(letters): coef})

    @staticmethod
    def _coerce(other) -> NCPoly:
        if isinstance(other, NCPoly):
            return other
        if isinstance(other, int):
            return NCPoly.const(other)
        return NotImplemented

    def items(self):
        return self._terms.items()

    def coefficient(self, word: Word) -> int:
        return self._terms.get(tuple(word), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __eq__(self, other) -> bool:
        other = NCPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other) -> NCPoly:
        other = NCPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return NCPoly(out)

    __radd__ = __add__

    def __neg__(self) -> NCPoly:
        return NCPoly({w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> NCPoly:
        other = NCPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> NCPoly:
        other = NCPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Word, int] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return NCPoly(out)

    def __rmul__(self, other) -> NCPoly:
        other = NCPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self._terms}) <= 1

    def sorted_terms(self) -> list[tuple[Word, int]]:
        return sorted(self._terms.items(), key=lambda wc: _word_order_key(wc[0]))

    def letter_substitute(self, assignment: Mapping[Var, NCPoly]) -> NCPoly:
        """Replace letters by linear combinations of letters, keeping word order."""
        images: dict[Var, list[tuple[Var, int]]] = {}
        for v, f in assignment.items():
            f = NCPoly._coerce(f)
            if any(len(w) != 1 for w in f._terms):
                raise ValueError(f"image of {v} is not a linear combination of letters")
            images[v] = [(w[0], c) for w, c in f._terms.items()]
        out: dict[Word, int] = {}
        for word, coef in self._terms.items():
            partial: dict[Word, int] = {(): coef}
            for letter in word:
                choices = images.get(letter, [(letter, 1)])
                nxt: dict[Word, int] = {}
                for w, c in partial.items():
                    for v, cv in choices:
                        key = w + (v,)
                        nxt[key] = nxt.get(key, 0) + c * cv
                partial = nxt
                if not partial:
                    break
            for w, c in partial.items():
                out[w] = out.get(w, 0) + c
        return NCPoly(out)

    def abelianize(self, rename: Mapping[str, str] | None = None) -> CPoly:
        """Let the letters commute, optionally renaming letter families."""
        rename = rename or {}
        out: dict[Monomial, int] = {}
        for word, coef in self._terms.items():
            exps: dict[Var, int] = {}
            for v in word:
                v = Var(rename.get(v.family, v.family), v.index)
                exps[v] = exps.get(v, 0) + 1
            mono = tuple(sorted(exps.items(), key=lambda ve: var_key(ve[0])))
            out[mono] = out.get(mono, 0) + coef
        return CPoly(out)

    def __repr__(self) -> str:
        return f"NCPoly({format_ncpoly(self)!r})"

    def __str__(self) -> str:
        return format_ncpoly(self)


def format_ncpoly(f: NCPoly) -> str:
    return _format_sum([(c, "*".join(map(str, w))) for w, c in f.sorted_terms()])


# -- truncated series in the free algebra on S_1, S_2, ... ------------------


class SymSeries:
    """``sum_I c_I S^I`` over compositions ``I`` with ``|I| <= cap``."""

    __slots__ = ("cap", "_coeffs")

    def __init__(self, cap: int, coeffs: Mapping[tuple[int, ...], CPoly | int] | None = None):
        if cap < 0:
            raise ValueError("degree cap must be nonnegative")
        self.cap = cap
        self._coeffs: dict[tuple[int, ...], CPoly] = {}
        for I, c in (coeffs or {}).items():
            I = tuple(I)
            if any(i < 1 for i in I):
                raise ValueError(f"not a composition: {I!r}")
            c = CPoly._coerce(c)
            if sum(I) <= cap and c:
                self._coeffs[I] = c

    @classmethod
    def one(cls, cap: int) -> SymSeries:
        return cls(cap, {(): 1})

    def coefficient(self, I: Sequence[int]) -> CPoly:
        return self._coeffs.get(tuple(I), CPoly())

    def items(self):
        return self._coeffs.items()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymSeries):
            return NotImplemented
        return self.cap == other.cap and self._coeffs == other._coeffs

    def _check_cap(self, other: SymSeries) -> None:
        if self.cap != other.cap:
            raise ValueError(f"degree caps differ: {self.cap} vs {other.cap}")

    def __add__(self, other: SymSeries) -> SymSeries:
        self._check_cap(other)
        out = dict(self._coeffs)
        for I, c in other._coeffs.items():
            out[I] = out[I] + c if I in out else c
        return SymSeries(self.cap, out)

    def __neg__(self) -> SymSeries:
        return SymSeries(self.cap, {I: -c for I, c in self._coeffs.items()})

    def __sub__(self, other: SymSeries) -> SymSeries:
        return self + (-other)

    def __mul__(self, other: SymSeries) -> SymSeries:
        return self.mul(other)

    def mul(self, other: SymSeries, keep: frozenset | set | None = None) -> SymSeries:
        """Product, optionally computing only the coefficients indexed by ``keep``.

        When ``keep`` is prefix-closed, restricting both the left factor and
        the result to ``keep`` gives exact coefficients on ``keep``.
        """
        self._check_cap(other)
        out: dict[tuple[int, ...], CPoly] = {}
        for I, a in self._coeffs.items():
            room = self.cap - sum(I)
            for J, b in other._coeffs.items():
                if sum(J) > room:
                    continue
                IJ = I + J
                if keep is not None and IJ not in keep:
                    continue
                prod = a * b
                out[IJ] = out[IJ] + prod if IJ in out else prod
        return SymSeries(self.cap, out)

    def invert(self) -> SymSeries:
        """Inverse via the truncated geometric series ``sum_k (1 - A)^k``."""
        if self.coefficient(()) != CPoly.const(1):
            raise ValueError("series inversion needs constant term 1")
        one = SymSeries.one(self.cap)
        nil = one - self
        result = one
        power = one
        # each factor of nil raises the weight by at least one
        for _ in range(self.cap):
            power = power * nil
            result = result + power
        return result

    def __repr__(self) -> str:
        body = ", ".join(f"{I}: {c}" for I, c in sorted(self._coeffs.items()))
        return f"SymSeries(cap={self.cap}, {{{body}}})"


def symseries_multiply(A: SymSeries, B: SymSeries) -> SymSeries:
    return A * B


def symseries_invert(A: SymSeries) -> SymSeries:
    return A.invert()


def sigma_series(t: CPoly | Var, cap: int) -> SymSeries:
    """``sigma_t(A) = sum_{n <= cap} t^n S_n`` as a truncated series."""
    if isinstance(t, Var):
        t = CPoly.var(t.family, t.index)
    return SymSeries(cap, {((n,) if n else ()): t ** n for n in range(cap + 1)})


@lru_cache(maxsize=None)
def _sigma_power(v: Var, sign: int, cap: int) -> SymSeries:
    s = sigma_series(v, cap)
    return s if sign > 0 else s.invert()


def alternating_sigma_product(
    n_letters: int, cap: int, keep: frozenset | None = None
) -> SymSeries:
    """Ordered product ``prod_{j=1}^{n_letters} sigma_{x_j}(A)^{(-1)^j}``.

    ``keep`` must be prefix-closed; see ``SymSeries.mul``.
    """
    result = SymSeries.one(cap)
    for j in range(1, n_letters + 1):
        result = result.mul(_sigma_power(Var("x", j), (-1) ** j, cap), keep)
    return result


# -- exact linear algebra over Q --------------------------------------------


def row_echelon(rows: Sequence[Sequence[int | Fraction]]) -> list[list[Fraction]]:
    """Reduced row echelon form over the rationals; zero rows dropped."""
    mat = [[Fraction(v) for v in row] for row in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        pivot = next((r for r in range(pivot_row, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        lead = mat[pivot_row][col]
        mat[pivot_row] = [v / lead for v in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return mat[:pivot_row]


def exact_rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    return len(row_echelon(rows))


def solve_exact(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction]:
    """Solve the square system ``matrix @ x = rhs`` exactly.

    Raises ``ValueError`` if the matrix is singular.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("solve_exact needs a square system")
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced = row_echelon(augmented)
    if len(reduced) < n or any(reduced[i][i] != 1 for i in range(n)):
        raise ValueError("singular system")
    return [reduced[i][n] for i in range(n)]


def inverse_exact(matrix: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(matrix)
    augmented = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(matrix)]
    reduced = row_echelon(augmented)
    if len(reduced) < n or any(reduced[i][i] != 1 for i in range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in reduced]


# -- JSON encodings ---------------------------------------------------------


def cpoly_to_json(f: CPoly) -> dict:
    return {
        "terms": [
            {"coef": c, "mono": [[v.family, v.index, e] for v, e in mono]}
            for mono, c in f.sorted_terms()
        ]
    }


def cpoly_from_json(obj: Mapping) -> CPoly:
    out = CPoly()
    for term in obj["terms"]:
        exps: dict[Var, int] = {}
        for family, index, e in term["mono"]:
            v = make_var(family, index)
            exps[v] = exps.get(v, 0) + int(e)
        out = out + CPoly.monomial(exps, int(term["coef"]))
    return out


def ncpoly_to_json(f: NCPoly) -> dict:
    return {
        "terms": [
            {"coef": c, "word": [[v.family, v.index] for v in word]}
            for word, c in f.sorted_terms()
        ]
    }


def ncpoly_from_json(obj: Mapping) -> NCPoly:
    out = NCPoly()
    for term in obj["terms"]:
        word = tuple(make_var(family, index) for family, index in term["word"])
        out = out + NCPoly.word(word, int(term["coef"]))
    return out
