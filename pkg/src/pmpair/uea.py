"""Universal enveloping algebras: free noncommutative polynomials over a Lie
algebra's basis and their PBW normal forms.

Ordered monomials ``b_1^m_1 ... b_d^m_d`` (exponent tuples) form the PBW
basis.  Straightening uses ``b_j b_i -> b_i b_j + [b_j, b_i]`` for ``j > i``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import linalg
from .certificate import Certificate
from .lie import LieAlgebra, LieAlgebraError

Word = tuple[int, ...]
Mono = tuple[int, ...]


def _accumulate(target: dict, key, c: Fraction) -> None:
    v = target.get(key, 0) + c
    if v:
        target[key] = v
    else:
        target.pop(key, None)


class NCPoly:
    """Element of the free associative algebra on the basis of ``L``."""

    __slots__ = ("L", "terms")

    def __init__(self, L: LieAlgebra, terms: Mapping[Word, Fraction] | None = None):
        self.L = L
        self.terms: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            c = linalg.to_fraction(c)
            if c:
                w = tuple(w)
                if any(not 0 <= i < L.dim for i in w):
                    raise LieAlgebraError(f"word {w} has an index out of range")
                _accumulate(self.terms, w, c)

    @classmethod
    def unit(cls, L: LieAlgebra) -> "NCPoly":
        return cls(L, {(): Fraction(1)})

    @classmethod
    def word(cls, L: LieAlgebra, letters: Iterable, coeff=1) -> "NCPoly":
        w = tuple(L.index(s) if isinstance(s, str) else int(s) for s in letters)
        return cls(L, {w: coeff})

    def _check(self, other: "NCPoly") -> None:
        if other.L is not self.L and other.L != self.L:
            raise LieAlgebraError("polynomials live over different algebras")

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(out, w, c)
        return NCPoly._raw(self.L, out)

    def __neg__(self) -> "NCPoly":
        return NCPoly._raw(self.L, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            return nc_multiply(self, other)
        c = linalg.to_fraction(other)
        if not c:
            return NCPoly(self.L)
        return NCPoly._raw(self.L, {w: c * a for w, a in self.terms.items()})

    def __rmul__(self, other) -> "NCPoly":
        return self * other

    def __pow__(self, n: int) -> "NCPoly":
        out = NCPoly.unit(self.L)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, NCPoly) and self.L == other.L and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    @classmethod
    def _raw(cls, L, terms) -> "NCPoly":
        p = cls.__new__(cls)
        p.L = L
        p.terms = terms
        return p

    def __repr__(self) -> str:
        return f"NCPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: (-len(t[0]), t[0]))
        parts = []
        for k, (w, c) in enumerate(items):
            body = "".join(self.L.names[i] if len(self.L.names[i]) == 1 else f"({self.L.names[i]})" for i in w) or "1"
            parts.append(_term(c, body, k == 0, w == ()))
        return "".join(parts)


def _term(c: Fraction, body: str, first: bool, is_unit: bool) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if is_unit:
        text = str(a)
    elif a == 1:
        text = body
    else:
        text = f"{a} {body}"
    if first:
        return text if c > 0 else f"-{text}"
    return f" {sign} {text}"


def nc_multiply(p: NCPoly, q: NCPoly) -> NCPoly:
    p._check(q)
    out: dict[Word, Fraction] = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            _accumulate(out, w1 + w2, c1 * c2)
    return NCPoly._raw(p.L, out)


def embed(L: LieAlgebra, v) -> NCPoly:
    v = L.vector(v)
    return NCPoly(L, {(i,): c for i, c in enumerate(v) if c})


def power(L: LieAlgebra, v, n: int) -> NCPoly:
    if n < 0:
        raise ValueError("power needs n >= 0")
    return embed(L, v) ** n


class PBWPoly:
    """Element of U(L) in the PBW basis: ``{exponent tuple: coefficient}``."""

    __slots__ = ("L", "terms")

    def __init__(self, L: LieAlgebra, terms: Mapping[Mono, Fraction] | None = None):
        self.L = L
        self.terms: dict[Mono, Fraction] = {}
        for m, c in (terms or {}).items():
            c = linalg.to_fraction(c)
            if c:
                if len(m) != L.dim or any(e < 0 for e in m):
                    raise LieAlgebraError(f"bad PBW exponent vector {m}")
                _accumulate(self.terms, tuple(m), c)

    @classmethod
    def _raw(cls, L, terms) -> "PBWPoly":
        p = cls.__new__(cls)
        p.L = L
        p.terms = terms
        return p

    @classmethod
    def unit(cls, L: LieAlgebra) -> "PBWPoly":
        return cls._raw(L, {(0,) * L.dim: Fraction(1)})

    @classmethod
    def monomial(cls, L: LieAlgebra, m: Sequence[int], coeff=1) -> "PBWPoly":
        return cls(L, {tuple(m): coeff})

    def __add__(self, other: "PBWPoly") -> "PBWPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return PBWPoly._raw(self.L, out)

    def __neg__(self) -> "PBWPoly":
        return PBWPoly._raw(self.L, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "PBWPoly") -> "PBWPoly":
        return self + (-other)

    def __mul__(self, other) -> "PBWPoly":
        if isinstance(other, PBWPoly):
            return pbw_multiply(self, other)
        c = linalg.to_fraction(other)
        if not c:
            return PBWPoly(self.L)
        return PBWPoly._raw(self.L, {m: c * a for m, a in self.terms.items()})

    def __rmul__(self, other) -> "PBWPoly":
        return self * other

    def __eq__(self, other) -> bool:
        return isinstance(other, PBWPoly) and self.L == other.L and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def top(self) -> dict[Mono, Fraction]:
        d = self.degree
        return {m: c for m, c in self.terms.items() if sum(m) == d}

    def sorted_terms(self) -> list[tuple[Mono, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            body = " ".join(
                (s if e == 1 else f"{s}^{e}") for s, e in zip(self.L.names, m) if e
            )
            parts.append(_term(c, body, k == 0, not any(m)))
        return "".join(parts)

    def __repr__(self) -> str:
        return f"PBWPoly({self})"

    def to_ncpoly(self) -> NCPoly:
        out = {}
        for m, c in self.terms.items():
            w = tuple(i for i, e in enumerate(m) for _ in range(e))
            out[w] = c
        return NCPoly._raw(self.L, out)


class _Straightener:
    """Memoized products of PBW monomials with basis elements for one algebra."""

    def __init__(self, L: LieAlgebra):
        self.L = L
        self.n = L.dim
        self._mul: dict[tuple[Mono, int], dict[Mono, Fraction]] = {}
        self.word_nf = lru_cache(maxsize=200_000)(self._word_nf)

    def mul_gen(self, m: Mono, i: int) -> dict[Mono, Fraction]:
        key = (m, i)
        hit = self._mul.get(key)
        if hit is not None:
            return hit
        j = max((k for k in range(self.n) if m[k]), default=-1)
        if j <= i:
            res = {m[:i] + (m[i] + 1,) + m[i + 1:]: Fraction(1)}
        else:
            # m b_i = m' b_j b_i = (m' b_i) b_j + m' [b_j, b_i]
            mp = m[:j] + (m[j] - 1,) + m[j + 1:]
            res: dict[Mono, Fraction] = {}
            for mm, c in self.mul_gen(mp, i).items():
                for mm2, c2 in self.mul_gen(mm, j).items():
                    _accumulate(res, mm2, c * c2)
            for k, ck in self.L.bracket_basis(j, i):
                for mm, c in self.mul_gen(mp, k).items():
                    _accumulate(res, mm, ck * c)
        self._mul[key] = res
        return res

    def times_gen(self, p: Mapping[Mono, Fraction], i: int) -> dict[Mono, Fraction]:
        out: dict[Mono, Fraction] = {}
        for m, c in p.items():
            for mm, c2 in self.mul_gen(m, i).items():
                _accumulate(out, mm, c * c2)
        return out

    def times_vector(self, p: Mapping[Mono, Fraction], v: Sequence[Fraction]) -> dict[Mono, Fraction]:
        out: dict[Mono, Fraction] = {}
        for i, a in enumerate(v):
            if a:
                for m, c in self.times_gen(p, i).items():
                    _accumulate(out, m, a * c)
        return out

    def _word_nf(self, w: Word) -> dict[Mono, Fraction]:
        if not w:
            return {(0,) * self.n: Fraction(1)}
        return self.times_gen(self.word_nf(w[:-1]), w[-1])


_STRAIGHTENERS: dict[LieAlgebra, _Straightener] = {}


def straightener(L: LieAlgebra) -> _Straightener:
    s = _STRAIGHTENERS.get(L)
    if s is None:
        s = _STRAIGHTENERS.setdefault(L, _Straightener(L))
    return s


def pbw_normal_form(p: NCPoly) -> PBWPoly:
    s = straightener(p.L)
    out: dict[Mono, Fraction] = {}
    for w, c in p.terms.items():
        for m, c2 in s.word_nf(w).items():
            _accumulate(out, m, c * c2)
    return PBWPoly._raw(p.L, out)


nf = pbw_normal_form


def pbw_multiply(p: PBWPoly, q: PBWPoly) -> PBWPoly:
    s = straightener(p.L)
    out: dict[Mono, Fraction] = {}
    for m, c in q.terms.items():
        part = dict(p.terms)
        for i, e in enumerate(m):
            for _ in range(e):
                part = s.times_gen(part, i)
        for mm, c2 in part.items():
            _accumulate(out, mm, c * c2)
    return PBWPoly._raw(p.L, out)


def pbw_times_vector(p: PBWPoly, v: Sequence) -> PBWPoly:
    return PBWPoly._raw(p.L, straightener(p.L).times_vector(p.terms, p.L.vector(v)))


def vector_times_pbw(v: Sequence, p: PBWPoly) -> PBWPoly:
    return pbw_normal_form(embed(p.L, v)) * p


def rewrite_leftmost(p: NCPoly) -> PBWPoly:
    """Reference straightening: rewrite the leftmost misordered adjacent pair
    until every word is ordered.  Exponential in degree; for cross-checks."""
    L = p.L
    memo: dict[Word, dict[Mono, Fraction]] = {}

    def go(w: Word) -> dict[Mono, Fraction]:
        if w in memo:
            return memo[w]
        pos = next((k for k in range(len(w) - 1) if w[k] > w[k + 1]), None)
        if pos is None:
            m = [0] * L.dim
            for i in w:
                m[i] += 1
            res = {tuple(m): Fraction(1)}
        else:
            j, i = w[pos], w[pos + 1]
            res = dict(go(w[:pos] + (i, j) + w[pos + 2:]))
            for k, ck in L.bracket_basis(j, i):
                for m, c in go(w[:pos] + (k,) + w[pos + 2:]).items():
                    _accumulate(res, m, ck * c)
        memo[w] = res
        return res

    out: dict[Mono, Fraction] = {}
    for w, c in p.terms.items():
        for m, c2 in go(w).items():
            _accumulate(out, m, c * c2)
    return PBWPoly._raw(L, out)


def verify_identity(lhs: NCPoly, rhs: NCPoly) -> Certificate:
    lhs._check(rhs)
    diff = pbw_normal_form(lhs - rhs)
    if diff:
        return Certificate("identity", False, witnesses=[f"difference {diff}"],
                           details={"lhs": str(pbw_normal_form(lhs)), "rhs": str(pbw_normal_form(rhs))})
    return Certificate("identity", True, degree=max(lhs.degree, rhs.degree))


def symbol(p: NCPoly) -> dict[Mono, Fraction]:
    """Commutative image of the top-degree part of p."""
    d = p.degree
    out: dict[Mono, Fraction] = {}
    for w, c in p.terms.items():
        if len(w) == d:
            m = [0] * p.L.dim
            for i in w:
                m[i] += 1
            _accumulate(out, tuple(m), c)
    return out


def count_monomials(dim: int, degree: int) -> int:
    """Number of PBW monomials of total degree <= ``degree``."""
    from math import comb

    return comb(degree + dim, dim)


def monomials_up_to(dim: int, degree: int) -> list[Mono]:
    out: list[Mono] = []

    def rec(prefix: list[int], left: int) -> None:
        if len(prefix) == dim:
            out.append(tuple(prefix))
            return
        for e in range(left + 1):
            prefix.append(e)
            rec(prefix, left - e)
            prefix.pop()

    rec([], degree)
    return out
