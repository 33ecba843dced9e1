"""Exact rational linear algebra.

Dense helpers work on lists of :class:`~fractions.Fraction` rows.  Two span
containers are provided: :class:`Subspace` (dense, canonical reduced row
echelon form, used for subspaces of a Lie algebra or of a module) and
:class:`SparseSpan` (sparse rows keyed by arbitrary sortable monomials, used
for spans inside the enveloping algebra).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

Vec = tuple  # tuple of Fractions


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use int, str or Fraction")
    return Fraction(x)


def vec(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(to_fraction(v) for v in values)


def zero_vec(n: int) -> tuple[Fraction, ...]:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def is_zero(v: Sequence) -> bool:
    return all(c == 0 for c in v)


def add(u: Sequence, v: Sequence) -> tuple[Fraction, ...]:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple[Fraction, ...]:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> tuple[Fraction, ...]:
    return tuple(c * a for a in v)


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


# -- matrices ---------------------------------------------------------------

def matrix(rows: Iterable[Iterable]) -> list[list[Fraction]]:
    return [[to_fraction(x) for x in row] for row in rows]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * c for _ in range(r)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    if any(len(row) != inner for row in a):
        raise ValueError("matrix dimensions do not match for product")
    out = []
    for row in a:
        acc = [Fraction(0)] * cols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += x * bk[j]
        out.append(acc)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple[Fraction, ...]:
    return tuple(sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a)


def transpose(a: Sequence[Sequence]) -> list[list[Fraction]]:
    return [list(col) for col in zip(*a)]


def mat_sub(a, b) -> list[list[Fraction]]:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_add(a, b) -> list[list[Fraction]]:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a) -> list[list[Fraction]]:
    return [[c * x for x in row] for row in a]


def commutator(a, b) -> list[list[Fraction]]:
    return mat_sub(matmul(a, b), matmul(b, a))


def is_zero_matrix(a) -> bool:
    return all(x == 0 for row in a for x in row)


def mat_pow(a, k: int) -> list[list[Fraction]]:
    n = len(a)
    result = identity(n)
    base = [list(r) for r in a]
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def trace(a) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[to_fraction(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def det(a: Sequence[Sequence]) -> Fraction:
    m = [[to_fraction(x) for x in row] for row in a]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        p = m[c][c]
        d *= p
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / p
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


class SingularMatrixError(ValueError):
    pass


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("inverse needs a square matrix")
    aug = [list(map(to_fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug, n)
    if piv != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red]


def solve(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``a @ x = b`` (free variables set to 0) or None."""
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    aug = [list(map(to_fraction, a[i])) + [to_fraction(b[i])] for i in range(nrows)]
    red, piv = rref(aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, piv):
        x[c] = row[ncols]
    return tuple(x)


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of {x : a @ x = 0}."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    red, piv = rref(a, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, c in zip(red, piv):
            x[c] = -row[f]
        basis.append(tuple(x))
    return basis


# -- dense subspaces --------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n stored as its reduced row echelon basis.

    Equality of two subspaces is equality of the canonical bases.
    """

    ambient: int
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int) -> "Subspace":
        rows = [vec(v) for v in vectors]
        for r in rows:
            if len(r) != ambient:
                raise ValueError(f"vector of length {len(r)} in a {ambient}-dimensional space")
        red, _ = rref(rows, ambient)
        return cls(ambient, tuple(tuple(r) for r in red))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, tuple(unit_vec(ambient, i) for i in range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(r) if x != 0) for r in self.basis]

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Coordinates of v in the echelon basis, or None if v is outside."""
        v = vec(v)
        coords = tuple(v[p] for p in self.pivots)
        if lincomb(coords, self.basis, self.ambient) != v:
            return None
        return coords

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(b in self for b in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        # solve sum a_i s_i = sum b_j o_j
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient)
        cols = list(self.basis) + [scale(-1, o) for o in other.basis]
        a = transpose(cols)
        ns = nullspace(a, len(cols))
        k = len(self.basis)
        return Subspace.span([lincomb(x[:k], self.basis, self.ambient) for x in ns], self.ambient)

    def complement_in(self, bigger: "Subspace") -> "Subspace":
        """Echelon complement of self inside ``bigger``: greedily extend by rows of bigger."""
        chosen = []
        current = self
        for b in bigger.basis:
            if b not in current:
                chosen.append(b)
                current = current + Subspace.span([b], self.ambient)
        return Subspace.span(chosen, self.ambient)

    def image(self, m: Sequence[Sequence]) -> "Subspace":
        """Image under the linear map whose row i is the image of unit vector i."""
        return Subspace.span([matvec(transpose(m), b) for b in self.basis], len(m[0]) if m else 0)

    def __repr__(self) -> str:
        rows = "; ".join("(" + ", ".join(str(x) for x in r) + ")" for r in self.basis)
        return f"Subspace(dim={self.dim}, [{rows}])"


# -- sparse spans -----------------------------------------------------------

class SparseSpan:
    """Incremental semi-echelon basis of sparse vectors ``{key: Fraction}``.

    Every stored row has a distinct leading key under ``order`` (the largest
    key present).  When ``track`` is set, each row also remembers how it is
    expressed in the originally inserted generators, which makes
    :meth:`express` solve linear systems.
    """

    def __init__(self, order=None, track: bool = False):
        self._order = order if order is not None else (lambda k: k)
        self._rows: dict[Hashable, tuple[dict, dict | None]] = {}
        self._track = track
        self._ngens = 0

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> set:
        return set(self._rows)

    def _lead(self, v: dict):
        return max(v, key=self._order)

    def _reduce(self, v: dict, combo: dict | None) -> tuple[dict, dict | None]:
        v = dict(v)
        while v:
            lead = self._lead(v)
            row = self._rows.get(lead)
            if row is None:
                break
            prow, pcombo = row
            c = v[lead]
            for k, x in prow.items():
                nv = v.get(k, 0) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            if combo is not None:
                for k, x in pcombo.items():
                    nv = combo.get(k, 0) - c * x
                    if nv:
                        combo[k] = nv
                    else:
                        combo.pop(k, None)
        return v, combo

    def add(self, v: dict) -> bool:
        """Insert a generator; returns True if it increased the rank."""
        gen = self._ngens
        self._ngens += 1
        combo = {gen: Fraction(1)} if self._track else None
        r, combo = self._reduce(v, combo)
        if not r:
            return False
        lead = self._lead(r)
        c = r[lead]
        if c != 1:
            r = {k: x / c for k, x in r.items()}
            if combo is not None:
                combo = {k: x / c for k, x in combo.items()}
        self._rows[lead] = (r, combo)
        return True

    def residue(self, v: dict) -> dict:
        """Leading-term reduction of v; empty iff v lies in the span."""
        return self._reduce(v, None)[0]

    def __contains__(self, v: dict) -> bool:
        return not self.residue(v)

    def express(self, v: dict) -> dict | None:
        """Coefficients over inserted generators reproducing v, or None."""
        if not self._track:
            raise RuntimeError("express() needs a span built with track=True")
        r, combo = self._reduce(v, {})
        if r:
            return None
        return {k: -x for k, x in combo.items() if x}
