"""Lie algebras over Q given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import linalg
from .certificate import Certificate
from .linalg import Subspace, vec


class LieAlgebraError(ValueError):
    pass


def format_coeff_term(c: Fraction, sym: str, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    a = abs(c)
    body = sym if a == 1 else f"{a}{sym}" if a.denominator == 1 else f"{a}*{sym}"
    if first:
        return f"{sign}{body}"
    return f" {sign} {body}"


class LieAlgebra:
    """Finite-dimensional Lie algebra with basis ``names``.

    ``structure[i][j]`` is the coordinate vector of ``[b_i, b_j]``.  No
    axioms are enforced on construction; see :func:`check_axioms`.
    """

    def __init__(self, names: Sequence[str], structure, name: str | None = None):
        self.names = tuple(names)
        self.dim = len(self.names)
        if len(set(self.names)) != self.dim:
            raise LieAlgebraError("basis symbols must be distinct")
        n = self.dim
        if len(structure) != n or any(len(row) != n for row in structure):
            raise LieAlgebraError(f"structure table must be {n}x{n}")
        self.structure = tuple(tuple(vec(structure[i][j]) for j in range(n)) for i in range(n))
        for row in self.structure:
            for v in row:
                if len(v) != n:
                    raise LieAlgebraError("structure constant vector has wrong length")
        self.name = name or "L"
        self._sparse = {
            (i, j): tuple((k, c) for k, c in enumerate(self.structure[i][j]) if c)
            for i in range(n)
            for j in range(n)
        }
        self._index = {s: i for i, s in enumerate(self.names)}

    @classmethod
    def from_brackets(cls, names: Sequence[str], brackets: Mapping, name: str | None = None) -> "LieAlgebra":
        """Build from ``{(a, b): value}`` where a, b are symbols or indices and
        value is a coordinate sequence or a ``{symbol: coeff}`` mapping.

        The antisymmetric partner is filled in unless it is given explicitly.
        """
        names = tuple(names)
        n = len(names)
        idx = {s: i for i, s in enumerate(names)}

        def pos(a):
            return idx[a] if isinstance(a, str) else int(a)

        def coords(value):
            if isinstance(value, Mapping):
                out = [Fraction(0)] * n
                for s, c in value.items():
                    out[pos(s)] += linalg.to_fraction(c)
                return tuple(out)
            return vec(value)

        table = [[linalg.zero_vec(n) for _ in range(n)] for _ in range(n)]
        given = set()
        for (a, b), value in brackets.items():
            i, j = pos(a), pos(b)
            table[i][j] = coords(value)
            given.add((i, j))
        for i, j in list(given):
            if (j, i) not in given:
                table[j][i] = linalg.scale(-1, table[i][j])
        return cls(names, table, name)

    # -- elements ---------------------------------------------------------

    def index(self, sym: str) -> int:
        try:
            return self._index[sym]
        except KeyError:
            raise LieAlgebraError(f"unknown basis symbol {sym!r}") from None

    def basis_vector(self, i) -> tuple[Fraction, ...]:
        if isinstance(i, str):
            i = self.index(i)
        return linalg.unit_vec(self.dim, i)

    def basis_vectors(self) -> list[tuple[Fraction, ...]]:
        return [self.basis_vector(i) for i in range(self.dim)]

    def vector(self, value) -> tuple[Fraction, ...]:
        """Coordinates from a symbol, a ``{symbol: coeff}`` mapping or a sequence."""
        if isinstance(value, str):
            return self.basis_vector(value)
        if isinstance(value, Mapping):
            out = [Fraction(0)] * self.dim
            for s, c in value.items():
                out[self.index(s) if isinstance(s, str) else s] += linalg.to_fraction(c)
            return tuple(out)
        v = vec(value)
        if len(v) != self.dim:
            raise LieAlgebraError(f"vector of length {len(v)} for a {self.dim}-dimensional algebra")
        return v

    def zero(self) -> tuple[Fraction, ...]:
        return linalg.zero_vec(self.dim)

    def format(self, v: Sequence) -> str:
        terms = [(c, s) for c, s in zip(v, self.names) if c]
        if not terms:
            return "0"
        return "".join(format_coeff_term(c, s, k == 0) for k, (c, s) in enumerate(terms))

    # -- bracket ----------------------------------------------------------

    def bracket(self, u: Sequence, v: Sequence) -> tuple[Fraction, ...]:
        if len(u) != self.dim or len(v) != self.dim:
            raise LieAlgebraError("dimension mismatch in bracket")
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in self._sparse[i, j]:
                    out[k] += ab * c
        return tuple(out)

    def bracket_basis(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        """Sparse ``[b_i, b_j]`` as ``((k, coeff), ...)``."""
        return self._sparse[i, j]

    def ad(self, v: Sequence) -> list[list[Fraction]]:
        """Matrix of ad v; column j holds the coordinates of [v, b_j]."""
        cols = [self.bracket(v, self.basis_vector(j)) for j in range(self.dim)]
        return linalg.transpose(cols)

    def restricted_matrix(self, op, space: Subspace) -> list[list[Fraction]]:
        """Matrix of a linear map ``op`` on an invariant subspace, in the
        subspace's echelon basis (column convention)."""
        cols = []
        for b in space.basis:
            c = space.coordinates(op(b))
            if c is None:
                raise LieAlgebraError("subspace is not invariant")
            cols.append(c)
        return linalg.transpose(cols) if cols else []

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.names == other.names and self.structure == other.structure

    def __hash__(self) -> int:
        return hash((self.names, self.structure))

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, basis={' '.join(self.names)})"

    def describe(self) -> str:
        lines = [f"algebra {self.name}", "basis " + " ".join(self.names)]
        for i, j in combinations(range(self.dim), 2):
            v = self.structure[i][j]
            if not linalg.is_zero(v):
                lines.append(f"bracket [{self.names[i]},{self.names[j]}] = {self.format(v)}")
        return "\n".join(lines)


# -- validation ---------------------------------------------------------------

def check_axioms(L: LieAlgebra) -> Certificate:
    n = L.dim
    for i in range(n):
        if not linalg.is_zero(L.structure[i][i]):
            return Certificate("axioms", False, witnesses=[f"antisymmetry ({i + 1},{i + 1})"],
                               details={"reason": "antisymmetry", "pair": [L.names[i], L.names[i]]})
    for i, j in combinations(range(n), 2):
        if linalg.add(L.structure[i][j], L.structure[j][i]) != L.zero():
            return Certificate("axioms", False, witnesses=[f"antisymmetry ({i + 1},{j + 1})"],
                               details={"reason": "antisymmetry", "pair": [L.names[i], L.names[j]]})
    basis = L.basis_vectors()
    for i, j, k in combinations(range(n), 3):
        a, b, c = basis[i], basis[j], basis[k]
        jac = linalg.add(
            linalg.add(L.bracket(a, L.bracket(b, c)), L.bracket(b, L.bracket(c, a))),
            L.bracket(c, L.bracket(a, b)),
        )
        if not linalg.is_zero(jac):
            return Certificate("axioms", False, witnesses=[f"jacobi ({i + 1},{j + 1},{k + 1})"],
                               details={"reason": "jacobi", "triple": [L.names[i], L.names[j], L.names[k]],
                                        "value": L.format(jac)})
    return Certificate("axioms", True, details={"dim": n})


def is_lie_algebra(L: LieAlgebra) -> bool:
    return check_axioms(L).verdict


# -- subspaces ----------------------------------------------------------------

def span(L: LieAlgebra, vectors: Iterable) -> Subspace:
    return Subspace.span([L.vector(v) for v in vectors], L.dim)


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    return Subspace.span([L.structure[i][j] for i, j in combinations(range(L.dim), 2)], L.dim)


def center(L: LieAlgebra) -> Subspace:
    # v is central iff sum_i v_i [b_i, b_j] = 0 for every j
    rows = []
    for j in range(L.dim):
        for k in range(L.dim):
            rows.append([L.structure[i][j][k] for i in range(L.dim)])
    return Subspace.span(linalg.nullspace(rows, L.dim), L.dim)


def bracket_space(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    return Subspace.span([L.bracket(a, b) for a in A.basis for b in B.basis], L.dim)


def is_subalgebra(L: LieAlgebra, S: Subspace) -> bool:
    return S.contains_subspace(bracket_space(L, S, S))


def is_abelian_subspace(L: LieAlgebra, S: Subspace) -> bool:
    return bracket_space(L, S, S).dim == 0


def generated_subalgebra(L: LieAlgebra, gens: Iterable) -> Subspace:
    gens = [L.vector(g) for g in gens]
    if not gens:
        raise LieAlgebraError("generated_subalgebra needs at least one generator")
    S = Subspace.span(gens, L.dim)
    while True:
        T = S + bracket_space(L, S, S)
        if T.dim == S.dim:
            return S
        S = T


def generates(L: LieAlgebra, gens: Iterable) -> bool:
    return generated_subalgebra(L, gens).dim == L.dim


def change_basis(L: LieAlgebra, T: Sequence[Sequence], name: str | None = None) -> LieAlgebra:
    """Algebra in the new basis whose i-th element has old coordinates ``T[i]``."""
    T = linalg.matrix(T)
    if len(T) != L.dim or any(len(r) != L.dim for r in T):
        raise LieAlgebraError("basis change matrix has the wrong shape")
    try:
        Tinv_t = linalg.transpose(linalg.inverse(T))
    except linalg.SingularMatrixError:
        raise LieAlgebraError("basis change matrix is singular") from None
    n = L.dim
    table = [[linalg.matvec(Tinv_t, L.bracket(T[i], T[j])) for j in range(n)] for i in range(n)]
    return LieAlgebra(L.names, table, name or L.name)


def subalgebra_as_algebra(L: LieAlgebra, S: Subspace, names: Sequence[str] | None = None) -> LieAlgebra:
    """The subalgebra S as an algebra in its own (echelon) basis."""
    if not is_subalgebra(L, S):
        raise LieAlgebraError("subspace is not closed under the bracket")
    names = names or [f"s{i + 1}" for i in range(S.dim)]
    table = [[S.coordinates(L.bracket(a, b)) for b in S.basis] for a in S.basis]
    return LieAlgebra(names, table, f"{L.name}|sub")


def is_automorphism(L: LieAlgebra, sigma: Sequence[Sequence]) -> bool:
    """``sigma[i]`` is the image of basis vector i."""
    sigma = linalg.matrix(sigma)
    if linalg.det(sigma) == 0:
        return False
    st = linalg.transpose(sigma)
    for i, j in combinations(range(L.dim), 2):
        lhs = linalg.matvec(st, L.structure[i][j])
        if lhs != L.bracket(sigma[i], sigma[j]):
            return False
    return True


# -- gradings -----------------------------------------------------------------

@dataclass(frozen=True)
class Grading:
    """Each basis vector is homogeneous of degree ``degrees[i]`` in Z^rank."""

    rank: int
    degrees: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for d in self.degrees:
            if len(d) != self.rank:
                raise LieAlgebraError(f"degree {d} does not have rank {self.rank}")

    def support(self) -> set[tuple[int, ...]]:
        return set(self.degrees)

    def component(self, alpha: Sequence[int]) -> Subspace:
        alpha = tuple(alpha)
        n = len(self.degrees)
        return Subspace.span([linalg.unit_vec(n, i) for i, d in enumerate(self.degrees) if d == alpha], n)

    def sum_of(self, degrees: Iterable[Sequence[int]]) -> Subspace:
        wanted = {tuple(d) for d in degrees}
        n = len(self.degrees)
        return Subspace.span([linalg.unit_vec(n, i) for i, d in enumerate(self.degrees) if d in wanted], n)

    def check(self, L: LieAlgebra) -> Certificate:
        if len(self.degrees) != L.dim:
            return Certificate("grading", False, witnesses=["degree count does not match dimension"])
        for i in range(L.dim):
            for j in range(L.dim):
                target = tuple(a + b for a, b in zip(self.degrees[i], self.degrees[j]))
                for k, _ in L.bracket_basis(i, j):
                    if self.degrees[k] != target:
                        return Certificate("grading", False,
                                           witnesses=[f"[{L.names[i]},{L.names[j]}] leaves degree {target}"])
        return Certificate("grading", True, details={"rank": self.rank})


def positivity(alpha: Sequence[int]) -> str:
    """Sign of the last nonzero coordinate: 'positive', 'negative' or 'zero'."""
    for c in reversed(tuple(alpha)):
        if c > 0:
            return "positive"
        if c < 0:
            return "negative"
    return "zero"
