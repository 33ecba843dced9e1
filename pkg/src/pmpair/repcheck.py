"""Finite-dimensional representations: bracket compatibility, nilpotence,
submodules generated through x^i y^j x^k words, and semisimplicity."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

import sympy

from . import linalg
from .algebras import sl2
from .certificate import Certificate
from .lie import LieAlgebra
from .linalg import Subspace


class NotInvariant(AssertionError):
    """A stabilized span failed to be a submodule."""


@dataclass
class Representation:
    """``matrices[i]`` is the action of the i-th basis element (column convention)."""

    algebra: LieAlgebra
    matrices: list[list[list[Fraction]]]

    def __post_init__(self):
        if len(self.matrices) != self.algebra.dim:
            raise ValueError(f"{len(self.matrices)} matrices for a {self.algebra.dim}-dimensional algebra")
        self.matrices = [linalg.matrix(m) for m in self.matrices]
        sizes = {len(m) for m in self.matrices} | {len(r) for m in self.matrices for r in m}
        if len(sizes) > 1:
            raise ValueError("representation matrices must be square of a common size")

    @property
    def size(self) -> int:
        return len(self.matrices[0]) if self.matrices else 0

    def act(self, v) -> list[list[Fraction]]:
        """Matrix of an arbitrary element (coordinates, symbol or mapping)."""
        v = self.algebra.vector(v)
        out = linalg.zeros(self.size, self.size)
        for c, m in zip(v, self.matrices):
            if c:
                out = linalg.mat_add(out, linalg.mat_scale(c, m))
        return out

    def __getitem__(self, sym) -> list[list[Fraction]]:
        return self.act(sym)

    def direct_sum(self, other: "Representation") -> "Representation":
        if other.algebra != self.algebra:
            raise ValueError("representations of different algebras")
        n, m = self.size, other.size
        mats = []
        for a, b in zip(self.matrices, other.matrices):
            block = linalg.zeros(n + m, n + m)
            for i in range(n):
                block[i][:n] = a[i]
            for i in range(m):
                block[n + i][n:] = b[i]
            mats.append(block)
        return Representation(self.algebra, mats)


def verify_rep(R: Representation) -> Certificate:
    """rho([b_i, b_j]) = [rho(b_i), rho(b_j)] on all basis pairs."""
    t0 = time.perf_counter()
    L = R.algebra
    witnesses = []
    for i, j in combinations(range(L.dim), 2):
        lhs = R.act(L.structure[i][j])
        rhs = linalg.commutator(R.matrices[i], R.matrices[j])
        if lhs != rhs:
            witnesses.append(f"[{L.names[i]},{L.names[j]}]")
    return Certificate("rep", not witnesses, witnesses=witnesses,
                       elapsed_ms=(time.perf_counter() - t0) * 1e3,
                       details={"algebra": L.name, "size": R.size})


def sl2_irrep(n: int) -> Representation:
    """The (n+1)-dimensional irreducible module with basis v_0..v_n:
    h v_i = (n-2i) v_i, e v_i = (n-i+1) v_{i-1}, f v_i = (i+1) v_{i+1}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    size = n + 1
    e, h, f = (linalg.zeros(size, size) for _ in range(3))
    for i in range(size):
        h[i][i] = Fraction(n - 2 * i)
        if i > 0:
            e[i - 1][i] = Fraction(n - i + 1)
        if i < n:
            f[i + 1][i] = Fraction(i + 1)
    return Representation(sl2(), [e, h, f])


def is_nilpotent(A) -> bool:
    A = linalg.matrix(A)
    return linalg.is_zero_matrix(linalg.mat_pow(A, len(A))) if A else True


def _invariant(R: Representation, S: Subspace) -> bool:
    return all(linalg.matvec(m, b) in S for m in R.matrices for b in S.basis)


def generated_submodule(R: Representation, v, x, y, d: int) -> Subspace:
    """span{ rho(x)^i rho(y)^j rho(x)^k v : i + j + k <= d }.

    Once two consecutive degree bounds give the same dimension the span is
    checked to be invariant under every rho(b_i); NotInvariant otherwise.
    """
    v = linalg.vec(v)
    X, Y = R.act(x), R.act(y)
    n = R.size
    words: dict[tuple[int, int, int], tuple] = {(0, 0, 0): v}

    def word(i: int, j: int, k: int) -> tuple:
        # built from the right: x^k v, then y^j, then x^i
        key = (i, j, k)
        if key not in words:
            if i:
                words[key] = linalg.matvec(X, word(i - 1, j, k))
            elif j:
                words[key] = linalg.matvec(Y, word(0, j - 1, k))
            else:
                words[key] = linalg.matvec(X, word(0, 0, k - 1))
        return words[key]

    vectors: list = []
    previous = None
    S = Subspace.zero(n)
    for t in range(d + 1):
        vectors.extend(word(i, j, t - i - j) for i in range(t + 1) for j in range(t - i + 1))
        S = Subspace.span(vectors, n)
        if previous is not None and S.dim == previous:
            if not _invariant(R, S):
                raise NotInvariant(f"span of dimension {S.dim} is not a submodule")
            return S
        previous = S.dim
    return S


class Semisimplicity(NamedTuple):
    semisimple: bool
    spectrum: dict[Fraction, int]
    reason: str


def semisimple_on(h, S: Subspace | None = None) -> Semisimplicity:
    """Diagonalizability over Q of h restricted to the invariant subspace S.

    Fails with reason "repeated factor" when the minimal polynomial is not
    squarefree, and "irrational spectrum" when it is squarefree but has an
    irreducible factor of degree >= 2.  ``spectrum`` lists the rational
    eigenvalues with algebraic multiplicity.
    """
    h = linalg.matrix(h)
    n = len(h)
    if S is None:
        S = Subspace.full(n)
    cols = []
    for b in S.basis:
        c = S.coordinates(linalg.matvec(h, b))
        if c is None:
            raise ValueError("subspace is not invariant")
        cols.append(c)
    if not cols:
        return Semisimplicity(True, {}, "")
    restricted = sympy.Matrix(linalg.transpose(cols))
    t = sympy.Symbol("t")
    spectrum = {Fraction(int(sympy.fraction(ev)[0]), int(sympy.fraction(ev)[1])): int(mult)
                for ev, mult in sympy.roots(restricted.charpoly(t).as_expr(), t, filter="Q").items()}
    minimal = _minimal_polynomial(restricted, t)
    _, factors = sympy.factor_list(minimal, t, domain="QQ")
    if any(mult > 1 for _, mult in factors):
        return Semisimplicity(False, spectrum, "repeated factor in the minimal polynomial")
    if any(sympy.degree(f, t) > 1 for f, _ in factors):
        return Semisimplicity(False, spectrum, "irrational spectrum")
    return Semisimplicity(True, spectrum, "")


def _minimal_polynomial(A: sympy.Matrix, t: sympy.Symbol) -> sympy.Expr:
    """First linear dependency among I, A, A^2, ... ."""
    n = A.shape[0]
    powers = [sympy.eye(n)]
    while True:
        P = powers[-1] * A
        powers.append(P)
        M = sympy.Matrix.hstack(*[p.reshape(n * n, 1) for p in powers])
        null = M.nullspace()
        if null:
            coeffs = null[0] / null[0][-1]
            return sum(coeffs[k] * t ** k for k in range(len(powers)))


def check_weight_identity(n: int) -> bool:
    """In sl2_irrep(n) take v with f v = 0; then e^n v != 0, e^(n+1) v = 0
    and h(e^n v) = n (e^n v)."""
    R = sl2_irrep(n)
    E, H, F = R["e"], R["h"], R["f"]
    v = linalg.unit_vec(n + 1, n)
    if not linalg.is_zero(linalg.matvec(F, v)):
        return False
    w = v
    for _ in range(n):
        w = linalg.matvec(E, w)
    if linalg.is_zero(w) or not linalg.is_zero(linalg.matvec(E, w)):
        return False
    return linalg.matvec(H, w) == linalg.scale(n, w)


def commutation_identity_holds(n: int) -> bool:
    """f e^n = e^n f - n e^(n-1) (h + n - 1) as matrices in sl2_irrep(n)."""
    R = sl2_irrep(n)
    E, H, F = R["e"], R["h"], R["f"]
    size = n + 1
    I = linalg.identity(size)
    En = linalg.mat_pow(E, n)
    En1 = linalg.mat_pow(E, n - 1) if n >= 1 else I
    lhs = linalg.matmul(F, En)
    shift = linalg.mat_add(H, linalg.mat_scale(n - 1, I))
    rhs = linalg.mat_sub(linalg.matmul(En, F), linalg.mat_scale(n, linalg.matmul(En1, shift)))
    return lhs == rhs


def rep_suite(R: Representation, x, y, d: int, vectors: Sequence[Sequence], h=None) -> Certificate:
    """verify_rep, nilpotence of x and y, submodule generation from each vector
    and semisimplicity of h on the module."""
    t0 = time.perf_counter()
    witnesses = []
    rep = verify_rep(R)
    if not rep.verdict:
        witnesses.extend("bracket " + w for w in rep.witnesses)
    nil = {R.algebra.format(R.algebra.vector(s)): is_nilpotent(R.act(s)) for s in (x, y)}
    sizes = []
    for v in vectors:
        try:
            sizes.append(generated_submodule(R, v, x, y, d).dim)
        except NotInvariant as exc:
            witnesses.append(str(exc))
    details = {"size": R.size, "nilpotent": nil, "submodule_dims": sizes}
    if h is not None:
        ss = semisimple_on(R.act(h))
        details["h_semisimple"] = ss.semisimple
        details["h_spectrum"] = {str(k): v for k, v in sorted(ss.spectrum.items(), reverse=True)}
        if ss.reason:
            details["h_reason"] = ss.reason
    return Certificate("rep_suite", not witnesses, degree=d, witnesses=witnesses,
                       elapsed_ms=(time.perf_counter() - t0) * 1e3, details=details)
