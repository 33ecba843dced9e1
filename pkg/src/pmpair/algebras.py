"""Constructors for the named algebras, gradings and random test algebras."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .lie import Grading, LieAlgebra, LieAlgebraError, Subspace, change_basis

INFINITY = "inf"


def _e(n: int, i: int, j: int) -> list[list[Fraction]]:
    m = linalg.zeros(n, n)
    m[i][j] = Fraction(1)
    return m


def from_matrices(names: Sequence[str], mats: Sequence, name: str | None = None) -> LieAlgebra:
    """Matrix Lie algebra spanned by linearly independent ``mats`` (must be
    closed under commutators)."""
    flat = [[x for row in m for x in row] for m in mats]
    if linalg.rank(flat) != len(mats):
        raise LieAlgebraError("matrices are linearly dependent")
    cols = linalg.transpose(flat)
    n = len(mats)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = linalg.commutator(mats[i], mats[j])
            coords = linalg.solve(cols, [x for row in c for x in row])
            if coords is None:
                raise LieAlgebraError("matrix span is not closed under commutators")
            table[i][j] = coords
    return LieAlgebra(names, table, name)


def sl2() -> LieAlgebra:
    """Basis order e, h, f with [e,f]=h, [h,e]=2e, [h,f]=-2f."""
    return LieAlgebra.from_brackets(
        ("e", "h", "f"),
        {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}},
        name="sl2",
    )


def sl2_grading() -> Grading:
    return Grading(1, ((1,), (0,), (-1,)))


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_brackets(("x", "y", "z"), {("x", "y"): {"z": 1}}, name="heisenberg")


def heisenberg_grading() -> Grading:
    return Grading(1, ((1,), (-1,), (0,)))


def abelian(n: int = 3) -> LieAlgebra:
    names = ("x", "y", "z") if n == 3 else tuple(f"b{i + 1}" for i in range(n))
    return LieAlgebra.from_brackets(names, {}, name=f"abelian{n}")


def k_family(a, b) -> LieAlgebra:
    """K(a,b): [x,y]=0, [x,z]=a x, [y,z]=b y."""
    a, b = Fraction(a), Fraction(b)
    return LieAlgebra.from_brackets(
        ("x", "y", "z"), {("x", "z"): {"x": a}, ("y", "z"): {"y": b}}, name=f"K({a},{b})"
    )


def k_grading() -> Grading:
    return Grading(1, ((1,), (-1,), (0,)))


def g_special() -> LieAlgebra:
    """[x,y]=0, [x,z]=x, [y,z]=y: the three-dimensional algebra without a pair."""
    L = k_family(1, 1)
    L.name = "g_special"
    return L


def a_matrix(r) -> list[list[Fraction]]:
    if r == INFINITY:
        return linalg.matrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    r = Fraction(r)
    return linalg.matrix([[0, r, 0], [1, 1, 0], [0, 0, 0]])


def a_family(r) -> LieAlgebra:
    """The matrix algebra spanned by A(r), X = E13, Y = E23; ``r`` may be INFINITY."""
    label = "inf" if r == INFINITY else str(Fraction(r))
    return from_matrices(("A", "X", "Y"), [a_matrix(r), _e(3, 0, 2), _e(3, 1, 2)], name=f"A({label})")


def a_family_sigma() -> list[list[Fraction]]:
    """Involution fixing A and negating X, Y (rows are images of A, X, Y)."""
    return linalg.matrix([[1, 0, 0], [0, -1, 0], [0, 0, -1]])


def jacobson_case(tag: str, params: Sequence = ()) -> LieAlgebra:
    """Representatives of the five cases of the three-dimensional classification.

    (a) abelian; (b) [x,y]=z central; (c) [x,y]=x; (d) params (alpha, beta,
    gamma, delta) with [x,z]=alpha x+beta y, [y,z]=gamma x+delta y and
    alpha*delta - beta*gamma != 0; (e) params (alpha, beta) with [x,y]=z,
    [x,z]=alpha y, [y,z]=beta x and alpha*beta != 0.
    """
    p = [Fraction(x) for x in params]
    if tag == "a":
        return abelian(3)
    if tag == "b":
        L = heisenberg()
        L.name = "jacobson(b)"
        return L
    if tag == "c":
        return LieAlgebra.from_brackets(("x", "y", "z"), {("x", "y"): {"x": 1}}, name="jacobson(c)")
    if tag == "d":
        if len(p) != 4:
            raise LieAlgebraError("case (d) takes four parameters")
        al, be, ga, de = p
        if al * de - be * ga == 0:
            raise LieAlgebraError("case (d) needs alpha*delta - beta*gamma != 0")
        return LieAlgebra.from_brackets(
            ("x", "y", "z"),
            {("x", "z"): {"x": al, "y": be}, ("y", "z"): {"x": ga, "y": de}},
            name=f"jacobson(d;{al},{be},{ga},{de})",
        )
    if tag == "e":
        if len(p) != 2:
            raise LieAlgebraError("case (e) takes two parameters")
        al, be = p
        if al * be == 0:
            raise LieAlgebraError("case (e) needs alpha*beta != 0")
        return LieAlgebra.from_brackets(
            ("x", "y", "z"),
            {("x", "y"): {"z": 1}, ("x", "z"): {"y": al}, ("y", "z"): {"x": be}},
            name=f"jacobson(e;{al},{be})",
        )
    raise LieAlgebraError(f"unknown case tag {tag!r}")


SL3_NAMES = ("e1", "e2", "e3", "h1", "h2", "f1", "f2", "f3")


def sl3_chevalley() -> LieAlgebra:
    """sl3 with e3 = E13, f3 = E31 alongside the simple root vectors."""
    mats = [
        _e(3, 0, 1), _e(3, 1, 2), _e(3, 0, 2),
        linalg.mat_sub(_e(3, 0, 0), _e(3, 1, 1)), linalg.mat_sub(_e(3, 1, 1), _e(3, 2, 2)),
        _e(3, 1, 0), _e(3, 2, 1), _e(3, 2, 0),
    ]
    return from_matrices(SL3_NAMES, mats, name="sl3")


def sl3_grading() -> Grading:
    return Grading(2, ((1, 0), (0, 1), (1, 1), (0, 0), (0, 0), (-1, 0), (0, -1), (-1, -1)))


def borcherds_rank1_zero() -> LieAlgebra:
    """Rank one with zero Cartan entry: [e,f]=h and h central."""
    return LieAlgebra.from_brackets(("e", "h", "f"), {("e", "f"): {"h": 1}}, name="borcherds_rank1_zero")


@dataclass(frozen=True)
class Triangular:
    """Chevalley data: g_+, g_-, Cartan h, and generators e_i, f_i."""

    gplus: Subspace
    gminus: Subspace
    h: Subspace
    e: tuple[tuple[Fraction, ...], ...]
    f: tuple[tuple[Fraction, ...], ...]


def triangular_data(L: LieAlgebra) -> Triangular:
    """Chevalley data for the bundled algebras (sl2, sl3, borcherds_rank1_zero)."""
    if L.names == ("e", "h", "f"):
        v = L.basis_vector
        return Triangular(Subspace.span([v("e")], 3), Subspace.span([v("f")], 3),
                          Subspace.span([v("h")], 3), (v("e"),), (v("f"),))
    if L.names == SL3_NAMES:
        v = L.basis_vector
        return Triangular(
            Subspace.span([v("e1"), v("e2"), v("e3")], 8),
            Subspace.span([v("f1"), v("f2"), v("f3")], 8),
            Subspace.span([v("h1"), v("h2")], 8),
            (v("e1"), v("e2")),
            (v("f1"), v("f2")),
        )
    raise LieAlgebraError(f"no bundled Chevalley data for {L.name}")


GRADINGS = {
    "sl2": sl2_grading,
    "heisenberg": heisenberg_grading,
    "sl3": sl3_grading,
    "borcherds_rank1_zero": sl2_grading,
}


# -- random algebras ----------------------------------------------------------

def random_matrix(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> list[list[Fraction]]:
    return [[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)]


def random_invertible(rng: random.Random, n: int) -> list[list[Fraction]]:
    while True:
        T = random_matrix(rng, n)
        if linalg.det(T) != 0:
            return T


def random_vector(rng: random.Random, n: int, nonzero: bool = True) -> tuple[Fraction, ...]:
    while True:
        v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
        if not nonzero or not linalg.is_zero(v):
            return v


def semidirect(D: Sequence[Sequence], name: str = "semidirect") -> LieAlgebra:
    """F t acting on the abelian ideal F^m by the derivation D: [t, v_j] = D v_j."""
    m = len(D)
    names = tuple(f"v{i + 1}" for i in range(m)) + ("t",)
    br = {}
    for j in range(m):
        col = {f"v{i + 1}": D[i][j] for i in range(m) if D[i][j]}
        if col:
            br[("t", f"v{j + 1}")] = col
    return LieAlgebra.from_brackets(names, br, name=name)


def random_lie_algebra(rng: random.Random, dim: int) -> LieAlgebra:
    """A Jacobi-valid algebra of dimension 3 or 4 in a random basis."""
    if dim not in (3, 4):
        raise LieAlgebraError("random algebras are available in dimensions 3 and 4")
    kind = rng.choice(["semidirect", "semidirect", "sl2", "heisenberg", "jacobson"])
    if kind == "semidirect":
        base = semidirect(random_matrix(rng, dim - 1))
    elif dim == 3 and kind == "sl2":
        base = sl2()
    elif dim == 3 and kind == "heisenberg":
        base = heisenberg()
    elif dim == 3:
        tag = rng.choice("abcde")
        if tag == "d":
            while True:
                p = [rng.randint(-3, 3) for _ in range(4)]
                if p[0] * p[3] - p[1] * p[2]:
                    break
            base = jacobson_case("d", p)
        elif tag == "e":
            base = jacobson_case("e", [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(2)])
        else:
            base = jacobson_case(tag)
    else:
        inner = {"sl2": sl2, "heisenberg": heisenberg}.get(kind, lambda: jacobson_case("c"))()
        base = direct_sum(inner, abelian(1))
    T = random_invertible(rng, dim)
    return change_basis(base, T, name=f"random{dim}({base.name})")


def direct_sum(A: LieAlgebra, B: LieAlgebra) -> LieAlgebra:
    n, m = A.dim, B.dim
    names = tuple(A.names) + tuple(f"{s}_" if s in A.names else s for s in B.names)
    table = [[linalg.zero_vec(n + m) for _ in range(n + m)] for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            table[i][j] = tuple(A.structure[i][j]) + linalg.zero_vec(m)
    for i in range(m):
        for j in range(m):
            table[n + i][n + j] = linalg.zero_vec(n) + tuple(B.structure[i][j])
    return LieAlgebra(names, table, f"{A.name}+{B.name}")


BUILTINS = {
    "sl2": sl2,
    "heisenberg": heisenberg,
    "g_special": g_special,
    "abelian": abelian,
    "sl3": sl3_chevalley,
    "borcherds_rank1_zero": borcherds_rank1_zero,
}
