"""Decision procedures and isomorphism invariants for three-dimensional Lie
algebras over Q.

Everything here works from basis-free data: the derived algebra, the
center, and the action of a complement element on the derived algebra.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence, Union

from . import linalg
from .algebras import INFINITY
from .certificate import Certificate
from .lie import (
    Grading,
    LieAlgebra,
    LieAlgebraError,
    center,
    derived_subalgebra,
    generates,
    is_abelian_subspace,
)
from .linalg import Subspace

RClass = Union[Fraction, str]

U_EQUALS_ONE = "u_equals_one"


def _require3(L: LieAlgebra) -> None:
    if L.dim != 3:
        raise LieAlgebraError(f"{L.name} has dimension {L.dim}, not 3")


def rational_sqrt(q) -> Fraction | None:
    """The nonnegative rational square root of ``q`` when it exists."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _complement_element(L: LieAlgebra, S: Subspace) -> tuple[Fraction, ...]:
    for b in L.basis_vectors():
        if b not in S:
            return b
    raise LieAlgebraError("subspace is the whole algebra")


def derived_action(L: LieAlgebra) -> tuple[list[list[Fraction]], Subspace, tuple[Fraction, ...]]:
    """(N, L', z): N is ad z restricted to a two-dimensional derived algebra
    for a complement element z.  Shifting z by L' leaves N unchanged."""
    D = derived_subalgebra(L)
    if D.dim != 2:
        raise LieAlgebraError("the derived algebra is not two-dimensional")
    z = _complement_element(L, D)
    return L.restricted_matrix(lambda v: L.bracket(z, v), D), D, z


# -- Jacobson cases -------------------------------------------------------------

@dataclass(frozen=True)
class JacobsonCase:
    tag: str
    params: dict = field(default_factory=dict, compare=False)

    def __str__(self) -> str:
        return self.tag


def classify_jacobson(L: LieAlgebra) -> JacobsonCase:
    """Case tag from dim L', whether L' is central, and the action on L'."""
    _require3(L)
    D = derived_subalgebra(L)
    if D.dim == 0:
        return JacobsonCase("a")
    if D.dim == 1:
        if center(L).contains_subspace(D):
            return JacobsonCase("b")
        return JacobsonCase("c")
    if D.dim == 2:
        N, D, z = derived_action(L)
        # [b, z] = -N b; record the alpha..delta of the normal form
        alpha, gamma = -N[0][0], -N[0][1]
        beta, delta = -N[1][0], -N[1][1]
        return JacobsonCase("d", {
            "alpha": alpha, "beta": beta, "gamma": gamma, "delta": delta,
            "ad_matrix": N, "trace": linalg.trace(N), "det": linalg.det(N),
        })
    K = killing_form(L)
    return JacobsonCase("e", {"killing_det": linalg.det(K)})


def killing_form(L: LieAlgebra) -> list[list[Fraction]]:
    ads = [L.ad(b) for b in L.basis_vectors()]
    return [[linalg.trace(linalg.matmul(a, b)) for b in ads] for a in ads]


def _is_scalar(m: Sequence[Sequence]) -> bool:
    n = len(m)
    return all(m[i][j] == (m[0][0] if i == j else 0) for i in range(n) for j in range(n))


def is_isomorphic_to_g(L: LieAlgebra) -> bool:
    """L' two-dimensional and abelian with ad z acting on it as a nonzero scalar."""
    _require3(L)
    D = derived_subalgebra(L)
    if D.dim != 2 or not is_abelian_subspace(L, D):
        return False
    N, _, _ = derived_action(L)
    return _is_scalar(N) and N[0][0] != 0


def _case_d_witness(L: LieAlgebra) -> tuple[tuple, tuple] | None:
    """Follow the case split for two-dimensional L'; None means L is g."""
    D = derived_subalgebra(L)
    x, y = D.basis
    z = _complement_element(L, D)

    def coeffs(v):
        return D.coordinates(L.bracket(v, z))

    alpha, beta = coeffs(x)
    if alpha == 0:
        return x, linalg.add(y, z)
    z = linalg.scale(1 / alpha, z)
    _, beta = coeffs(x)
    gamma, delta = coeffs(y)
    if gamma != 0:
        return linalg.add(linalg.scale(-gamma, x), y), z
    if beta != 0:
        return linalg.sub(x, linalg.scale(beta / delta, y)), z
    if delta != 1:
        return linalg.add(x, y), z
    return None


def _search_generating_pair(L: LieAlgebra, seed: int = 0) -> tuple[tuple, tuple] | None:
    basis = L.basis_vectors()
    for u, v in itertools.combinations(basis, 2):
        if generates(L, [u, v]):
            return u, v
    rng = random.Random(seed)
    for _ in range(200):
        u = tuple(Fraction(rng.randint(-3, 3)) for _ in range(L.dim))
        v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(L.dim))
        if generates(L, [u, v]):
            return u, v
    return None


def has_pm_pair(L: LieAlgebra) -> tuple[bool, tuple[tuple, tuple] | None]:
    """Decide whether L has a plus-minus pair; a positive answer comes with
    generators (x, y) so that (Fx, Fy) is one."""
    case = classify_jacobson(L)
    if case.tag == "a":
        return False, None
    witness = None
    if case.tag == "b":
        for u, v in itertools.combinations(L.basis_vectors(), 2):
            if not linalg.is_zero(L.bracket(u, v)):
                witness = (u, v)
                break
    elif case.tag == "c":
        # [x, y] = x with z central
        x = derived_subalgebra(L).basis[0]
        zc = center(L).basis[0]
        for b in L.basis_vectors():
            mu = _ratio(L.bracket(b, x), x)
            if mu:
                y = linalg.scale(-1 / mu, b)
                witness = (linalg.add(x, zc), y)
                break
    elif case.tag == "d":
        if is_isomorphic_to_g(L):
            return False, None
        witness = _case_d_witness(L)
    if witness is None or not generates(L, witness):
        witness = _search_generating_pair(L)
    return witness is not None, witness


def _ratio(v: Sequence, w: Sequence) -> Fraction:
    """c with v = c w (w nonzero, v assumed proportional)."""
    for a, b in zip(v, w):
        if b:
            return Fraction(a) / b
    return Fraction(0)


# -- K(a, b) classes ------------------------------------------------------------

class GAlgebraFlag(ValueError):
    """Raised for u = 1: K(1, 1) is the algebra without a plus-minus pair."""

    flag = U_EQUALS_ONE


@dataclass(frozen=True)
class PFClass:
    """Either {0} or an unordered pair {u, 1/u} with u != 0, 1.

    The stored representative is the element with |u| >= 1, which is
    unique because |u| = 1 forces u = -1.
    """

    rep: Fraction

    @classmethod
    def of(cls, u) -> "PFClass":
        u = Fraction(u)
        if u == 1:
            raise GAlgebraFlag("u = 1 is not a class of the parametrization")
        if u == 0:
            return cls(Fraction(0))
        return cls(u if abs(u) >= 1 else 1 / u)

    @property
    def is_zero(self) -> bool:
        return self.rep == 0

    def members(self) -> frozenset[Fraction]:
        return frozenset({self.rep}) if self.rep in (0, -1) else frozenset({self.rep, 1 / self.rep})

    def __str__(self) -> str:
        if self.rep in (0, -1):
            return "{" + str(self.rep) + "}"
        return "{" + f"{self.rep}, {1 / self.rep}" + "}"


def k_invariant(a, b) -> PFClass:
    a, b = Fraction(a), Fraction(b)
    if a == 0 and b == 0:
        raise ValueError("K(0,0) is abelian and has no class")
    if a == 0 or b == 0:
        return PFClass(Fraction(0))
    return PFClass.of(a / b)


def pf_class_of(L: LieAlgebra) -> PFClass | None:
    """The K(a, b) class of L when L is isomorphic to some K(a, b) with a != b."""
    case = classify_jacobson(L)
    if case.tag == "c":
        return PFClass(Fraction(0))
    if case.tag != "d":
        return None
    N = case.params["ad_matrix"]
    if _is_scalar(N):
        return None
    tr, det = case.params["trace"], case.params["det"]
    root = rational_sqrt(tr * tr - 4 * det)
    if not root:
        return None
    lam1, lam2 = (tr + root) / 2, (tr - root) / 2
    return PFClass.of(lam1 / lam2)


# -- 2x2 similarity ---------------------------------------------------------------

def _charpoly2(m) -> tuple[Fraction, Fraction]:
    return linalg.trace(m), linalg.det(m)


def similar2(A, B) -> bool:
    """Similarity of 2x2 rational matrices: equal characteristic
    polynomials and both scalar or both non-scalar."""
    A, B = linalg.matrix(A), linalg.matrix(B)
    return _charpoly2(A) == _charpoly2(B) and _is_scalar(A) == _is_scalar(B)


def similar2_up_to_scalar(A, B) -> tuple[bool, Fraction | None]:
    """Is A similar to a B for some nonzero rational a?  Returns the a found."""
    A, B = linalg.matrix(A), linalg.matrix(B)
    trA, detA = _charpoly2(A)
    trB, detB = _charpoly2(B)
    if trB != 0:
        candidates = [trA / trB]
    elif trA != 0:
        candidates = []
    elif detB != 0:
        root = rational_sqrt(detA / detB)
        candidates = [root, -root] if root else []
    else:
        candidates = [Fraction(1)]
    for a in candidates:
        if a and similar2(A, linalg.mat_scale(a, B)):
            return True, a
    return False, None


# -- A(r) classes -------------------------------------------------------------------

def normalize_rclass(r) -> RClass:
    if isinstance(r, str):
        if r.strip().lower() in ("inf", "infinity", "oo", "∞"):
            return INFINITY
        return Fraction(r)
    return Fraction(r)


def format_rclass(r: RClass) -> str:
    return "∞" if r == INFINITY else str(r)


def a_isomorphic(r, s) -> bool:
    return normalize_rclass(r) == normalize_rclass(s)


def k_to_a(u) -> tuple[RClass, bool]:
    """The A(r) class that the K(u, 1) similarity argument assigns, and
    whether the underlying similarity actually fails (the anomaly flag)."""
    u = Fraction(u)
    if u == 0:
        raise ValueError("u = 0 belongs to the class {0}")
    N = [[-u, 0], [0, -1]]
    if u == -1:
        ok, _ = similar2_up_to_scalar(N, linalg.matrix([[0, 1], [1, 0]]))
        return INFINITY, not ok
    r = -u / (u + 1) ** 2
    ok, _ = similar2_up_to_scalar(N, linalg.matrix([[0, r], [1, 1]]))
    return r, not ok


@dataclass(frozen=True)
class RegularClass:
    kind: str  # SL2 | HEISENBERG | A | NOT_CERTIFIED
    r: RClass | None = None
    reason: str = field(default="", compare=False)
    witness: Any = field(default=None, compare=False)

    def __str__(self) -> str:
        if self.kind == "A":
            return f"A({format_rclass(self.r)})"
        return self.kind


def sl2_triple(L: LieAlgebra, bound: int = 3) -> tuple[tuple, tuple, tuple] | None:
    """(e, h, f) with [e,f]=h, [h,e]=2e, [h,f]=-2f, found from an element
    whose ad has rational nonzero eigenvalues, if one has small coordinates."""
    _require3(L)
    K = killing_form(L)
    for coords in itertools.product(range(-bound, bound + 1), repeat=3):
        h = linalg.vec(coords)
        if linalg.is_zero(h):
            continue
        kh = sum(h[i] * K[i][j] * h[j] for i in range(3) for j in range(3))
        lam = rational_sqrt(kh / 2)
        if not lam:
            continue
        h2 = linalg.scale(2 / lam, h)
        ad = L.ad(h2)
        e = _eigenvector(ad, Fraction(2))
        f = _eigenvector(ad, Fraction(-2))
        if e is None or f is None:
            continue
        ef = L.bracket(e, f)
        c = _ratio(ef, h2)
        if not c or linalg.scale(c, h2) != ef:
            continue
        f = linalg.scale(1 / c, f)
        return e, h2, f
    return None


def _eigenvector(m, lam: Fraction) -> tuple | None:
    n = len(m)
    shifted = linalg.mat_sub(m, linalg.mat_scale(lam, linalg.identity(n)))
    ns = linalg.nullspace(shifted, n)
    return ns[0] if ns else None


def regular_class(L: LieAlgebra) -> RegularClass:
    """Which of sl2, the Heisenberg algebra and A(r) L is, when that can be
    witnessed over Q."""
    _require3(L)
    D = derived_subalgebra(L)
    if D.dim == 3:
        triple = sl2_triple(L)
        if triple is not None:
            return RegularClass("SL2", witness=triple)
        return RegularClass("NOT_CERTIFIED", reason="no rational sl2-triple found",
                            witness=classify_jacobson(L).params)
    if D.dim == 1:
        if center(L).contains_subspace(D):
            return RegularClass("HEISENBERG")
        # every such algebra is isomorphic to A(0)
        return RegularClass("A", Fraction(0))
    if D.dim == 0:
        return RegularClass("NOT_CERTIFIED", reason="abelian")
    N, _, _ = derived_action(L)
    if _is_scalar(N):
        return RegularClass("NOT_CERTIFIED", reason="ad z acts on L' as a scalar (no plus-minus pair)")
    tr, det = _charpoly2(N)
    if tr != 0:
        return RegularClass("A", -det / (tr * tr))
    if rational_sqrt(-det):
        return RegularClass("A", INFINITY)
    return RegularClass("NOT_CERTIFIED", reason=f"trace zero with -det = {-det} not a rational square")


# -- three-graded algebras ----------------------------------------------------------

@dataclass
class ThreeGraded:
    kind: str  # SL2 | HEISENBERG | K | NO_PAIR
    params: dict = field(default_factory=dict)
    reason: str = ""
    graded_pair: Certificate | None = None

    def __str__(self) -> str:
        if self.kind == "K":
            return f"K({self.params['a']},{self.params['b']})"
        if self.kind == "NO_PAIR":
            return f"NO_PAIR({self.reason})"
        return self.kind


def three_graded_classify(L: LieAlgebra, grading: Grading, d: int = 4) -> ThreeGraded:
    """Classify L = L_1 + L_0 + L_-1 with one-dimensional pieces and check
    whether (L_1, L_-1) is a plus-minus pair."""
    from .pmfactor import verify_pm_pair

    _require3(L)
    if grading.rank != 1:
        raise ValueError("the grading must be by Z")
    gcert = grading.check(L)
    if not gcert.verdict:
        raise ValueError("invalid grading: " + "; ".join(gcert.witnesses))
    parts = {k: grading.component((k,)) for k in (1, 0, -1)}
    if any(parts[k].dim != 1 for k in parts) or grading.support() != {(1,), (0,), (-1,)}:
        raise ValueError("the grading must have one-dimensional pieces in degrees -1, 0, 1")
    x, y, z = parts[1].basis[0], parts[-1].basis[0], parts[0].basis[0]
    xy = L.bracket(x, y)
    if not linalg.is_zero(xy):
        z = xy
    a = -_ratio(L.bracket(z, x), x)  # [x, z] = a x
    b = -_ratio(L.bracket(z, y), y)  # [y, z] = b y
    graded_pair = verify_pm_pair(L, parts[1], parts[-1], d)
    if linalg.is_zero(xy):
        if a == 0 and b == 0:
            return ThreeGraded("NO_PAIR", reason="abelian", graded_pair=graded_pair)
        if a == b:
            return ThreeGraded("NO_PAIR", {"a": a, "b": b}, reason="isomorphic to g", graded_pair=graded_pair)
        return ThreeGraded("K", {"a": a, "b": b, "pf_class": str(k_invariant(a, b))}, graded_pair=graded_pair)
    if a == 0 and b == 0:
        return ThreeGraded("HEISENBERG", graded_pair=graded_pair)
    return ThreeGraded("SL2", {"a": a, "b": b}, graded_pair=graded_pair)


# -- report ---------------------------------------------------------------------------

def classify(L: LieAlgebra) -> dict[str, Any]:
    """The classification report as plain JSON-ready data."""
    case = classify_jacobson(L)
    has_pair, witness = has_pm_pair(L)
    pf = pf_class_of(L)
    reg = regular_class(L)
    flags = []
    if is_isomorphic_to_g(L):
        flags.append(U_EQUALS_ONE)
    return {
        "jacobson_case": case.tag,
        "has_pair": has_pair,
        "witness": [L.format(w) for w in witness] if witness else None,
        "pf_class": str(pf) if pf is not None else None,
        "r_class": format_rclass(reg.r) if reg.kind == "A" else None,
        "regular_class": str(reg),
        "anomaly_flags": flags,
    }
