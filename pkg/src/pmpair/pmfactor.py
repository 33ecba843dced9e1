"""Plus-minus pairs: the U_k ladder, the A_k/B_k congruences, rewriting into
``sum c x^i y^j x^k`` form, and spanning certificates for ordered
factorizations ``U(L) = U(B_1) ... U(B_s)`` up to a filtration degree.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .certificate import Certificate
from .lie import (
    Grading,
    LieAlgebra,
    bracket_space,
    derived_subalgebra,
    generates,
    is_automorphism,
    is_subalgebra,
    positivity,
    subalgebra_as_algebra,
)
from .linalg import SparseSpan, Subspace
from .uea import (
    Mono,
    NCPoly,
    PBWPoly,
    count_monomials,
    embed,
    monomials_up_to,
    pbw_normal_form,
    pbw_times_vector,
    straightener,
    vector_times_pbw,
)


class NotGenerating(ValueError):
    """The designated pair does not generate the algebra."""


class NoSolution(ArithmeticError):
    """A degree-filtered linear solve had no solution; this is a counterexample
    to spanning at that degree and must be reported."""

    def __init__(self, degree: int, residue: str):
        super().__init__(f"no x^i y^j x^k combination reaches the element at degree {degree}: residue {residue}")
        self.degree = degree
        self.residue = residue


class DegenerateBasis(ValueError):
    """x, y, [x, y] are linearly dependent."""


class HypothesisFailed(ValueError):
    def __init__(self, hypothesis: str, detail: str = ""):
        super().__init__(f"hypothesis failed: {hypothesis}" + (f" ({detail})" if detail else ""))
        self.hypothesis = hypothesis
        self.detail = detail


def _pbw_order(m: Mono):
    return (sum(m), m)


class PBWSpan:
    """Span of elements of U(L) in PBW coordinates."""

    def __init__(self, L: LieAlgebra, elements: Iterable[PBWPoly] = ()):
        self.L = L
        self._span = SparseSpan(order=_pbw_order)
        for p in elements:
            self.add(p)

    def add(self, p: PBWPoly | Mapping) -> bool:
        terms = p.terms if isinstance(p, PBWPoly) else p
        return self._span.add(terms)

    @property
    def dim(self) -> int:
        return self._span.rank

    def __contains__(self, p: PBWPoly) -> bool:
        return p.terms in self._span

    def residue(self, p: PBWPoly) -> PBWPoly:
        return PBWPoly(self.L, self._span.residue(p.terms))

    def pivots(self) -> set:
        return self._span.pivots


# -- U_k ladder and A_k / B_k ----------------------------------------------------

class _Ladder:
    """nf of y^m, x y^m and y^m x, extended on demand by one multiplication."""

    def __init__(self, L: LieAlgebra, x, y):
        self.L = L
        self.x, self.y = L.vector(x), L.vector(y)
        self.ym = [PBWPoly.unit(L)]
        self.xym: list[PBWPoly] = []
        self.ymx: list[PBWPoly] = []

    def extend(self, m: int) -> None:
        while len(self.xym) <= m:
            k = len(self.xym)
            while len(self.ym) <= k:
                self.ym.append(pbw_times_vector(self.ym[-1], self.y))
            self.xym.append(vector_times_pbw(self.x, self.ym[k]))
            self.ymx.append(pbw_times_vector(self.ym[k], self.x))

    def xy(self, m: int) -> PBWPoly:
        self.extend(m)
        return self.xym[m]

    def yx(self, m: int) -> PBWPoly:
        self.extend(m)
        return self.ymx[m]


_LADDERS: dict[tuple, _Ladder] = {}


def _ladder(L: LieAlgebra, x, y) -> _Ladder:
    key = (L, L.vector(x), L.vector(y))
    lad = _LADDERS.get(key)
    if lad is None:
        lad = _LADDERS.setdefault(key, _Ladder(L, x, y))
    return lad


def uk_subspace(L: LieAlgebra, x, y, k: int) -> PBWSpan:
    """span{ x y^m, y^m x : 0 <= m <= k } inside U(L)."""
    lad = _ladder(L, x, y)
    S = PBWSpan(L)
    for m in range(k + 1):
        S.add(lad.xy(m))
        S.add(lad.yx(m))
    return S


def ak_correction(L: LieAlgebra, x, y, k: int) -> PBWPoly:
    """yxy^k - (k/(k+1)) x y^(k+1) - (1/(k+1)) y^(k+1) x, exactly."""
    lad = _ladder(L, x, y)
    head = vector_times_pbw(L.vector(y), lad.xy(k))
    return head - Fraction(k, k + 1) * lad.xy(k + 1) - Fraction(1, k + 1) * lad.yx(k + 1)


def bk_correction(L: LieAlgebra, x, y, k: int) -> PBWPoly:
    """y^k x y - (1/(k+1)) x y^(k+1) - (k/(k+1)) y^(k+1) x, exactly."""
    lad = _ladder(L, x, y)
    head = pbw_times_vector(lad.yx(k), L.vector(y))
    return head - Fraction(1, k + 1) * lad.xy(k + 1) - Fraction(k, k + 1) * lad.yx(k + 1)


def check_AkBk(L: LieAlgebra, x, y, k_max: int) -> Certificate:
    """Check the A_k, B_k congruences modulo U_k and y U_k, U_k y inside
    U_{k+1}, for every k <= k_max, by exact membership."""
    t0 = time.perf_counter()
    x, y = L.vector(x), L.vector(y)
    lad = _ladder(L, x, y)
    ladder = [uk_subspace(L, x, y, k) for k in range(k_max + 2)]
    witnesses: list[str] = []
    corrections = {}
    for k in range(k_max + 1):
        Uk, Uk1 = ladder[k], ladder[k + 1]
        a = ak_correction(L, x, y, k)
        b = bk_correction(L, x, y, k)
        corrections[str(k)] = {"A": str(a), "B": str(b)}
        if a not in Uk:
            witnesses.append(f"A_{k}: correction {a} is not in U_{k}")
        if b not in Uk:
            witnesses.append(f"B_{k}: correction {b} is not in U_{k}")
        for m in range(k + 1):
            for label, g in ((f"x y^{m}", lad.xy(m)), (f"y^{m} x", lad.yx(m))):
                if vector_times_pbw(y, g) not in Uk1:
                    witnesses.append(f"C_{k}: y*({label}) is not in U_{k + 1}")
                if pbw_times_vector(g, y) not in Uk1:
                    witnesses.append(f"C_{k}: ({label})*y is not in U_{k + 1}")
    return Certificate(
        "AkBk",
        not witnesses,
        degree=k_max,
        rank=ladder[k_max].dim,
        witnesses=witnesses,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        details={"x": L.format(x), "y": L.format(y), "corrections": corrections,
                 "first_failure": witnesses[0] if witnesses else None},
    )


# -- x^i y^j x^k form ----------------------------------------------------------------

XYXMono = tuple[int, int, int]


def _acc(target: dict, key, c) -> None:
    v = target.get(key, 0) + c
    if v:
        target[key] = v
    else:
        target.pop(key, None)


@dataclass
class XYXPoly:
    L: LieAlgebra
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    terms: dict[XYXMono, Fraction] = field(default_factory=dict)

    def to_ncpoly(self) -> NCPoly:
        X, Y = embed(self.L, self.x), embed(self.L, self.y)
        out = NCPoly(self.L)
        for (i, j, k), c in self.terms.items():
            out = out + c * (X ** i * Y ** j * X ** k)
        return out

    def to_pbw(self) -> PBWPoly:
        return pbw_normal_form(self.to_ncpoly())

    def __eq__(self, other) -> bool:
        return (isinstance(other, XYXPoly) and self.L == other.L and self.x == other.x
                and self.y == other.y and self.terms == other.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for n, ((i, j, k), c) in enumerate(sorted(self.terms.items(), key=lambda t: (-sum(t[0]), t[0]))):
            body = " ".join(s for s in (
                ("x" if i == 1 else f"x^{i}") if i else "",
                ("y" if j == 1 else f"y^{j}") if j else "",
                ("x" if k == 1 else f"x^{k}") if k else "",
            ) if s)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            text = str(a) if not body else (body if a == 1 else f"{a} {body}")
            parts.append((text if c > 0 else f"-{text}") if n == 0 else f" {sign} {text}")
        return "".join(parts)


def _require_pair(L: LieAlgebra, x, y) -> tuple[tuple, tuple]:
    if L.dim != 3:
        raise ValueError("the x^i y^j x^k rewriters need a three-dimensional algebra")
    x, y = L.vector(x), L.vector(y)
    if not generates(L, [x, y]):
        raise NotGenerating(f"{L.format(x)} and {L.format(y)} do not generate {L.name}")
    return x, y


class XYXSolver:
    """Linear system whose columns are nf(x^i y^j x^k).

    Columns are inserted lowest degree first and lexicographically in
    (i, j, k) within a degree.  Columns that are combinations of earlier
    ones are recorded in ``dependent`` and never used, so every solution
    is the unique one supported on the independent columns.
    """

    def __init__(self, L: LieAlgebra, x, y):
        self.L = L
        self.x, self.y = L.vector(x), L.vector(y)
        self.degree = -1
        self.columns: list[XYXMono] = []
        self.dependent: list[XYXMono] = []
        self._span = SparseSpan(order=_pbw_order, track=True)
        self._cache: dict[tuple[int, int], dict] = {}

    def _xy(self, i: int, j: int) -> dict:
        """nf(x^i y^j) with prefix reuse."""
        key = (i, j)
        hit = self._cache.get(key)
        if hit is None:
            s = straightener(self.L)
            if j:
                hit = s.times_vector(self._xy(i, j - 1), self.y)
            elif i:
                hit = s.times_vector(self._xy(i - 1, 0), self.x)
            else:
                hit = {(0,) * self.L.dim: Fraction(1)}
            self._cache[key] = hit
        return hit

    def column(self, i: int, j: int, k: int) -> dict:
        s = straightener(self.L)
        p = self._xy(i, j)
        for _ in range(k):
            p = s.times_vector(p, self.x)
        return p

    def extend_to(self, d: int) -> None:
        for deg in range(self.degree + 1, d + 1):
            for mono in sorted((i, j, deg - i - j) for i in range(deg + 1) for j in range(deg - i + 1)):
                self.columns.append(mono)
                if not self._span.add(self.column(*mono)):
                    self.dependent.append(mono)
            self.degree = deg

    @property
    def rank(self) -> int:
        return self._span.rank

    def covered(self, d: int) -> int:
        """dim of U(L)_{<=d} intersected with the current column span."""
        return sum(1 for m in self._span.pivots if sum(m) <= d)

    def solve(self, p: PBWPoly, degree: int, max_degree: int | None = None) -> dict[XYXMono, Fraction]:
        """Raise the column degree from ``degree`` until ``p`` is reached.

        Lower-order terms of nf(x^i y^j x^k) are what produce [x, y], so an
        element of degree n generally needs columns of degree up to 2n.
        """
        cap = 2 * degree if max_degree is None else max_degree
        d = degree
        while True:
            self.extend_to(d)
            combo = self._span.express(p.terms)
            # the solver is shared, so it may already hold columns above d
            if combo is not None and all(sum(self.columns[g]) <= d for g in combo):
                return {self.columns[g]: c for g, c in combo.items() if c}
            if d >= cap:
                raise NoSolution(d, str(PBWPoly(self.L, self._span.residue(p.terms))))
            d += 1


_SOLVERS: dict[tuple, XYXSolver] = {}


def xyx_solver(L: LieAlgebra, x, y) -> XYXSolver:
    key = (L, L.vector(x), L.vector(y))
    s = _SOLVERS.get(key)
    if s is None:
        s = _SOLVERS.setdefault(key, XYXSolver(L, x, y))
    return s


def xyx_rewrite_linear(L: LieAlgebra, x, y, p: NCPoly, max_degree: int | None = None) -> XYXPoly:
    """Coefficients c with sum c_ijk x^i y^j x^k = p in U(L), by linear solve.

    The x^i y^j x^k are linearly dependent in U(L) (for instance
    xyx = (x^2 y + y x^2)/2 in the Heisenberg algebra), so the answer is
    the canonical one: supported on the columns kept by :class:`XYXSolver`.
    """
    x, y = _require_pair(L, x, y)
    target = pbw_normal_form(p)
    solver = xyx_solver(L, x, y)
    terms = solver.solve(target, max(p.degree, 0), max_degree)
    return XYXPoly(L, x, y, terms)


def xyx_canonical(q: XYXPoly) -> XYXPoly:
    """Re-express any x^i y^j x^k combination in canonical form."""
    return xyx_rewrite_linear(q.L, q.x, q.y, q.to_ncpoly())


class _Recursion:
    """Left multiplication by x, y and z = [x, y] on x^l y^m x^n, following
    the induction on l; the base case for z uses the exact A_m correction."""

    def __init__(self, L: LieAlgebra, x, y):
        self.L = L
        self.x, self.y = x, y
        self.z = L.bracket(x, y)
        basis = [x, y, self.z]
        if linalg.det(basis) == 0:
            raise DegenerateBasis(f"{L.format(x)}, {L.format(y)} and their bracket are dependent")
        # coordinates of vectors in the (x, y, z) basis
        self._to_xyz = linalg.transpose(linalg.inverse(basis))
        self.a, self.b, self.c = self.coords(L.bracket(self.z, x))
        self._my: dict = {}
        self._mz: dict = {}
        self._rm: dict = {}

    def coords(self, v) -> tuple[Fraction, ...]:
        return linalg.matvec(self._to_xyz, v)

    @staticmethod
    def _shift_x(poly: dict, left: int = 0, right: int = 0) -> dict:
        return {(i + left, j, k + right): c for (i, j, k), c in poly.items()}

    def mul_y(self, mono: XYXMono) -> dict:
        hit = self._my.get(mono)
        if hit is not None:
            return hit
        l, m, n = mono
        if l == 0:
            res = {(0, m + 1, n): Fraction(1)}
        else:
            # y x^l = (x y - z) x^(l-1)
            low = (l - 1, m, n)
            res = dict(self._shift_x(self.mul_y(low), left=1))
            for key, c in self.mul_z(low).items():
                _acc(res, key, -c)
        self._my[mono] = res
        return res

    def mul_z(self, mono: XYXMono) -> dict:
        hit = self._mz.get(mono)
        if hit is not None:
            return hit
        l, m, n = mono
        res: dict = {}
        if l == 0:
            # z y^m x^n = x y^(m+1) x^n - (y x y^m) x^n
            q = Fraction(m, m + 1)
            _acc(res, (1, m + 1, n), 1 - q)
            _acc(res, (0, m + 1, n + 1), -Fraction(1, m + 1))
            for key, c in self._shift_x(self.correction(m), right=n).items():
                _acc(res, key, -c)
        else:
            # z x = x z + a x + b y + c z
            low = (l - 1, m, n)
            for key, c in self._shift_x(self.mul_z(low), left=1).items():
                _acc(res, key, c)
            if self.a:
                _acc(res, mono, self.a)
            if self.b:
                for key, c in self.mul_y(low).items():
                    _acc(res, key, self.b * c)
            if self.c:
                for key, c in self.mul_z(low).items():
                    _acc(res, key, self.c * c)
        self._mz[mono] = res
        return res

    def correction(self, m: int) -> dict:
        """The exact remainder of A_m, itself rewritten; it has degree <= m."""
        hit = self._rm.get(m)
        if hit is None:
            hit = self.rewrite(ak_correction(self.L, self.x, self.y, m).to_ncpoly())
            self._rm[m] = hit
        return hit

    def left_multiply(self, v, poly: dict) -> dict:
        cx, cy, cz = self.coords(v)
        out: dict = {}
        for mono, c in poly.items():
            if cx:
                _acc(out, (mono[0] + 1, mono[1], mono[2]), cx * c)
            if cy:
                for key, d in self.mul_y(mono).items():
                    _acc(out, key, cy * c * d)
            if cz:
                for key, d in self.mul_z(mono).items():
                    _acc(out, key, cz * c * d)
        return out

    def rewrite(self, p: NCPoly) -> dict:
        basis = self.L.basis_vectors()
        out: dict = {}
        for w, c in p.terms.items():
            poly = {(0, 0, 0): Fraction(1)}
            for letter in reversed(w):
                poly = self.left_multiply(basis[letter], poly)
            for key, d in poly.items():
                _acc(out, key, c * d)
        return out


_RECURSIONS: dict[tuple, _Recursion] = {}


def xyx_rewrite_recursive(L: LieAlgebra, x, y, p: NCPoly) -> XYXPoly:
    """Same contract as :func:`xyx_rewrite_linear`, by structural recursion."""
    x, y = _require_pair(L, x, y)
    key = (L, x, y)
    rec = _RECURSIONS.get(key)
    if rec is None:
        rec = _RECURSIONS.setdefault(key, _Recursion(L, x, y))
    return XYXPoly(L, x, y, rec.rewrite(p))


def xyx_rank(L: LieAlgebra, x, y, d: int) -> tuple[int, int]:
    """(rank, count) of the x^i y^j x^k with i + j + k <= d."""
    s = xyx_solver(L, x, y)
    s.extend_to(d)
    count = sum(1 for m in s.columns if sum(m) <= d)
    if s.degree == d:
        return s.rank, count
    span = SparseSpan(order=_pbw_order)
    for m in s.columns:
        if sum(m) <= d:
            span.add(s.column(*m))
    return span.rank, count


def xyx_coverage(L: LieAlgebra, x, y, d: int) -> tuple[int, int, int]:
    """(covered, target, product_degree): how much of U(L)_{<=d} the
    x^i y^j x^k reach, using monomials up to degree 2d."""
    x, y = _require_pair(L, x, y)
    s = xyx_solver(L, x, y)
    target = count_monomials(L.dim, d)
    deg = d
    s.extend_to(deg)
    while s.covered(d) < target and deg < 2 * d:
        deg += 1
        s.extend_to(deg)
    return s.covered(d), target, deg


# -- factorization schemes --------------------------------------------------------

@dataclass(frozen=True)
class FactorizationScheme:
    factors: tuple[Subspace, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.labels and len(self.labels) != len(self.factors):
            raise ValueError("one label per factor")

    def describe(self, L: LieAlgebra) -> str:
        labels = self.labels or tuple("span{" + ", ".join(L.format(b) for b in f.basis) + "}" for f in self.factors)
        return " ".join(f"U({lab})" for lab in labels)


def line(L: LieAlgebra, v) -> Subspace:
    return Subspace.span([L.vector(v)], L.dim)


def generation_depth(L: LieAlgebra, spaces: Iterable[Subspace]) -> int | None:
    """Least t such that brackets of length <= t of elements of the sum of
    ``spaces`` span L; None when they generate a proper subalgebra."""
    first = Subspace.zero(L.dim)
    for S in spaces:
        first = first + S
    current, t = first, 1
    while current.dim < L.dim:
        nxt = current + bracket_space(L, first, current)
        if nxt.dim == current.dim:
            return None
        current, t = nxt, t + 1
    return t


def _products_of_degree(s, slots: Sequence, total: int):
    """nf of every ordered product prod_k slots[k]^{a_k} with sum a_k = total."""
    one = {(0,) * s.L.dim: Fraction(1)}
    if not slots:
        if total == 0:
            yield one
        return
    last = len(slots) - 1

    def go(idx: int, p: dict, left: int):
        v = slots[idx]
        if idx == last:
            for _ in range(left):
                p = s.times_vector(p, v)
            yield p
            return
        for a in range(left + 1):
            yield from go(idx + 1, p, left - a)
            if a < left:
                p = s.times_vector(p, v)

    yield from go(0, one, total)


def span_certificate(L: LieAlgebra, scheme: FactorizationScheme | Sequence[Subspace], d: int,
                     max_product_degree: int | None = None) -> Certificate:
    """Check U(L)_{<=d} lies in the span of products m_1 ... m_s of PBW
    monomials of the factors.

    Products are added by increasing total degree until U(L)_{<=d} is
    covered or the product degree reaches ``max_product_degree`` (default
    d times the bracket depth needed to generate L from the factors).  The
    rank is dim(U(L)_{<=d} cap span); the certificate passes when it equals
    dim U(L)_{<=d} = C(d + dim, dim).
    """
    t0 = time.perf_counter()
    if not isinstance(scheme, FactorizationScheme):
        scheme = FactorizationScheme(tuple(scheme))
    for t, F in enumerate(scheme.factors):
        if F.ambient != L.dim:
            raise ValueError(f"factor {t + 1} lives in dimension {F.ambient}, not {L.dim}")
        if not is_subalgebra(L, F):
            raise ValueError(f"factor {t + 1} is not a subalgebra")
    depth = generation_depth(L, scheme.factors)
    if max_product_degree is None:
        max_product_degree = d * depth if depth else d
    s = straightener(L)
    span = SparseSpan(order=_pbw_order)
    slots = [b for F in scheme.factors for b in F.basis]
    target = count_monomials(L.dim, d)
    nprod = 0
    reached = -1

    def covered() -> int:
        return sum(1 for m in span.pivots if sum(m) <= d)

    for total in range(max_product_degree + 1):
        for p in _products_of_degree(s, slots, total):
            nprod += 1
            span.add(p)
        reached = total
        if total >= d and covered() == target:
            break
    rank = covered()
    witnesses = []
    if rank != target:
        pivots = span.pivots
        missing = sorted((m for m in monomials_up_to(L.dim, d) if m not in pivots), key=_pbw_order)
        for m in missing[:10]:
            witnesses.append("uncovered " + str(PBWPoly.monomial(L, m)))
        if len(missing) > 10:
            witnesses.append(f"... {len(missing) - 10} more")
        if depth is None:
            witnesses.append("the factors generate a proper subalgebra")
    return Certificate(
        "span",
        rank == target,
        degree=d,
        rank=rank,
        target=target,
        witnesses=witnesses,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        details={"scheme": scheme.describe(L), "products": nprod, "product_degree": reached,
                 "max_product_degree": max_product_degree, "generation_depth": depth},
    )


def verify_pm_pair(L: LieAlgebra, P: Subspace, M: Subspace, d: int) -> Certificate:
    t0 = time.perf_counter()
    details = {"P": [L.format(b) for b in P.basis], "M": [L.format(b) for b in M.basis]}
    fail = None
    if not is_subalgebra(L, P):
        fail = "P is not a subalgebra"
    elif not is_subalgebra(L, M):
        fail = "M is not a subalgebra"
    elif (P + M).dim >= L.dim:
        fail = "P+M = L"
    if fail:
        return Certificate("pm_pair", False, degree=d, witnesses=[fail], details=details,
                           elapsed_ms=(time.perf_counter() - t0) * 1e3)
    cert = span_certificate(L, FactorizationScheme((P, M, P), ("P", "M", "P")), d)
    cert.check = "pm_pair"
    cert.details.update(details)
    cert.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return cert


def verify_regular_pair(L: LieAlgebra, P: Subspace, M: Subspace, sigma, d: int) -> Certificate:
    """``sigma[i]`` is the image of the i-th basis vector."""
    t0 = time.perf_counter()
    sigma = linalg.matrix(sigma)
    witnesses = []
    pm = verify_pm_pair(L, P, M, d)
    if not pm.verdict:
        witnesses.extend(pm.witnesses or ["U(P)U(M)U(P) does not span"])
    if P.intersect(M).dim:
        witnesses.append("P and M intersect")
    if len(sigma) != L.dim or not is_automorphism(L, sigma):
        witnesses.append("sigma is not an automorphism")
    elif linalg.matmul(sigma, sigma) != linalg.identity(L.dim):
        witnesses.append("sigma does not have order two")
    elif P.image(sigma) != M:
        witnesses.append("sigma(P) != M")
    other = None
    if not witnesses:
        other = span_certificate(L, FactorizationScheme((M, P, M), ("M", "P", "M")), d)
        if not other.verdict:
            witnesses.append("U(M)U(P)U(M) does not span")
    return Certificate(
        "regular_pair",
        not witnesses,
        degree=d,
        rank=pm.rank,
        target=pm.target,
        witnesses=witnesses,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        details={"P": pm.details.get("P"), "M": pm.details.get("M"),
                 "mpm_rank": other.rank if other else None},
    )


def search_pm_pair(L: LieAlgebra, d: int = 3, seed: int = 0, trials: int = 40) -> Certificate:
    """Bounded seeded search over lines Fx, Fy with small coordinates.

    A miss proves nothing; the certificate is labelled heuristic.
    """
    t0 = time.perf_counter()
    rng = random.Random(seed)
    found = []
    tried = 0
    for _ in range(trials):
        x = tuple(Fraction(rng.randint(-3, 3)) for _ in range(L.dim))
        y = tuple(Fraction(rng.randint(-3, 3)) for _ in range(L.dim))
        if linalg.is_zero(x) or linalg.is_zero(y):
            continue
        tried += 1
        c = verify_pm_pair(L, line(L, x), line(L, y), d)
        if c.verdict:
            found.append(f"({L.format(x)}, {L.format(y)})")
            break
    return Certificate("pair_search", bool(found), degree=d, seed=seed, witnesses=found,
                       elapsed_ms=(time.perf_counter() - t0) * 1e3,
                       details={"heuristic": True, "candidates": tried})


# -- schemes from triangular and graded structure --------------------------------

def borcherds_scheme(L: LieAlgebra, tri, I: Iterable[int], J: Iterable[int]) -> FactorizationScheme:
    """(Fe_i)_{i in I}, g_-, h'', g_+, (Ff_j)_{j in J} with h'' a complement of
    h' = h cap [L, L] in h.  Indices are 1-based."""
    I, J = sorted(set(I)), sorted(set(J))
    rank_l = len(tri.e)
    if set(I) & set(J) or set(I) | set(J) != set(range(1, rank_l + 1)):
        raise ValueError(f"I={I} and J={J} do not partition {{1..{rank_l}}}")
    hprime = tri.h.intersect(derived_subalgebra(L))
    hpp = hprime.complement_in(tri.h)
    factors = [line(L, tri.e[i - 1]) for i in I]
    labels = [f"Fe{i}" for i in I]
    factors += [tri.gminus, hpp, tri.gplus]
    labels += ["g-", "h''", "g+"]
    factors += [line(L, tri.f[j - 1]) for j in J]
    labels += [f"Ff{j}" for j in J]
    return FactorizationScheme(tuple(factors), tuple(labels))


def hpp_of(L: LieAlgebra, tri) -> Subspace:
    return tri.h.intersect(derived_subalgebra(L)).complement_in(tri.h)


def sandwich_scheme(L: LieAlgebra, tri, sign: str = "+") -> FactorizationScheme:
    """U(g_pm) U(g_mp) U(h'') U(g_pm)."""
    a, b = (tri.gplus, tri.gminus) if sign == "+" else (tri.gminus, tri.gplus)
    la, lb = ("g+", "g-") if sign == "+" else ("g-", "g+")
    return FactorizationScheme((a, b, hpp_of(L, tri), a), (la, lb, "h''", la))


@dataclass
class GradedParts:
    delta_plus: list[tuple[int, ...]]
    delta_minus: list[tuple[int, ...]]
    gplus: Subspace
    gminus: Subspace
    g0: Subspace
    g_alpha: Subspace
    g_minus_alpha: Subspace
    h_alpha: Subspace
    g0_prime: Subspace


def graded_parts(L: LieAlgebra, grading: Grading, alpha1: Sequence[int]) -> GradedParts:
    alpha1 = tuple(alpha1)
    support = grading.support()
    dp = sorted(a for a in support if positivity(a) == "positive")
    dm = sorted(a for a in support if positivity(a) == "negative")
    zero = (0,) * grading.rank
    neg = tuple(-c for c in alpha1)
    ga, gma = grading.component(alpha1), grading.component(neg)
    g0 = grading.component(zero)
    h_alpha = bracket_space(L, ga, gma)
    return GradedParts(dp, dm, grading.sum_of(dp), grading.sum_of(dm), g0, ga, gma, h_alpha,
                       h_alpha.complement_in(g0))


def _multiple_of(a: Sequence[int], alpha: Sequence[int]) -> bool:
    # a in Z alpha
    ratio = None
    for x, y in zip(a, alpha):
        if y == 0:
            if x != 0:
                return False
            continue
        if x % y:
            return False
        if ratio is None:
            ratio = x // y
        elif ratio != x // y:
            return False
    return True


def zgraded_scheme(L: LieAlgebra, grading: Grading, alpha1: Sequence[int], d: int = 3,
                   ) -> tuple[FactorizationScheme, Certificate]:
    """The four-factor scheme U(g_a1) U(g_-) U(g_0') U(g_+) after checking its
    hypotheses; raises HypothesisFailed naming the first one that fails."""
    t0 = time.perf_counter()
    alpha1 = tuple(alpha1)
    gcert = grading.check(L)
    if not gcert.verdict:
        raise HypothesisFailed("grading", "; ".join(gcert.witnesses))
    if positivity(alpha1) != "positive":
        raise HypothesisFailed("alpha1_positive", f"{alpha1} is not positive")
    zero = (0,) * grading.rank
    neg = tuple(-c for c in alpha1)
    on_line = {a for a in grading.support() if _multiple_of(a, alpha1)}
    if on_line != {zero, alpha1, neg}:
        raise HypothesisFailed("root_line", f"Z alpha1 meets the support in {sorted(on_line)}")
    parts = graded_parts(L, grading, alpha1)
    sub = parts.g_alpha + parts.h_alpha + parts.g_minus_alpha
    if not is_subalgebra(L, sub):
        raise HypothesisFailed("rank_one_subalgebra", "g_a1 + [g_a1, g_-a1] + g_-a1 is not closed")
    small = subalgebra_as_algebra(L, sub)
    P = Subspace.span([sub.coordinates(b) for b in parts.g_alpha.basis], sub.dim)
    M = Subspace.span([sub.coordinates(b) for b in parts.g_minus_alpha.basis], sub.dim)
    pm = verify_pm_pair(small, P, M, d)
    if not pm.verdict:
        raise HypothesisFailed("rank_one_pair", "; ".join(pm.witnesses))
    if not is_subalgebra(L, parts.g0_prime):
        raise HypothesisFailed("complement_subalgebra", "the complement of [g_a1, g_-a1] in g_0 is not closed")
    scheme = FactorizationScheme((parts.g_alpha, parts.gminus, parts.g0_prime, parts.gplus),
                                 ("g_a1", "g-", "g0'", "g+"))
    cert = Certificate(
        "zgraded_hypotheses", True, degree=d,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        details={
            "delta_plus": [list(a) for a in parts.delta_plus],
            "delta_minus": [list(a) for a in parts.delta_minus],
            "rank_one_dim": sub.dim,
            "g0_prime_dim": parts.g0_prime.dim,
            "bracket_nonzero": parts.h_alpha.dim > 0,
        },
    )
    return scheme, cert


def zgraded_pm_pair(L: LieAlgebra, grading: Grading, alpha1: Sequence[int], d: int = 3) -> Certificate:
    """Check (g_+ + g_0', g_-) as a pair; needs [g_a1, g_-a1] != 0."""
    gcert = grading.check(L)
    if not gcert.verdict:
        raise HypothesisFailed("grading", "; ".join(gcert.witnesses))
    parts = graded_parts(L, grading, alpha1)
    if parts.h_alpha.dim == 0:
        raise HypothesisFailed("bracket_nonzero", "[g_a1, g_-a1] = 0 so P + M is all of g")
    zgraded_scheme(L, grading, alpha1, d)
    return verify_pm_pair(L, parts.gplus + parts.g0_prime, parts.gminus, d)
