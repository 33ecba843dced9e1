import random
from fractions import Fraction

import pytest

import oracles
from pmpair.algebras import (
    INFINITY, a_family, a_family_sigma, abelian, borcherds_rank1_zero, g_special, heisenberg,
    k_family, random_vector, sl2, sl3_chevalley, sl3_grading, triangular_data,
)
from pmpair.certificate import Certificate
from pmpair.lie import Grading, span
from pmpair.linalg import Subspace
from pmpair.pmfactor import (
    HypothesisFailed, NoSolution, NotGenerating, ak_correction, bk_correction, borcherds_scheme,
    check_AkBk, sandwich_scheme, generation_depth, hpp_of, line, search_pm_pair, span_certificate,
    uk_subspace, verify_pm_pair, verify_regular_pair, xyx_canonical, xyx_coverage, xyx_rank,
    xyx_rewrite_linear, xyx_rewrite_recursive, zgraded_pm_pair, zgraded_scheme,
)
from pmpair.uea import NCPoly, PBWPoly, nf, power

SL2_SIGMA = [[0, 0, 1], [0, -1, 0], [1, 0, 0]]
HEIS_SIGMA = [[0, 1, 0], [1, 0, 0], [0, 0, -1]]

# (algebra, x, y) for the five named three-dimensional algebras
NAMED_PAIRS = [
    (sl2(), "e", "f"),
    (heisenberg(), "x", "y"),
    (k_family(2, 1), {"x": 1, "y": 1}, "z"),
    (a_family(0), {"A": 1, "X": 1}, {"A": 1, "X": -1}),
    (a_family(INFINITY), {"A": 1, "X": 1}, {"A": 1, "X": -1}),
]
NAMED_IDS = ["sl2", "heisenberg", "k21", "a0", "a_inf"]


def W(L, text):
    return NCPoly.word(L, list(text))


def random_ncpoly(rng, L, max_degree=5, terms=3):
    p = NCPoly(L)
    for _ in range(terms):
        d = rng.randint(0, max_degree)
        p = p + NCPoly.word(L, [rng.choice(L.names) for _ in range(d)], rng.randint(-3, 3))
    return p


# -- U_k ladder and the A_k / B_k congruences ---------------------------------

def test_uk_dimensions():
    L = sl2()
    U0 = uk_subspace(L, "e", "f", 0)
    assert U0.dim == 1
    assert nf(W(L, "e")) in U0
    U1 = uk_subspace(L, "e", "f", 1)
    assert U1.dim == 3
    for p in (nf(W(L, "ef")), nf(W(L, "fe"))):
        assert p in U1
    A = abelian()
    for k in range(5):
        assert uk_subspace(A, "x", "y", k).dim == k + 1


@pytest.mark.parametrize("k", range(0, 6))
def test_sl2_correction_is_k_f_power(k):
    L = sl2()
    expected = nf(k * power(L, "f", k))
    assert ak_correction(L, "e", "f", k) == expected
    assert bk_correction(L, "e", "f", k) == expected


def test_heisenberg_corrections_vanish():
    H = heisenberg()
    for k in range(6):
        assert not ak_correction(H, "x", "y", k)
        assert not bk_correction(H, "x", "y", k)


def test_akbk_passes_where_corrections_lie_in_uk():
    assert check_AkBk(heisenberg(), "x", "y", 8).verdict
    assert check_AkBk(k_family(2, 1), {"x": 1, "y": 1}, "z", 8).verdict
    assert check_AkBk(a_family(0), {"A": 1, "X": 1}, {"A": 1, "X": -1}, 8).verdict


def test_akbk_fails_for_sl2_at_first_step():
    # the A_1 remainder is f, and every element of U_1 has e-degree one
    cert = check_AkBk(sl2(), "e", "f", 4)
    assert not cert.verdict
    assert cert.details["first_failure"] == "A_1: correction f is not in U_1"
    assert cert.details["corrections"]["3"]["A"] == "3 f^3"


# -- XYX rewriting ------------------------------------------------------------

def test_xyx_examples():
    H = heisenberg()
    q = xyx_rewrite_linear(H, "x", "y", W(H, "yxy"))
    assert q.terms == {(1, 2, 0): Fraction(1, 2), (0, 2, 1): Fraction(1, 2)}
    L = sl2()
    r = xyx_rewrite_recursive(L, "e", "f", W(L, "fef"))
    assert r.terms == {(1, 2, 0): Fraction(1, 2), (0, 2, 1): Fraction(1, 2), (0, 1, 0): 1}
    assert nf(r.to_ncpoly()) == nf(W(L, "fef"))
    h = xyx_rewrite_linear(L, "e", "f", W(L, "h"))
    assert nf(h.to_ncpoly()) == nf(W(L, "h"))


@pytest.mark.parametrize("L,x,y", NAMED_PAIRS, ids=NAMED_IDS)
def test_unit_rewrites_to_constant(L, x, y):
    for method in (xyx_rewrite_linear, xyx_rewrite_recursive):
        assert method(L, x, y, NCPoly.unit(L)).terms == {(0, 0, 0): 1}


def test_heisenberg_zy_both_methods():
    H = heisenberg()
    p = W(H, "zy")
    lin = xyx_rewrite_linear(H, "x", "y", p)
    rec = xyx_rewrite_recursive(H, "x", "y", p)
    assert nf(lin.to_ncpoly()) == nf(rec.to_ncpoly()) == nf(p)
    assert xyx_canonical(lin) == xyx_canonical(rec)


def test_non_generating_pair_rejected():
    L = sl2()
    with pytest.raises(NotGenerating):
        xyx_rewrite_linear(L, "e", "h", W(L, "f"))
    with pytest.raises(NotGenerating):
        xyx_rewrite_recursive(L, "e", "h", W(L, "f"))


def test_linear_solver_surfaces_no_solution_at_its_cap():
    L = sl2()
    # h needs column degree 2, so a cap of 1 must be reported, not swallowed
    with pytest.raises(NoSolution):
        xyx_rewrite_linear(L, "e", "f", W(L, "h"), max_degree=1)


@pytest.mark.parametrize("L,x,y", NAMED_PAIRS, ids=NAMED_IDS)
def test_round_trip_and_canonical_agreement(L, x, y):
    rng = random.Random(31)
    for _ in range(25):
        p = random_ncpoly(rng, L, max_degree=4)
        lin = xyx_rewrite_linear(L, x, y, p)
        rec = xyx_rewrite_recursive(L, x, y, p)
        assert nf(lin.to_ncpoly()) == nf(p)
        assert nf(rec.to_ncpoly()) == nf(p)
        assert xyx_canonical(lin) == xyx_canonical(rec)


def test_xyx_monomials_are_dependent():
    # xyx = (x^2 y + y x^2)/2 in the Heisenberg algebra
    H = heisenberg()
    lhs = W(H, "xyx")
    rhs = Fraction(1, 2) * (W(H, "xxy") + W(H, "yxx"))
    assert nf(lhs) == nf(rhs)


@pytest.mark.parametrize("L,x,y", NAMED_PAIRS, ids=NAMED_IDS)
def test_xyx_rank_and_coverage(L, x, y):
    assert xyx_rank(L, x, y, 5) == (34, 56)
    covered, target, degree = xyx_coverage(L, x, y, 5)
    assert covered == target == 56
    assert degree <= 10


@pytest.mark.parametrize("name,oracle,xi,yi", [("sl2", oracles.SL2, 0, 2), ("heisenberg", oracles.HEIS, 0, 1)])
def test_xyx_rank_matches_oracle(name, oracle, xi, yi):
    L = sl2() if name == "sl2" else heisenberg()
    _, table = oracle
    for d in range(5):
        assert xyx_rank(L, L.names[xi], L.names[yi], d)[0] == oracles.xyx_rank_oracle(table, 3, xi, yi, d)


# -- span certificates and pairs ----------------------------------------------

def test_span_certificate_sl2_and_heisenberg():
    L = sl2()
    cert = span_certificate(L, [line(L, "e"), line(L, "f"), line(L, "e")], 4)
    assert cert.verdict and cert.rank == cert.target == 35
    H = heisenberg()
    assert span_certificate(H, [line(H, "x"), line(H, "y"), line(H, "x")], 4).verdict


def test_span_certificate_abelian_negative_control():
    A = abelian()
    cert = span_certificate(A, [line(A, "x"), line(A, "y"), line(A, "x")], 2)
    assert not cert.verdict
    assert (cert.rank, cert.target) == (6, 10)
    assert any("proper subalgebra" in w for w in cert.witnesses)
    assert any(w.startswith("uncovered") for w in cert.witnesses)


def test_generation_depth():
    L = sl2()
    assert generation_depth(L, [line(L, "e"), line(L, "f")]) == 2
    assert generation_depth(L, [Subspace.full(3)]) == 1
    assert generation_depth(L, [line(L, "e"), line(L, "h")]) is None


def test_verify_pm_pair_examples():
    L = sl2()
    assert verify_pm_pair(L, line(L, "e"), line(L, "f"), 4).verdict
    big = verify_pm_pair(L, span(L, ["e", "h"]), line(L, "f"), 4)
    assert not big.verdict and "P+M = L" in big.witnesses


def test_g_has_no_sampled_pair():
    G = g_special()
    rng = random.Random(0)
    for _ in range(12):
        P = line(G, random_vector(rng, 3))
        M = line(G, random_vector(rng, 3))
        assert not verify_pm_pair(G, P, M, 3).verdict


@pytest.mark.parametrize("L", [g_special(), abelian()], ids=["g", "abelian"])
def test_pair_search_finds_nothing(L):
    cert = search_pm_pair(L, 3, seed=0)
    assert not cert.verdict
    assert cert.seed == 0


def test_pair_search_finds_sl2_pair():
    assert search_pm_pair(sl2(), 3, seed=1).verdict


def test_regular_pairs():
    L = sl2()
    assert verify_regular_pair(L, line(L, "e"), line(L, "f"), SL2_SIGMA, 4).verdict
    H = heisenberg()
    assert verify_regular_pair(H, line(H, "x"), line(H, "y"), HEIS_SIGMA, 4).verdict
    for r in (0, INFINITY):
        A = a_family(r)
        P, M = line(A, {"A": 1, "X": 1}), line(A, {"A": 1, "X": -1})
        assert verify_regular_pair(A, P, M, a_family_sigma(), 4).verdict


def test_regular_pair_rejects_identity_sigma():
    L = sl2()
    identity = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    cert = verify_regular_pair(L, line(L, "e"), line(L, "f"), identity, 4)
    assert not cert.verdict
    assert "sigma(P) != M" in cert.witnesses


# -- triangular schemes -------------------------------------------------------

def test_borcherds_scheme_shapes():
    L = sl2()
    tri = triangular_data(L)
    assert borcherds_scheme(L, tri, [1], []).describe(L) == "U(Fe1) U(g-) U(h'') U(g+)"
    with pytest.raises(ValueError, match="partition"):
        borcherds_scheme(L, tri, [1], [1])
    with pytest.raises(ValueError):
        borcherds_scheme(L, tri, [], [])


def test_borcherds_rank_one_zero():
    B = borcherds_rank1_zero()
    tri = triangular_data(B)
    assert hpp_of(B, tri).dim == 0
    scheme = borcherds_scheme(B, tri, [], [1])
    assert scheme.describe(B) == "U(g-) U(h'') U(g+) U(Ff1)"
    assert span_certificate(B, scheme, 4).verdict


@pytest.mark.parametrize("I,J", [([1, 2], []), ([1], [2]), ([2], [1]), ([], [1, 2])])
def test_sl3_partitions(I, J):
    S = sl3_chevalley()
    cert = span_certificate(S, borcherds_scheme(S, triangular_data(S), I, J), 3)
    assert cert.verdict and cert.rank == cert.target == 165


def test_sl3_sandwich_scheme():
    S = sl3_chevalley()
    scheme = sandwich_scheme(S, triangular_data(S), "+")
    assert scheme.describe(S) == "U(g+) U(g-) U(h'') U(g+)"
    assert span_certificate(S, scheme, 3).verdict


def test_zgraded_sl3():
    S = sl3_chevalley()
    scheme, hyp = zgraded_scheme(S, sl3_grading(), (1, 0), 3)
    assert hyp.verdict
    assert scheme.describe(S) == "U(g_a1) U(g-) U(g0') U(g+)"
    assert zgraded_pm_pair(S, sl3_grading(), (1, 0), 3).verdict


def test_zgraded_heisenberg():
    H = heisenberg()
    grading = Grading(1, ((1,), (-1,), (0,)))
    scheme, hyp = zgraded_scheme(H, grading, (1,), 3)
    assert hyp.verdict
    assert span_certificate(H, scheme, 4).verdict
    assert zgraded_pm_pair(H, grading, (1,), 3).verdict


def test_zgraded_root_line_violation():
    S = sl3_chevalley()
    height = Grading(1, tuple((sum(d),) for d in sl3_grading().degrees))
    with pytest.raises(HypothesisFailed) as info:
        zgraded_scheme(S, height, (1,), 3)
    assert info.value.hypothesis == "root_line"


def test_zgraded_zero_bracket_reported():
    H = heisenberg()
    with pytest.raises(HypothesisFailed) as info:
        zgraded_pm_pair(H, Grading(1, ((1,), (1,), (2,))), (1,))
    assert info.value.hypothesis == "bracket_nonzero"


# -- certificates ---------------------------------------------------------------

def test_certificate_json_round_trip():
    L = sl2()
    cert = verify_regular_pair(L, line(L, "e"), line(L, "f"), SL2_SIGMA, 3)
    back = Certificate.from_json(cert.to_json())
    assert back.to_dict() == cert.to_dict()
    failing = span_certificate(abelian(), [line(abelian(), "x")] * 2, 2)
    assert Certificate.from_json(failing.to_json()).to_dict() == failing.to_dict()


def test_pass_implies_rank_equals_target():
    L = sl2()
    for d in range(5):
        cert = span_certificate(L, [line(L, "e"), line(L, "f"), line(L, "e")], d)
        assert cert.verdict and cert.rank == cert.target
