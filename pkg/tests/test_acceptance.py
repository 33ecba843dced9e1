"""One test per acceptance criterion, each at its stated tolerance.

Every test reports a single PASS/FAIL line (collected again in the terminal
summary).  Criteria 3 and 4 ask for properties that do not hold in U(L); they
are implemented as stated and fail, with the measured values in the line.
"""

import random
import time
from fractions import Fraction
from itertools import combinations

import oracles
from pmpair import linalg
from pmpair.algebras import (
    INFINITY, a_family, a_family_sigma, abelian, borcherds_rank1_zero, g_special, heisenberg,
    jacobson_case, k_family, random_invertible, random_lie_algebra, random_vector, sl2,
    sl3_chevalley, sl3_grading, triangular_data,
)
from pmpair.classify3d import (
    GAlgebraFlag, a_isomorphic, has_pm_pair, k_invariant, k_to_a, pf_class_of, regular_class, similar2,
)
from pmpair.lie import change_basis, derived_subalgebra, span
from pmpair.linalg import Subspace
from pmpair.pmfactor import (
    borcherds_scheme, check_AkBk, line, search_pm_pair, span_certificate, verify_pm_pair,
    verify_regular_pair, xyx_canonical, xyx_coverage, xyx_rank, xyx_rewrite_linear,
    xyx_rewrite_recursive, zgraded_pm_pair,
)
from pmpair.repcheck import check_weight_identity, generated_submodule, is_nilpotent, semisimple_on, sl2_irrep, verify_rep
from pmpair.uea import NCPoly, nf, verify_identity

NAMED = [
    ("sl2", sl2(), "e", "f"),
    ("H", heisenberg(), "x", "y"),
    ("K(2,1)", k_family(2, 1), {"x": 1, "y": 1}, "z"),
    ("A(0)", a_family(0), {"A": 1, "X": 1}, {"A": 1, "X": -1}),
    ("A(inf)", a_family(INFINITY), {"A": 1, "X": 1}, {"A": 1, "X": -1}),
]


def random_element(rng, L, max_degree=5, terms=3):
    p = NCPoly(L)
    for _ in range(terms):
        d = rng.randint(0, max_degree)
        p = p + NCPoly.word(L, [rng.choice(L.names) for _ in range(d)], rng.randint(-3, 3))
    return p


def identity_suite(L, family):
    t0 = time.perf_counter()
    failures = [(i, j, k) for i in range(1, 6) for j in range(5) for k in range(5)
                if not verify_identity(*family(L, i, j, k)).verdict]
    return failures, time.perf_counter() - t0


def test_criterion_01_sl2_identity_suite(report_criterion):
    failures, elapsed = identity_suite(sl2(), oracles.sl2_left_f_identity)
    ok = not failures and elapsed < 10
    report_criterion(1, ok, f"125 identities f(e^i f^j e^k), {len(failures)} failures, {elapsed:.2f} s")
    assert ok


def test_criterion_02_heisenberg_identity_suite(report_criterion):
    failures, elapsed = identity_suite(heisenberg(), oracles.heisenberg_left_y_identity)
    ok = not failures and elapsed < 10
    report_criterion(2, ok, f"125 identities y(x^i y^j x^k), {len(failures)} failures, {elapsed:.2f} s")
    assert ok


def test_criterion_03_akbk_suite(report_criterion):
    cases = [(name, L, x, y) for name, L, x, y in NAMED]
    for seed in range(5):
        rng = random.Random(seed)
        L = random_lie_algebra(rng, 4)
        cases.append((f"random4[seed {seed}]", L, random_vector(rng, 4), random_vector(rng, 4)))
    failed = []
    for name, L, x, y in cases:
        cert = check_AkBk(L, x, y, 8)
        if not cert.verdict:
            failed.append(f"{name}: {cert.details['first_failure']}")
    ok = not failed
    report_criterion(3, ok, f"{len(cases) - len(failed)}/{len(cases)} pass at k <= 8; " + "; ".join(failed))
    assert ok


def test_criterion_04_xyx_suite(report_criterion):
    notes, ok = [], True
    for name, L, x, y in NAMED:
        t0 = time.perf_counter()
        rank, count = xyx_rank(L, x, y, 5)
        covered, target, deg = xyx_coverage(L, x, y, 5)
        rng = random.Random(0)
        round_trip = raw = canonical = 0
        for _ in range(100):
            p = random_element(rng, L)
            lin = xyx_rewrite_linear(L, x, y, p)
            rec = xyx_rewrite_recursive(L, x, y, p)
            round_trip += nf(lin.to_ncpoly()) == nf(p) and nf(rec.to_ncpoly()) == nf(p)
            raw += lin.terms == rec.terms
            canonical += xyx_canonical(lin) == xyx_canonical(rec)
        elapsed = time.perf_counter() - t0
        good = rank == count == 56 and round_trip == raw == 100 and elapsed < 60
        ok = ok and good
        notes.append(f"{name}: rank {rank}/{count}, covered {covered}/{target} by degree {deg}, "
                     f"round-trip {round_trip}/100, raw agree {raw}/100, canonical agree {canonical}/100, "
                     f"{elapsed:.1f} s")
    report_criterion(4, ok, "; ".join(notes))
    assert ok


def _abelian_oracle(L):
    return all(linalg.is_zero(L.structure[i][j]) for i in range(3) for j in range(3))


def _g_oracle(L):
    # dim L' = 2, L' abelian and ad z a nonzero scalar on L' for z outside L'
    D = derived_subalgebra(L)
    if D.dim != 2 or not linalg.is_zero(L.bracket(*D.basis)):
        return False
    z = next(b for b in L.basis_vectors() if b not in D)
    u, v = D.basis
    scale = None
    for w in (u, v):
        image = L.bracket(z, w)
        ratio = next((image[i] / w[i] for i in range(3) if w[i]), None)
        if ratio is None or ratio == 0 or linalg.scale(ratio, w) != image:
            return False
        if scale is not None and ratio != scale:
            return False
        scale = ratio
    return True


def test_criterion_05_pair_decision(report_criterion):
    algebras = [
        ("a", jacobson_case("a")), ("b", jacobson_case("b")), ("c", jacobson_case("c")),
        ("d", jacobson_case("d", (2, 1, 0, 3))), ("e", jacobson_case("e", (1, -1))),
        ("abelian", abelian()), ("g", g_special()),
    ]
    rng = random.Random(2024)
    algebras += [(f"random3[{i}]", random_lie_algebra(rng, 3)) for i in range(20)]
    problems = []
    positives = 0
    for name, L in algebras:
        expected = not _abelian_oracle(L) and not _g_oracle(L)
        verdict, witness = has_pm_pair(L)
        if verdict != expected:
            problems.append(f"{name}: verdict {verdict}")
        if verdict:
            positives += 1
            if not verify_pm_pair(L, line(L, witness[0]), line(L, witness[1]), 4).verdict:
                problems.append(f"{name}: witness fails at d=4")
    searches = {name: search_pm_pair(L, 3, seed=0).verdict for name, L in (("g", g_special()), ("abelian", abelian()))}
    problems += [f"search found a pair in {n}" for n, found in searches.items() if found]
    ok = not problems
    report_criterion(5, ok, f"{len(algebras)} algebras, {positives} witnesses certified at d=4, "
                            f"searches on g/abelian empty: {not any(searches.values())}" + ("; " + "; ".join(problems) if problems else ""))
    assert ok


def _expected_key(a, b):
    if a == 0 or b == 0:
        return "zero"
    u = a / b
    return "g" if u == 1 else frozenset({u, 1 / u})


def test_criterion_06_pf_partition(report_criterion):
    values = [Fraction(v) for v in (0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2))]
    grid = [(a, b) for a in values for b in values if (a, b) != (0, 0)]
    classes, problems = {}, []
    for a, b in grid:
        try:
            classes[(a, b)] = k_invariant(a, b)
        except GAlgebraFlag:
            classes[(a, b)] = "g"
    for p, q in combinations(grid, 2):
        same = classes[p] == classes[q]
        if same != (_expected_key(*p) == _expected_key(*q)):
            problems.append(f"{p} vs {q}")
    rng = random.Random(6)
    checked = 0
    for a, b in grid:
        if classes[(a, b)] == "g":
            continue
        K = k_family(a, b)
        for _ in range(10):
            checked += 1
            if pf_class_of(change_basis(K, random_invertible(rng, 3))) != classes[(a, b)]:
                problems.append(f"K({a},{b}) basis change")
    ok = not problems
    report_criterion(6, ok, f"{len(grid)} grid points, {len(set(map(str, classes.values())))} classes, "
                            f"{checked} basis changes" + ("; " + "; ".join(problems[:5]) if problems else ""))
    assert ok


def test_criterion_07_regular_classes(report_criterion):
    params = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-1, 4), INFINITY]
    problems = []
    for r in params:
        rc = regular_class(a_family(r))
        if rc.kind != "A" or not a_isomorphic(rc.r, r):
            problems.append(f"A({r}) -> {rc}")
    for r, s in combinations(params, 2):
        if a_isomorphic(r, s):
            problems.append(f"a_isomorphic({r},{s})")
    for u in (-2, 2, 3):
        if k_to_a(u) != (Fraction(-u, (u + 1) ** 2), False):
            problems.append(f"k_to_a({u})")
    if k_to_a(-1)[0] != INFINITY:
        problems.append("k_to_a(-1)")
    flagged = [u for u in (-3, -2, -1, Fraction(-1, 2), Fraction(1, 2), 1, 2, 3) if k_to_a(u)[1]]
    if flagged != [1]:
        problems.append(f"flag raised at {flagged}")
    if similar2([[-1, 0], [0, -1]], [[0, Fraction(1, 2)], [-2, -2]]):
        problems.append("similar2 accepted the u=1 pair")
    ok = not problems
    report_criterion(7, ok, "A(r) recovered for r in {0,1,-1,2,-1/4,inf}; k_to_a formula, inf and u=1 flag"
                            + ("; " + "; ".join(problems) if problems else ""))
    assert ok


def test_criterion_08_regular_pairs(report_criterion):
    sigma_sl2 = [[0, 0, 1], [0, -1, 0], [1, 0, 0]]
    sigma_h = [[0, 1, 0], [1, 0, 0], [0, 0, -1]]
    runs = {
        "sl2": (sl2(), "e", "f", sigma_sl2),
        "H": (heisenberg(), "x", "y", sigma_h),
        "A(0)": (a_family(0), {"A": 1, "X": 1}, {"A": 1, "X": -1}, a_family_sigma()),
        "A(inf)": (a_family(INFINITY), {"A": 1, "X": 1}, {"A": 1, "X": -1}, a_family_sigma()),
    }
    results = {name: verify_regular_pair(L, line(L, x), line(L, y), s, 4) for name, (L, x, y, s) in runs.items()}
    ok = all(c.verdict for c in results.values())
    report_criterion(8, ok, ", ".join(f"{n} {'pass' if c.verdict else 'fail'} ({c.rank}/{c.target})"
                                      for n, c in results.items()))
    assert ok


def test_criterion_09_triangular_schemes(report_criterion):
    t0 = time.perf_counter()
    notes, ok = [], True
    S = sl3_chevalley()
    tri = triangular_data(S)
    for I, J in (([1, 2], []), ([1], [2]), ([2], [1]), ([], [1, 2])):
        c = span_certificate(S, borcherds_scheme(S, tri, I, J), 3)
        ok = ok and c.verdict and c.rank == 165
        notes.append(f"sl3 I={I} J={J} {c.rank}/{c.target}")
    for name, L in (("sl2", sl2()), ("borcherds_rank1_zero", borcherds_rank1_zero())):
        t = triangular_data(L)
        for I, J in (([1], []), ([], [1])):
            c = span_certificate(L, borcherds_scheme(L, t, I, J), 4)
            ok = ok and c.verdict
            notes.append(f"{name} I={I} {c.rank}/{c.target}")
    z = zgraded_pm_pair(S, sl3_grading(), (1, 0), 3)
    ok = ok and z.verdict
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 300
    notes.append(f"sl3 Z^2 graded 4-factor {z.rank}/{z.target}")
    report_criterion(9, ok, "; ".join(notes) + f"; {elapsed:.1f} s")
    assert ok


def test_criterion_10_repcheck_suite(report_criterion):
    problems = []
    for n in range(7):
        R = sl2_irrep(n)
        if not verify_rep(R).verdict:
            problems.append(f"n={n} rep")
        if not (is_nilpotent(R["e"]) and is_nilpotent(R["f"])):
            problems.append(f"n={n} nilpotence")
        rng = random.Random(n)
        for _ in range(20):
            v = random_vector(rng, n + 1)
            if generated_submodule(R, v, "e", "f", 2 * n + 2).dim != n + 1:
                problems.append(f"n={n} submodule")
        ss = semisimple_on(R["h"])
        if not ss.semisimple or ss.spectrum != {Fraction(n - 2 * i): 1 for i in range(n + 1)}:
            problems.append(f"n={n} spectrum")
        if not check_weight_identity(n):
            problems.append(f"n={n} h(e^n v)")
    ok = not problems
    report_criterion(10, ok, "sl2_irrep(n), n <= 6: module, nilpotence, 20 vectors each, spectrum, h(e^n v) = n e^n v"
                             + ("; " + "; ".join(problems) if problems else ""))
    assert ok


def test_criterion_11_negative_controls(report_criterion):
    A = abelian()
    c = span_certificate(A, [line(A, "x"), line(A, "y"), line(A, "x")], 2)
    L = sl2()
    p = verify_pm_pair(L, span(L, ["e", "h"]), line(L, "f"), 4)
    ok = (not c.verdict and (c.rank, c.target) == (6, 10)
          and not p.verdict and "P+M = L" in p.witnesses)
    report_criterion(11, ok, f"abelian (Fx,Fy,Fx) d=2 rank {c.rank} vs {c.target}; "
                             f"sl2 (Fe+Fh, Ff) rejected: {', '.join(p.witnesses)}")
    assert ok
