"""Command-line entry point: ``pmpair <command> <algebra> [flags]``.

The algebra argument is a path to an algebra file or the name of a bundled
fixture (``sl2``, ``sl3.alg``, ...).  Exit status: 0 pass, 1 fail, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import linalg
from .algebras import triangular_data
from .certificate import Certificate
from .classify3d import classify
from .lie import LieAlgebra, LieAlgebraError, check_axioms, derived_subalgebra, positivity
from .linalg import Subspace
from .parse import AlgebraFile, ParseError, parse_algebra, parse_expression, parse_vector, split_top_level
from .pmfactor import (
    FactorizationScheme,
    HypothesisFailed,
    NoSolution,
    NotGenerating,
    DegenerateBasis,
    line,
    span_certificate,
    verify_pm_pair,
    verify_regular_pair,
    xyx_canonical,
    xyx_rewrite_linear,
    xyx_rewrite_recursive,
)
from .repcheck import Representation, rep_suite, sl2_irrep
from .uea import pbw_normal_form

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (ParseError, LieAlgebraError, NotGenerating, DegenerateBasis, HypothesisFailed,
                FileNotFoundError, ValueError, KeyError)


def bundled_fixtures() -> list[str]:
    return sorted(p.name[:-4] for p in resources.files("pmpair.data").iterdir() if p.name.endswith(".alg"))


def load_algebra(ref: str) -> AlgebraFile:
    path = Path(ref)
    if path.is_file():
        return parse_algebra(path.read_text())
    name = ref[:-4] if ref.endswith(".alg") else ref
    res = resources.files("pmpair.data").joinpath(f"{name}.alg")
    if res.is_file():
        return parse_algebra(res.read_text())
    raise FileNotFoundError(f"no algebra file {ref!r} and no bundled fixture of that name "
                            f"(bundled: {', '.join(bundled_fixtures())})")


def parse_pair(L: LieAlgebra, text: str | None) -> tuple[tuple, tuple]:
    if not text:
        raise ValueError("--pair x,y is required")
    parts = split_top_level(text)
    if len(parts) != 2:
        raise ValueError(f"--pair needs two comma-separated elements, got {len(parts)}")
    return parse_vector(L, parts[0]), parse_vector(L, parts[1])


def _named_parts(L: LieAlgebra, grading) -> dict[str, Subspace]:
    if grading is not None:
        support = grading.support()
        zero = (0,) * grading.rank
        parts = {
            "gplus": grading.sum_of([a for a in support if positivity(a) == "positive"]),
            "gminus": grading.sum_of([a for a in support if positivity(a) == "negative"]),
            "g0": grading.component(zero),
        }
    else:
        tri = triangular_data(L)
        parts = {"gplus": tri.gplus, "gminus": tri.gminus, "g0": tri.h}
    parts["hpp"] = parts["g0"].intersect(derived_subalgebra(L)).complement_in(parts["g0"])
    parts["g+"], parts["g-"], parts["h''"] = parts["gplus"], parts["gminus"], parts["hpp"]
    parts["L"] = Subspace.full(L.dim)
    parts["0"] = Subspace.zero(L.dim)
    return parts


def parse_scheme(L: LieAlgebra, grading, text: str | None) -> FactorizationScheme:
    """Comma-separated factors: a part name (gplus, gminus, g0, hpp, L, 0),
    a braced span ``{a, b}``, or a single element standing for its line."""
    if not text:
        raise ValueError("--scheme is required")
    factors, labels = [], []
    named = None
    for raw in split_top_level(text):
        tok = raw.strip()
        if tok.startswith("{") and tok.endswith("}"):
            vectors = [parse_vector(L, s) for s in split_top_level(tok[1:-1]) if s.strip()]
            factors.append(Subspace.span(vectors, L.dim))
        elif tok in ("gplus", "gminus", "g0", "hpp", "g+", "g-", "h''", "L", "0"):
            if named is None:
                named = _named_parts(L, grading)
            factors.append(named[tok])
        else:
            factors.append(line(L, parse_vector(L, tok)))
        labels.append(tok)
    return FactorizationScheme(tuple(factors), tuple(labels))


def parse_sigma(L: LieAlgebra, text: str | None) -> list[list]:
    if not text:
        raise ValueError("--sigma is required: images of the basis elements in order")
    parts = split_top_level(text)
    if len(parts) != L.dim:
        raise ValueError(f"--sigma needs {L.dim} images, got {len(parts)}")
    return [list(parse_vector(L, p)) for p in parts]


def load_module(L: LieAlgebra, path: str) -> Representation:
    """JSON object mapping basis symbols to matrices of integers or "p/q" strings."""
    data = json.loads(Path(path).read_text())
    mats = data.get("matrices", data)
    missing = [s for s in L.names if s not in mats]
    if missing:
        raise ValueError(f"module file lacks matrices for {', '.join(missing)}")
    return Representation(L, [linalg.matrix([[linalg.to_fraction(str(x)) for x in row] for row in mats[s]])
                              for s in L.names])


# -- commands -----------------------------------------------------------------------

def cmd_check(args, af: AlgebraFile) -> Certificate:
    cert = check_axioms(af.algebra)
    if af.grading is not None:
        g = af.grading.check(af.algebra)
        cert.details["grading"] = "pass" if g.verdict else "fail"
        if not g.verdict:
            cert.verdict = False
            cert.witnesses.extend(g.witnesses)
    cert.details.setdefault("algebra", af.algebra.name)
    cert.details.setdefault("dim", af.algebra.dim)
    return cert


def cmd_nf(args, af: AlgebraFile) -> Certificate:
    t0 = time.perf_counter()
    p = parse_expression(af.algebra, args.expression)
    nf = pbw_normal_form(p)
    return Certificate("nf", True, degree=nf.degree, elapsed_ms=(time.perf_counter() - t0) * 1e3,
                       details={"expression": args.expression, "normal_form": str(nf)})


def cmd_factorize(args, af: AlgebraFile) -> Certificate:
    t0 = time.perf_counter()
    L = af.algebra
    x, y = parse_pair(L, args.pair)
    p = parse_expression(L, args.expression)
    target = pbw_normal_form(p)
    details = {"expression": args.expression, "x": L.format(x), "y": L.format(y)}
    witnesses = []
    results = {}
    try:
        if args.method in ("linear", "both"):
            results["linear"] = xyx_rewrite_linear(L, x, y, p)
        if args.method in ("recursive", "both"):
            results["recursive"] = xyx_rewrite_recursive(L, x, y, p)
    except NoSolution as exc:
        witnesses.append(str(exc))
    for key, q in results.items():
        details[key] = str(q)
        if q.to_pbw() != target:
            witnesses.append(f"{key} result does not reproduce the input")
    if len(results) == 2 and not witnesses:
        agree = xyx_canonical(results["recursive"]) == results["linear"]
        details["canonical_agreement"] = agree
        if not agree:
            witnesses.append("canonical forms differ")
    return Certificate("factorize", not witnesses, degree=max(p.degree, 0), witnesses=witnesses,
                       elapsed_ms=(time.perf_counter() - t0) * 1e3, details=details)


def cmd_classify(args, af: AlgebraFile) -> Certificate:
    t0 = time.perf_counter()
    report = classify(af.algebra)
    return Certificate("classify", True, elapsed_ms=(time.perf_counter() - t0) * 1e3, details=report)


def cmd_span(args, af: AlgebraFile) -> Certificate:
    scheme = parse_scheme(af.algebra, af.grading, args.scheme)
    return span_certificate(af.algebra, scheme, args.degree)


def cmd_pair(args, af: AlgebraFile) -> Certificate:
    L = af.algebra
    if args.scheme:
        scheme = parse_scheme(L, af.grading, args.scheme)
        if len(scheme.factors) != 2:
            raise ValueError("--scheme for pair takes two factors P,M")
        P, M = scheme.factors
    else:
        x, y = parse_pair(L, args.pair)
        P, M = line(L, x), line(L, y)
    return verify_pm_pair(L, P, M, args.degree)


def cmd_regular(args, af: AlgebraFile) -> Certificate:
    L = af.algebra
    x, y = parse_pair(L, args.pair)
    sigma = parse_sigma(L, args.sigma)
    return verify_regular_pair(L, line(L, x), line(L, y), sigma, args.degree)


def cmd_rep(args, af: AlgebraFile) -> Certificate:
    L = af.algebra
    if args.module:
        R = load_module(L, args.module)
    else:
        if L.names != ("e", "h", "f"):
            raise ValueError("the bundled module is the sl2 irreducible; pass --module for other algebras")
        R = sl2_irrep(args.irrep)
        R.algebra = L
    x, y = parse_pair(L, args.pair or ("e,f" if L.names == ("e", "h", "f") else None))
    rng = random.Random(args.seed)
    vectors = []
    while len(vectors) < args.vectors and R.size:
        v = [rng.randint(-3, 3) for _ in range(R.size)]
        if any(v):
            vectors.append(v)
    h = parse_vector(L, args.h) if args.h else None
    return rep_suite(R, x, y, args.submodule_degree or 2 * R.size + 2, vectors, h=h)


COMMANDS = {
    "check": cmd_check,
    "nf": cmd_nf,
    "factorize": cmd_factorize,
    "classify": cmd_classify,
    "span": cmd_span,
    "pair": cmd_pair,
    "regular": cmd_regular,
    "rep": cmd_rep,
}


def _degree(text: str) -> int:
    d = int(text)
    if d < 0:
        raise argparse.ArgumentTypeError("degree must be nonnegative")
    return d


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("algebra", help="algebra file or bundled fixture name")
    common.add_argument("--degree", type=_degree, default=4, help="filtration degree (default 4)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps (default 0)")
    common.add_argument("--json", action="store_true", help="emit the certificate as JSON")

    parser = argparse.ArgumentParser(prog="pmpair", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="check the Lie algebra axioms and grading")
    p = sub.add_parser("nf", parents=[common], help="PBW normal form of an expression")
    p.add_argument("expression")
    p = sub.add_parser("factorize", parents=[common], help="rewrite as a sum of x^i y^j x^k")
    p.add_argument("expression")
    p.add_argument("--pair", required=True, help='generators "x,y"')
    p.add_argument("--method", choices=("linear", "recursive", "both"), default="both")
    sub.add_parser("classify", parents=[common], help="three-dimensional classification report")
    p = sub.add_parser("span", parents=[common], help="spanning certificate for a factorization scheme")
    p.add_argument("--scheme", required=True, help='ordered factors, e.g. "gplus,gminus,gplus"')
    p = sub.add_parser("pair", parents=[common], help="certify (Fx, Fy) or (P, M) as a plus-minus pair")
    p.add_argument("--pair", help='generators "x,y" of the lines P = Fx, M = Fy')
    p.add_argument("--scheme", help='"P,M" as scheme factors instead of lines')
    p = sub.add_parser("regular", parents=[common], help="certify a regular plus-minus pair")
    p.add_argument("--pair", required=True, help='generators "x,y"')
    p.add_argument("--sigma", required=True, help="images of the basis elements, comma-separated")
    p = sub.add_parser("rep", parents=[common], help="representation checks")
    p.add_argument("--module", help="JSON file of representation matrices")
    p.add_argument("--irrep", type=_degree, default=2, help="highest weight of the bundled sl2 module")
    p.add_argument("--pair", help='elements "x,y" used to generate submodules')
    p.add_argument("--h", default="h", help="element tested for semisimplicity")
    p.add_argument("--vectors", type=int, default=5, help="number of seeded random vectors")
    p.add_argument("--submodule-degree", type=int, default=None)
    return parser


def emit(cert: Certificate, as_json: bool) -> str:
    return cert.to_json(indent=2, ensure_ascii=False) if as_json else cert.to_text()


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        af = load_algebra(args.algebra)
        if args.command == "rep" and not args.module and args.h == "h" and "h" not in af.algebra.names:
            args.h = None
        cert = COMMANDS[args.command](args, af)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    cert.seed = args.seed
    print(emit(cert, args.json))
    return EXIT_PASS if cert.verdict else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
