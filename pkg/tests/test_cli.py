import json
import subprocess
import sys

import pytest

from pmpair.certificate import Certificate
from pmpair.classify3d import has_pm_pair
from pmpair.cli import bundled_fixtures, load_algebra, main

THREE_DIM = [n for n in bundled_fixtures() if load_algebra(n).algebra.dim == 3]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, (json.loads(out) if out else None), err


def test_fixture_corpus_is_complete():
    expected = {"sl2", "heisenberg", "g_special", "abelian", "sl3", "borcherds_rank1_zero",
                "k01", "k21", "k31", "k_half_1", "k_m1_1",
                "a0", "a1", "a2", "a5", "a_inf", "a_m1", "a_m1_4"}
    assert expected <= set(bundled_fixtures())


@pytest.mark.parametrize("name", bundled_fixtures())
def test_check_passes_on_fixtures(capsys, name):
    code, cert, _ = run_json(capsys, "check", name)
    assert code == 0 and cert["verdict"] == "pass"


@pytest.mark.parametrize("name", THREE_DIM)
def test_pair_exit_code_matches_verdict(capsys, name):
    code, report, _ = run_json(capsys, "classify", name)
    assert code == 0
    details = report["details"]
    L = load_algebra(name).algebra
    assert details["has_pair"] == has_pm_pair(L)[0]
    if details["has_pair"]:
        pair = ",".join(details["witness"])
        code, cert, _ = run_json(capsys, "pair", name, "--pair", pair)
        assert code == 0 and cert["verdict"] == "pass"
    else:
        a, b = L.names[:2]
        code, cert, _ = run_json(capsys, "pair", name, "--pair", f"{a},{b}")
        assert code == 1 and cert["verdict"] == "fail"


@pytest.mark.parametrize("argv", [
    ("check", "sl2"),
    ("nf", "sl2", "f*e^2"),
    ("factorize", "heisenberg", "y*x*y", "--pair", "x,y"),
    ("classify", "g_special"),
    ("span", "abelian", "--scheme", "x,y,x", "--degree", "2"),
    ("pair", "sl2", "--pair", "e,f"),
    ("regular", "sl2", "--pair", "e,f", "--sigma", "f,-h,e"),
    ("rep", "sl2", "--irrep", "2"),
])
def test_json_round_trip(capsys, argv):
    _, out, _ = run(capsys, *argv, "--json")
    data = json.loads(out)
    assert Certificate.from_json(out).to_dict() == data


def test_documented_examples(capsys):
    assert run(capsys, "pair", "sl2.alg", "--pair", "e,f", "--degree", "4")[0] == 0
    code, report, _ = run_json(capsys, "classify", "g_special.alg")
    assert code == 0 and report["details"]["has_pair"] is False
    assert run(capsys, "span", "sl3.alg", "--scheme", "gplus,gminus,gplus", "--degree", "3")[0] == 0


def test_classify_k21_reports_class(capsys):
    _, report, _ = run_json(capsys, "classify", "k21")
    assert report["details"]["pf_class"] == "{2, 1/2}"


def test_nf_output(capsys):
    code, out, _ = run(capsys, "nf", "sl2", "f*e^2")
    assert code == 0
    assert "normal_form: e^2 f - 2 e h - 2 e" in out


def test_factorize_methods(capsys):
    for method in ("linear", "recursive", "both"):
        code, cert, _ = run_json(capsys, "factorize", "sl2", "f*e*f", "--pair", "e,f", "--method", method)
        assert code == 0


def test_span_failure_exit_code(capsys):
    code, cert, _ = run_json(capsys, "span", "abelian", "--scheme", "x,y,x", "--degree", "2")
    assert code == 1
    assert (cert["rank"], cert["target"]) == (6, 10)


def test_pair_rejects_plane(capsys):
    code, cert, _ = run_json(capsys, "pair", "sl2", "--scheme", "{e,h},f")
    assert code == 1 and "P+M = L" in cert["witnesses"]


def test_regular_identity_sigma_fails(capsys):
    assert run(capsys, "regular", "sl2", "--pair", "e,f", "--sigma", "e,h,f")[0] == 1


def test_seed_is_echoed(capsys):
    _, cert, _ = run_json(capsys, "rep", "sl2", "--seed", "17")
    assert cert["seed"] == 17


@pytest.mark.parametrize("argv", [
    ("check", "no_such_algebra"),
    ("nf", "sl2", "e f"),
    ("nf", "sl2", "0.5e"),
    ("factorize", "sl2", "f", "--pair", "e,h"),
    ("pair", "sl2", "--pair", "e,q"),
    ("rep", "heisenberg"),
])
def test_input_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


@pytest.mark.parametrize("argv", [
    ("pair", "sl2", "--pair", "e,f", "--bogus"),
    ("pair", "sl2", "--pair", "e,f", "--degree", "-1"),
    ("frobnicate", "sl2"),
])
def test_argument_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(list(argv))
    assert info.value.code == 2


def test_algebra_file_path(tmp_path, capsys):
    f = tmp_path / "bad.alg"
    f.write_text("algebra bad\nbasis a b\nbracket [a,z] = b\n")
    code, _, err = run(capsys, "check", str(f))
    assert code == 2 and "line 3" in err


def test_module_file(tmp_path, capsys):
    f = tmp_path / "nat.json"
    f.write_text(json.dumps({"e": [[0, 1], [0, 0]], "h": [[1, 0], [0, -1]], "f": [[0, 0], [1, 0]]}))
    code, cert, _ = run_json(capsys, "rep", "sl2", "--module", str(f))
    assert code == 0 and cert["details"]["submodule_dims"] == [2] * 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pmpair", "pair", "sl2", "--pair", "e,f", "--degree", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "verdict: pass" in proc.stdout
