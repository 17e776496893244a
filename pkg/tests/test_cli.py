import io
import json

import pytest

from permpoly.cli import main, parse_element, parse_poly
from permpoly.gf import field, find_generator
from permpoly.poly import poly_eval


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    text = out.getvalue()
    return code, (json.loads(text) if text.startswith("{") else text)


def suite(doc, name):
    return next(s for s in doc["suites"] if s["name"] == name)


def test_verify_positive():
    code, doc = run("verify", "--family", "f1", "--p", "2", "--m", "1", "--A", "unity3:0")
    assert code == 0 and doc["status"] == "PASS"
    assert suite(doc, "bijectivity")["observed"]["is_permutation"] is True
    assert doc["field"] == {"p": 2, "m": 1, "q": 2, "k": 3, "modulus": [1, 1, 0, 1]}
    assert doc["A"] == {"selector": "unity3:0", "coeffs": [1, 0, 0]}
    assert "timings_ms" in doc and "errata" not in doc


def test_verify_negative_is_pass_with_errata():
    code, doc = run("verify", "--family", "f1", "--p", "2", "--m", "2", "--A", "unity3:0")
    assert code == 0 and doc["status"] == "PASS"
    obs = suite(doc, "bijectivity")["observed"]
    assert obs == {"is_permutation": False, "root_count": 10}
    assert suite(doc, "bijectivity")["collision"] is not None
    assert doc["errata"][0]["observed"] == "10 roots"


def test_verify_f2_reports_printed_branch():
    code, doc = run("verify", "--family", "f2", "--m", "2", "--A", "unity3:1", "--suites", "branches")
    assert code == 0
    assert [s["name"] for s in doc["suites"]] == ["branches"]
    assert "second branch" in doc["errata"][0]["claim"]


@pytest.mark.parametrize("unit,expect_pp", [("unit:0", False), ("unit:1", True)])
def test_verify_f3(unit, expect_pp):
    code, doc = run("verify", "--family", "f3", "--p", "3", "--m", "1", "--A", unit)
    assert code == 0
    assert doc["predicted_pp"] is expect_pp
    assert suite(doc, "bijectivity")["observed"]["is_permutation"] is expect_pp


def test_verify_report_reproducible():
    argv = ("verify", "--family", "f2", "--m", "3")
    _, a = run(*argv)
    _, b = run(*argv)
    a.pop("timings_ms"), b.pop("timings_ms")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_invert():
    for fam, p, m, sel in (("f1", 2, 1, "unity3:0"), ("f2", 2, 2, "unity3:2"), ("f3", 3, 1, "unit:1")):
        for form in ("piecewise", "rational", "brute"):
            code, doc = run("invert", "--family", fam, "--p", str(p), "--m", str(m), "--A", sel, "--value", "0", "--form", form)
            assert code == 0 and set(doc["result"]) <= {"0", ":"}


def test_invert_f3_at_f_of_t():
    F = field(3, 3)
    y = poly_eval(parse_poly(F, "x + 2*x^7 + x^9"), F.t)
    value = ":".join(map(str, y.coeffs))
    results = set()
    for form in ("brute", "piecewise", "rational"):
        code, doc = run("invert", "--family", "f3", "--p", "3", "--m", "1", "--A", "unit:1", "--value", value, "--form", form)
        assert code == 0
        results.add(doc["result"])
    assert results == {"0:1:0"}


def test_invert_trace_zero_branch():
    code, doc = run("invert", "--family", "f1", "--p", "2", "--m", "1", "--A", "unity3:0", "--value", "0:1:1")
    assert code == 0 and doc["branch"] == 2


def test_invert_rejects_non_pp():
    code, _ = run("invert", "--family", "f1", "--m", "2", "--value", "1")
    assert code == 2


def test_enumerate_f1():
    code, doc = run("enumerate", "--family", "f1", "--max-m", "4")
    assert code == 0
    assert sorted({r["m"] for r in doc["rows"]}) == [1, 2, 3, 4]
    assert sum(r["m"] == 4 for r in doc["rows"]) == 3
    assert all(r["predicted"] == r["verified"] for r in doc["rows"])


def test_enumerate_f3():
    code, doc = run("enumerate", "--family", "f3", "--max-q", "9")
    assert code == 0
    assert sorted({r["q"] for r in doc["rows"]}) == [2, 3, 4, 5, 7, 8, 9]
    assert all(r["match"] for r in doc["rows"])


def test_enumerate_requires_limit():
    assert run("enumerate", "--family", "f1")[0] == 2


@pytest.mark.parametrize("argv", [
    ("--family", "f1", "--p", "2", "--m", "1", "--A", "unity3:0"),
    ("--family", "f3", "--p", "3", "--m", "1", "--A", "unit:1"),
])
def test_resultant_check(argv):
    code, a = run("resultant-check", *argv)
    assert code == 0
    assert suite(a, "resultant")["observed"]["equal"] == 500
    assert a["seed"] == 20240917
    _, b = run("resultant-check", *argv)
    a.pop("timings_ms"), b.pop("timings_ms")
    assert a == b


def test_interpolate():
    code, doc = run("interpolate", "--family", "f1", "--p", "2", "--m", "1", "--A", "unity3:0")
    assert code == 0 and doc["degree"] <= 7
    assert all(s["passed"] for s in doc["suites"])
    code, doc = run("interpolate", "--poly", "x", "--p", "2", "--m", "1")
    assert code == 0 and doc["polynomial"] == "1:0:0*x^1"


def test_interpolate_guard():
    assert run("interpolate", "--family", "f1", "--m", "3", "--guard", "100")[0] == 2


def test_check_poly():
    code, doc = run("check-poly", "--p", "2", "--k", "2", "--poly", "x^2 + x")
    assert code == 0
    assert doc["is_permutation"] is False and doc["collision"] == ["0:0", "1:0"]


def test_usage_errors():
    assert run("verify", "--family", "f9")[0] == 2
    assert run("verify", "--family", "f1", "--A", "unity3:7")[0] == 2
    assert run("verify", "--family", "f1", "--suites", "nope")[0] == 2
    assert run("verify", "--family", "f1", "--m", "9")[0] == 2
    assert run("invert", "--family", "f1", "--value", "7")[0] == 2
    assert run()[0] == 2


def test_text_format():
    code, text = run("--format", "text", "verify", "--family", "f1")
    assert code == 0 and "[PASS] bijectivity" in text


def test_modulus_cache_flag(tmp_path):
    from permpoly import gf

    path = tmp_path / "m.txt"
    try:
        assert run("--modulus-cache", str(path), "verify", "--family", "f1", "--suites", "bijectivity")[0] == 0
        assert path.read_text().startswith("2 3: 1 1 0 1")
    finally:
        gf.set_modulus_cache(None)


def test_literals():
    F = field(2, 3)
    assert parse_element(F, "1:0:1") == F.from_coeffs([1, 0, 1])
    assert parse_element(F, "g^3") == find_generator(F) ** 3
    f = parse_poly(F, "x + g^3*x^6 + 1:1")
    assert [(e, c) for e, c in f.terms] == [(0, F(3)), (1, F.one), (6, find_generator(F) ** 3)]
    for bad in ("2", "1:0:0:1", "y", ""):
        with pytest.raises(Exception):
            parse_poly(F, bad) if bad in ("y", "") else parse_element(F, bad)
