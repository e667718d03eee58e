import json

import mpmath
import pytest

import lawson

mpmath.mp.dps = 40


def within(disc, value, slack=0.0):
    return abs(complex(disc) - complex(value)) <= disc.radius + slack + 1e-15 * abs(complex(value))


def test_alphas_match_closed_forms():
    a = lawson.alphas(3, digits=30)
    assert len(a) == 3
    assert within(a[0], mpmath.log(2))
    assert a[1].contains_zero()
    assert within(a[2], mpmath.mpf(9) / 4 * mpmath.zeta(3))
    assert a[0].re_str(25).startswith("6.93147180559945309417232")


def test_alpha3_exact():
    assert lawson.alpha3_exact() == "9/4*zeta(3)"


def test_mzv_and_closed_form():
    z = lawson.mzv("1b,2", digits=30)
    expect = mpmath.zeta(3) - mpmath.pi**2 * mpmath.log(2) / 4
    assert within(z, expect)
    assert "zeta(3)" in lawson.mzv_closed_form("1b,2")


def test_omega_values():
    w = lawson.omega("2,2,3", digits=30)
    assert within(w, 1j * float(mpmath.pi**3 / 12))
    phi = mpmath.pi / 3
    d = lawson.omega("2,1", phi="pi/3", route="integral", digits=30)
    assert within(d, 2j * float(mpmath.pi * mpmath.log(mpmath.sin(phi))))


def test_bad_word_raises():
    with pytest.raises(lawson.LawsonError):
        lawson.omega("1,5")


def test_willmore_first_order():
    W, H = lawson.willmore_coefficients("pi/3", 1, digits=30)
    phi = mpmath.pi / 3
    c, s = mpmath.cos(phi), mpmath.sin(phi)
    W1 = -2 * (c**2 * mpmath.log(c) + s**2 * mpmath.log(s))
    assert within(W[0], W1)


def test_area_table():
    rows = lawson.area_table(3, 10)
    assert [r["genus"] for r in rows] == list(range(3, 11))
    assert abs(rows[0]["approx"] - 22.82027709) < 1e-8
    assert all(r["error_bound"] is None for r in rows)
    approx = [r["approx"] for r in rows]
    assert approx == sorted(approx)
    bounded = lawson.area_table(5, 10, ca=0.007, tprime=0.1)
    errs = [r["error_bound"] for r in bounded]
    assert all(e > 0 for e in errs) and errs == sorted(errs, reverse=True)


def test_genus2():
    assert abs(lawson.genus2_bound() - 22.5459) < 1e-3
    res = lawson.optimize_genus2("center", restarts=4)
    assert res["bound"] <= 22.57


def test_ift_n1():
    r = lawson.ift_genus(1, restarts=6)
    assert r["verified"]
    assert abs(r["genus"] - 94.697) <= 0.05 * 94.697


def test_cli_passthrough():
    code, out, _ = lawson.run_cli(["mzv", "--index", "2", "--digits", "25"])
    assert code == 0
    rec = json.loads(out)
    assert rec["schema"] == "1"
    assert abs(float(rec["re"]) - float(mpmath.pi**2 / 6)) < 1e-15
    code, _, _ = lawson.run_cli(["alpha", "--order", "-3"])
    assert code == 3
