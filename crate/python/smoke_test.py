"""Smoke test for the pyprimefeas extension module.

Run after building the module, e.g. `pip install ./crates/py` or by putting the
compiled library on PYTHONPATH as `pyprimefeas.so`.
"""

import pyprimefeas as pf


def main():
    f = pf.IntPoly("x^2 + 1")
    assert f.degree == 2
    assert str(f) == "x^2 + 1"
    assert f.eval(3) == 10
    assert pf.IntPoly.from_json(f.to_json()) == f

    g = pf.gcd(pf.IntPoly("x^2 - 1"), pf.IntPoly("x^2 - 2*x + 1"))
    assert str(g) == "x - 1", g
    assert pf.resultant(f, pf.IntPoly("x + 1")) == 2
    assert pf.discriminant(f) == -4
    big = pf.IntPoly("x - 123456789012345678901234567890")
    assert big.terms()[-1][1] == -123456789012345678901234567890

    assert pf.is_prime(2**61 - 1)
    assert pf.nth_prime(25) == 97
    assert len(pf.primes_up_to(100)) == 25
    assert pf.root_count(f, 5) == 2
    assert pf.degree_pattern(pf.IntPoly("x^4 + 1"), 3) == [(2, 2)]

    report = pf.density([f], 100_000)
    last = report["rows"][-1]
    assert abs(last["pi_f"] / last["pi"] - 0.5) < 0.02, last

    verdict = pf.decide([pf.IntPoly("x^2 + 1"), pf.IntPoly("x + 1")], 1000)
    assert verdict["feasible"] is False and verdict["M"] == 1
    assert verdict["oracle_agrees"] is True

    k = pf.ideals(f, 25, [25])
    assert k["rows"][-1]["pi_K"] == 7

    b = pf.bounds(pf.example_system())
    assert b["robin_omega"] == 163317
    assert abs(b["a_f"] / 1.9567e12 - 1) < 5e-3

    try:
        pf.IntPoly("x^2 + + 1")
    except ValueError as e:
        assert "column 7" in str(e)
    else:
        raise AssertionError("parse error not raised")

    print("pyprimefeas smoke test passed")


if __name__ == "__main__":
    main()
