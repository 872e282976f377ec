import json
import math
from fractions import Fraction

import pytest

nflab = pytest.importorskip("nflab")


def test_identities():
    assert nflab.tau(2, 1, 3) == 2
    assert nflab.verify_lemma_appendix([1, 5, 6], [2, 3, 7]) == (0, 0)
    assert nflab.verify_lemma_appendix(["1/2", "5/2", "3"], [1, "3/2", "7/2"]) == (0, 0)
    pairs = nflab.enumerate_triple_pairs(7)
    assert len(pairs) == 43
    assert ((1, 5, 6), (2, 3, 7)) in pairs
    with pytest.raises(ValueError):
        nflab.verify_lemma_appendix([1, 5, 7], [2, 3, 8])


def test_polynomials():
    g = nflab.build_G(2)
    assert g.coefficient([1, 2], [1, 2]) == (1, 0, 1)
    f = nflab.build_F4(4)
    assert f.coefficient([2, 3], [1, 4]) == (0, Fraction(-1, 4), 1)
    assert f.is_real_valued() and f.all_zero_momentum()
    residual = nflab.bracket(nflab.build_lambda(4), f) + nflab.build_Q(4)
    assert len(residual) == 0
    assert nflab.load_poly_json(g.to_json()) == g
    k, ktilde, qtilde = nflab.split_R6(nflab.compute_R6(5))
    assert k == nflab.build_K(5)
    assert len(ktilde) == 0


def test_divisors_and_resonances():
    r = nflab.divisor_bound_check(3, 1, 2, 4)
    assert r["divisor"] == -4 and r["bound_holds"]
    assert nflab.divisor_sweep(10)["ok"]
    assert len(nflab.enumerate_resonant(6)) == 50
    assert nflab.verify_Ktilde_zero(6)["ok"]
    assert nflab.omega_s([1, 2, 5, 3, 6, 7], 1) == -36


def test_states_and_flows():
    q = {1: 1.0, -2: 2j}
    assert nflab.sobolev_norm(q, 1) == pytest.approx(math.sqrt(17))
    assert nflab.hamiltonian({1: 1.0}) == pytest.approx(1 + 1 / (4 * math.pi))
    q0 = nflab.random_initial_data(8, 1.0, 0.5, 11)
    run = nflab.simulate(q0, dt=1e-3, t_end=1.0, record_every=100, track_s=[1.0])
    assert run["steps"] == 1000
    assert max(abs(m - run["mass"][0]) for m in run["mass"]) < 1e-9
    assert run["norms"][0][0] == pytest.approx(0.5)
    with pytest.raises(ValueError):
        nflab.simulate(q0, dt=-1.0)


def test_stability_and_residual():
    s = nflab.stability(modes=8, r=1.0)
    assert s["passed"] and s["max_ratio"] < 3
    res = nflab.residual_scaling(order=4, modes=4, exponents=[2, 3, 4])
    assert 5.5 < res["slope"] < 6.5


def test_cli_and_battery():
    code, out, err = nflab.cli(["nf4", "--modes", "4", "--divisor-bound", "6", "--samples", "100"])
    assert code == 0, err
    assert "pass" in out
    code, _, err = nflab.cli(["nf4", "--bogus"])
    assert code == 2 and "error" in err
    checks = nflab.verify_all(modes=4, appendix_bound=8, random_pairs=50, divisor_bound=6, divisor_samples=50,
                              sextuple_bound=4, sextuple_samples=50)
    assert all(c["passed"] for c in checks), json.dumps(checks)
