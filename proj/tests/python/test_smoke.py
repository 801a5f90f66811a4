import json
import math

import numpy as np
import pytest

import bsqlp


def grid(n):
    x = 2 * np.pi * np.arange(n) / n
    return np.meshgrid(x, x, indexing="ij")


def test_physical_round_trip():
    x1, x2 = grid(32)
    samples = np.sin(x1) + 0.5 * np.cos(3 * x2)
    f = bsqlp.Field.from_physical(samples)
    assert f.n == 32
    assert np.max(np.abs(f.to_physical() - samples)) < 1e-13
    assert abs(f.coefficient(1, 0) - (-0.5j)) < 1e-14


def test_lp_bands_sum_to_field():
    fam = bsqlp.LPFamily(64)
    assert fam.j_max == 5
    f = bsqlp.random_field(64, beta=1.0, kmax=21, seed=4)
    total = bsqlp.Field.zeros(64)
    for band in fam.decompose(f):
        total = total + band
    assert (total - f).max_abs_coeff() < 1e-13


def test_bony_pieces_sum_to_product():
    fam = bsqlp.LPFamily(64)
    f = bsqlp.random_field(64, kmax=12, seed=1)
    g = bsqlp.random_field(64, kmax=12, seed=2)
    parts = bsqlp.bony_decompose(f, g, fam)
    bony_sum = parts["t_fg"] + parts["t_gf"] + parts["remainder"]
    assert (bony_sum - bsqlp.product(f, g)).max_abs_coeff() < 1e-12


def test_biot_savart_inverts_curl():
    w = bsqlp.random_field(64, kmax=20, seed=3)
    u1, u2 = bsqlp.biot_savart(w)
    assert (bsqlp.curl(u1, u2) - w).max_abs_coeff() < 1e-13
    assert bsqlp.divergence(u1, u2).max_abs_coeff() < 1e-13


def test_commutator_vanishes_for_constant_velocity():
    fam = bsqlp.LPFamily(32)
    c = bsqlp.Field.single_mode(32, 0, 0, 0.5)
    rho = bsqlp.random_field(32, kmax=10, seed=2)
    for row in bsqlp.commutator_bound_sweep(c, c, rho, fam):
        assert row["lhs"] == 0.0


def test_gamma_verdicts():
    assert {"gamma_lin", "gamma_log", "gamma_sqrtlog"} <= set(bsqlp.gamma_catalog())
    report = bsqlp.validate_gamma("gamma_sqrtlog")
    assert all(c["pass"] for c in report["conditions"].values())
    assert not bsqlp.validate_gamma("gamma_log")["conditions"]["2.3"]["pass"]


def test_osgood_unit_modulus_is_exponential():
    sol = bsqlp.osgood_integrate("pi_unit", c=2.0, delta=1e-4, horizon=1.0, dt=0.01, bypass_validation=True)
    exact = 1e-4 * np.exp(2.0 * np.asarray(sol["t"]))
    assert np.max(np.abs(np.asarray(sol["eta"]) - exact) / exact) < 1e-8


def test_heat_flow_decays_single_mode():
    rho = bsqlp.Field.single_mode(32, 2, 1, 1.0)
    states = bsqlp.simulate(bsqlp.Field.zeros(32), rho, kappa=0.1, dt=0.01, t_end=0.5, stride=10)
    t, _, end = states[-1]
    assert math.isclose(abs(end.coefficient(2, 1)), math.exp(-0.1 * 5 * t), rel_tol=1e-10)


CONFIG = json.dumps(
    {
        "n": 16,
        "seed": 2,
        "solver": {"dt": 0.002, "t_end": 0.02, "stride": 5},
        "initial_data": {"omega": {"kind": "random", "kmax": 4}, "rho": {"kind": "random", "kmax": 4}},
        "checks": ["energy_identity", "vorticity_transport_p0"],
    }
)


def test_config_round_trip_and_rejection():
    canonical = bsqlp.canonical_config(CONFIG)
    assert bsqlp.canonical_config(canonical) == canonical
    assert len(bsqlp.config_hash(CONFIG)) == 16
    with pytest.raises(ValueError, match="kappa"):
        bsqlp.canonical_config('{"solver":{"kappa":-1},"initial_data":{"omega":{"kind":"zero"},"rho":{"kind":"zero"}}}')


def test_run_checks_and_verify(tmp_path):
    records = bsqlp.run_checks(CONFIG)
    assert [r["check_id"] for r in records] == ["energy_identity", "vorticity_transport_p0"]
    assert all(r["empirical_constant"] <= 1.0 + 1e-3 for r in records)
    assert bsqlp.verify(CONFIG, str(tmp_path)) == 0
    header = next(tmp_path.glob("records-*.csv")).read_text().splitlines()[0]
    assert header == "check_id,t,lhs,rhs,ratio,grid_n,kappa,gamma_name,p0,p1,seed"
