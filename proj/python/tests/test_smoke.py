import pytest

import rydcp


def test_spot_value_30s():
    r = rydcp.potential(30, 10e-6, 10.0)
    assert r["u_total_Hz"] == pytest.approx(-106e3, rel=0.15)
    parts = r["u_nres_Hz"] + r["u_res_evan_Hz"] + r["u_res_prop_Hz"]
    assert parts == pytest.approx(r["u_total_Hz"], rel=1e-10)


def test_undoped_conductivity_is_universal():
    sigma0 = 1.602176634e-19**2 / (4 * 1.054571817e-34)
    omega = 0.5 * 1.602176634e-19 / 1.054571817e-34
    s = rydcp.kubo_conductivity(omega, ef_ev=0.0, temperature=10.0, gamma=1e9)
    assert s.real / sigma0 == pytest.approx(1.0, rel=5e-3)


def test_polarizability_is_lossy():
    r = rydcp.polarizability(0.5, 1.2)
    assert r["region"] == "1B"
    assert r["p_gamma"].imag <= 0.0


def test_transition_frequency():
    w = rydcp.transition_frequency("30S1/2", "30P1/2")
    assert abs(w) == pytest.approx(9.88e11, rel=0.01)


def test_scan_from_yaml():
    cfg = """
version: 1
kind: potential
stack: graphene-kubo
n: 30
temperature: 10
axes:
  - name: z0
    values: [2e-6, 4e-6]
"""
    out = rydcp.scan(cfg, workers=2)
    assert out["failures"] == 0
    u = [row["u_total_Hz"] for row in out["rows"]]
    assert u[0] < u[1] < 0.0


def test_bad_config_raises():
    with pytest.raises(ValueError):
        rydcp.scan("version: 2\n")


def test_presets_exposed():
    assert "fig6b" in rydcp.preset_names()
    assert "n: 40" in rydcp.preset_text("fig6b")
    assert "thickness 1e-08 m" in rydcp.describe_stack("graphene-vacuum-graphene")
