import math

import numpy as np
import pytest

import giantscatter as gs

ROOT = math.sqrt(2.5)


def test_dispersion_matches_band_edges():
    p = gs.LatticeParams(1.0, 0.5)
    assert gs.dispersion(0.0, p) == pytest.approx(2.0)
    assert gs.dispersion(-math.pi, p) == pytest.approx(1.0)
    k = gs.wave_vector(ROOT, p)
    assert k == pytest.approx(-math.pi / 2)


def test_single_atom_table_entry():
    p = gs.LatticeParams(1.0, -0.5)
    c = gs.characteristics(gs.single("AA", d=1), -math.pi / 2, p)
    assert c["lamb_shift"] == pytest.approx(-c["gamma_e"], rel=1e-12)
    assert c["decay"] == pytest.approx(2 * c["gamma_e"], rel=1e-12)


def test_flux_conserved_on_spectrum():
    p = gs.LatticeParams(1.0, 0.3)
    cfg = gs.two("ABBA", d1=3, d21=2, d2=4)
    ge = gs.emission_rate(gs.wave_vector(1.4, p), 0.01, p)
    s = gs.spectrum(cfg, 1.4, list(np.linspace(-8, 8, 201) * ge), p, gs.Mode.Exact)
    assert s["R"].shape == (201,)
    assert np.max(np.abs(s["R"] + s["T"] - 1)) < 1e-12
    assert np.allclose(np.abs(s["r"]) ** 2, s["R"])


def test_oracle_agrees_with_closed_form():
    p = gs.LatticeParams(1.0, 0.5)
    cfg = gs.two("AABB")
    ge = gs.emission_rate(gs.wave_vector(1.3, p), 0.01, p)
    r, t = gs.scatter(cfg, 1.3, 0.7 * ge, p, gs.Mode.Exact)
    ro, to = gs.oracle(cfg, 1.3, 0.7 * ge, p, cells=600)
    assert abs(r - ro) < 1e-8
    assert abs(t - to) < 1e-8


def test_run_spec_produces_csv_and_sidecar():
    csv_text, side = gs.run({"system": "single", "config": "AA", "d": 2, "Delta": {"k": -math.pi / 2}})
    lines = csv_text.splitlines()
    assert lines[0] == gs.csv_header
    assert len(lines) == 402
    assert side["schema"] == 1
    assert max(float(line.split(",")[2]) for line in lines[1:]) < 1e-12


def test_canonical_spec_fills_defaults():
    spec = gs.canonical_spec({"config": "ABAB"})
    assert spec["system"] == "two"
    assert spec["Delta_k"]["units"] == "gamma_e"


def test_bad_input_raises_with_kind():
    with pytest.raises(gs.Error) as info:
        gs.single("AC")
    assert info.value.kind == "SpecError"
    with pytest.raises(gs.Error) as info:
        gs.run({"system": "single", "config": "AA", "pionts": 3})
    assert info.value.kind == "SpecError"
    with pytest.raises(ValueError):
        gs.LatticeParams(1.0, 1.5)
