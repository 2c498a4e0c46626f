import cmath
import math

import numpy as np
import pytest

import sshqed


def test_winding_signs():
    assert sshqed.winding_number(-0.5) == 1
    assert sshqed.winding_number(0.5) == 0


def test_closed_form_matches_pipeline():
    m = sshqed.model("A", delta=0.5, omega_rabi=0.1)
    p = sshqed.scatter(m, 1.52)
    assert abs(p["t"] - p["tL"]) < 1e-10
    assert abs(abs(p["t"]) ** 2 + abs(p["r"]) ** 2 - 1) < 1e-12


def test_lattice_agrees():
    m = sshqed.model("AB", delta=-0.5, omega_rabi=0.05, x1=20)
    t, r, res = sshqed.lattice_solve(m, 1.51, 40)
    assert abs(t - sshqed.transmission(m, 1.51)) < 1e-10
    assert res < 1e-10


def test_spectrum_arrays():
    m = sshqed.model("B", delta=0.5, omega_rabi=0.2)
    dk = np.linspace(-0.3, 0.3, 301)
    s = sshqed.spectrum(m, dk)
    assert s["T"].shape == (301 - s["skipped"],)
    assert np.all(np.abs(s["T"] + s["R"] - 1) < 1e-12)
    dips = [f for f in sshqed.features(s["delta_k"], s["T"]) if f["kind"] == "dip"]
    assert len(dips) == 2
    assert dips[0]["position"] == pytest.approx(-0.1, abs=2e-3)
    assert dips[1]["position"] == pytest.approx(0.1, abs=2e-3)


def test_regime_and_poles():
    m = sshqed.model("A", delta=0.5, omega_rabi=0.0)
    k = math.pi / 2
    label, ratio = sshqed.classify_regime(m, k)
    assert label == "lorentzian" and ratio == 0
    pp, pm = sshqed.poles(m, k)
    assert pp.imag >= 0 and pm.imag >= 0


def test_validation_error():
    with pytest.raises(sshqed.ValidationError):
        sshqed.model("A", delta=1.5)
    with pytest.raises(sshqed.Error):
        sshqed.model("C")
