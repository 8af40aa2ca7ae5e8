import math

import numpy as np
import pytest

import decomodes as dm

SINGLET = dm.experiment_initial()


def test_singlet_entries():
    expect = np.zeros((4, 4))
    expect[1, 1] = expect[2, 2] = 0.5
    expect[1, 2] = expect[2, 1] = -0.5
    assert np.array_equal(SINGLET, expect)
    assert dm.concurrence(SINGLET) == pytest.approx(1.0, abs=1e-12)
    assert dm.mixedness(dm.maximally_mixed()) == pytest.approx(0.25, abs=1e-15)


def test_mode_a_curve():
    for lt in np.linspace(0, 3.5, 8):
        rho = dm.evolve(SINGLET, "A", 1.0, lt)
        assert dm.mixedness(rho) == pytest.approx(0.5 * (1 + math.exp(-2 * lt)), abs=1e-10)
        assert dm.concurrence(rho) == pytest.approx(math.exp(-lt), abs=1e-10)


def test_mode_b_border_of_separability():
    rho = dm.evolve(SINGLET, "B", 1.0, math.log(3.0))
    report = dm.measure(rho)
    assert report["concurrence"] == pytest.approx(0.0, abs=1e-9)
    assert report["mixedness"] == pytest.approx(1 / 3, abs=1e-12)


def test_integrator_agrees_with_closed_form():
    rho0 = dm.bell_diagonal([0.1, 0.2, 0.3, 0.4])
    for mode in ("A", "B"):
        exact = dm.evolve(rho0, mode, 0.5, 1.0, energies=[1.0, 0.3, 0.0, -0.4])
        numeric = dm.integrate_master(rho0, mode, 0.5, 1.0, energies=[1.0, 0.3, 0.0, -0.4])
        assert np.max(np.abs(exact - numeric)) <= 1e-8


def test_kraus_channel_and_trotter():
    ops = dm.kraus_operators("A", 0.3)
    total = sum(k.conj().T @ k for k in ops)
    assert np.allclose(total, np.eye(4), atol=1e-12)
    out = dm.apply_channel(SINGLET, ops)
    assert out[1, 2].real == pytest.approx(-0.5 * 0.7, abs=1e-15)
    err = np.max(np.abs(dm.trotter_evolve(SINGLET, "B", 1.0, 1.0, 1024) - dm.evolve(SINGLET, "B", 1.0, 1.0)))
    assert err <= 2e-3


def test_ensemble_matches_evolution():
    avg = dm.ensemble_average(SINGLET, "A", 1.0)
    lam = dm.lambda_from_sigma("A", 1.0, 1.0)
    assert lam == pytest.approx(0.25)
    assert np.max(np.abs(avg - dm.evolve(SINGLET, "A", lam, 1.0))) <= 1e-12
    mc = dm.ensemble_monte_carlo(SINGLET, "B", 1.0, 20000, 7)
    dev = np.abs(mc["mean"] - dm.ensemble_average(SINGLET, "B", 1.0))
    assert np.all(dev.real <= 5 * mc["stderr_re"] + 1e-12)
    again = dm.ensemble_monte_carlo(SINGLET, "B", 1.0, 20000, 7)
    assert np.array_equal(mc["mean"], again["mean"])


def test_tomography_round_trip():
    rec = dm.reconstruct_exact(SINGLET)
    assert np.linalg.norm(rec["estimate"] - SINGLET) <= 1e-10
    counts = dm.simulate_counts(SINGLET, 10000, 7)
    assert len(counts) == 9
    est = dm.reconstruct(counts)["estimate"]
    assert np.linalg.norm(est - SINGLET) <= 0.1
    clipped = dm.project_psd(np.diag([1.1, 0.1, -0.1, -0.1]).astype(complex))
    assert np.allclose(clipped, np.diag([1.0, 0, 0, 0]), atol=1e-12)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        dm.evolve(SINGLET, "C", 1.0, 1.0)
    with pytest.raises(dm.ValidationError):
        dm.mixedness(np.eye(4))
    with pytest.raises(dm.UnsupportedError):
        dm.ensemble_average(SINGLET, "B", 1.0, variant="single_field_one_path")
    with pytest.raises(dm.DomainError):
        dm.kraus_operators("A", 2.0)
    assert not dm.validate(np.eye(4))
