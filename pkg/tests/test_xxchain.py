import mpmath as mp
import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from xxdiscord.linalg2q import SIGMA_X, eig_hermitian
from xxdiscord.xxchain import (
    ModelParams,
    eigensystem,
    gibbs_state,
    ground_state_limit,
    hamiltonian,
    thermal_state,
)

SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
FLIP = np.kron(SIGMA_X, SIGMA_X)
KET00 = np.array([1, 0, 0, 0], dtype=complex)


def ket(*amps):
    v = np.array(amps, dtype=complex)
    return v / np.linalg.norm(v)


def proj(v):
    return np.outer(v, v.conj())


def mp_thermal(j, b1, b2, t, dps=50):
    """Thermal X-state coefficients written out directly, in high precision (no overflow)."""
    with mp.workdps(dps):
        j, b1, b2, t = (mp.mpf(x) for x in (j, b1, b2, t))
        d = mp.sqrt((b1 - b2) ** 2 + j**2)
        u1 = mp.e ** ((b1 + b2) / t)
        u2 = mp.e ** (-(b1 + b2) / t)
        w1 = mp.cosh(d / t) + (b1 - b2) / d * mp.sinh(d / t)
        w2 = mp.cosh(d / t) - (b1 - b2) / d * mp.sinh(d / t)
        v = -j * mp.sinh(d / t) / d
        z = u1 + u2 + w1 + w2
        rho = np.zeros((4, 4))
        rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = (float(x / z) for x in (u1, w1, w2, u2))
        rho[1, 2] = rho[2, 1] = float(v / z)
        return rho


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(j=0.0)
    with pytest.raises(ValueError):
        ModelParams(temperature=0.0)
    with pytest.raises(ValueError):
        ModelParams(temperature=-1.0)


def test_hamiltonian_matrix_layout():
    h = hamiltonian(ModelParams(0.7, 1.3, -0.4, 1.0))
    expected = np.array(
        [[-0.9, 0, 0, 0], [0, -1.7, 0.7, 0], [0, 0.7, 1.7, 0], [0, 0, 0, 0.9]],
    )
    assert np.allclose(h, expected, atol=1e-15)


def test_zero_field_spectrum():
    p = ModelParams(1.0, 0.0, 0.0, 1.0)
    spec = eigensystem(p)
    assert np.allclose(spec.eigenvalues, [-1, 0, 0, 1], atol=1e-15)
    singlet, triplet0 = ket(0, 1, -1, 0), ket(0, 1, 1, 0)
    assert np.allclose(spec.eigenvectors[:, 0], singlet, atol=1e-15)
    assert np.allclose(spec.eigenvectors[:, 1], KET00, atol=1e-15)
    assert np.allclose(spec.eigenvectors[:, 3], triplet0, atol=1e-15)


def test_staggered_field_gap():
    spec = eigensystem(ModelParams(1.0, 2.0, -2.0, 1.0))
    assert spec.eigenvalues[0] == pytest.approx(-np.sqrt(17), abs=1e-14)
    assert spec.eigenvalues[-1] == pytest.approx(np.sqrt(17), abs=1e-14)


def test_uniform_field_spectrum():
    spec = eigensystem(ModelParams(1.0, 3.0, 3.0, 1.0))
    assert np.allclose(spec.eigenvalues, [-6, -1, 1, 6], atol=1e-14)


def test_staggered_ground_state():
    p = ModelParams(1.0, 1.0, -1.0, 1.0)
    spec = eigensystem(p)
    assert spec.eigenvalues[0] == pytest.approx(-np.sqrt(5), abs=1e-14)
    # |psi-> has |10> amplitude ratio ((B1-B2) - D)/J = 2 - sqrt(5)
    assert np.allclose(spec.eigenvectors[:, 0], ket(0, 1, 2 - np.sqrt(5), 0), atol=1e-15)


def test_normalizer_at_zero_field():
    psi = eigensystem(ModelParams(1.0, 0.0, 0.0, 1.0)).eigenvectors[:, 3]
    # N = sqrt(2) means both amplitudes are 1/sqrt(2)
    assert psi[1].real == pytest.approx(1 / np.sqrt(2), abs=1e-15)


def test_strong_uniform_field_ground_state():
    spec = eigensystem(ModelParams(1.0, 5.0, 5.0, 1.0))
    assert spec.eigenvalues[0] == pytest.approx(-10.0)
    assert np.allclose(spec.eigenvectors[:, 0], KET00)


@settings(max_examples=80, deadline=None)
@given(st.floats(0.1, 3) | st.floats(-3, -0.1), st.floats(-8, 8), st.floats(-8, 8))
def test_closed_form_spectrum_matches_numerics(j, b1, b2):
    p = ModelParams(j, b1, b2, 1.0)
    analytic = eigensystem(p)
    numeric = eig_hermitian(hamiltonian(p))
    assert np.max(np.abs(analytic.eigenvalues - numeric.eigenvalues)) <= 1e-10
    h = hamiltonian(p)
    for k in range(4):
        v = analytic.eigenvectors[:, k]
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
        assert np.max(np.abs(h @ v - analytic.eigenvalues[k] * v)) <= 1e-10


def test_infinite_temperature_limit():
    rho = thermal_state(ModelParams(1.0, 1.0, -1.0, 1e6)).rho
    assert np.allclose(np.diag(rho).real, 0.25, atol=1e-5)


def test_staggered_thermal_populations():
    p = ModelParams(1.0, 1.0, -1.0, 1.0)
    ts = thermal_state(p)
    d = np.sqrt(5)
    z = 2 + 2 * np.cosh(d)
    spec = eigensystem(p)
    pops = [np.real(spec.eigenvectors[:, k].conj() @ ts.rho @ spec.eigenvectors[:, k]) for k in range(4)]
    # eigensystem order: psi-, 00, 11, psi+
    assert np.allclose(pops, [np.exp(d) / z, 1 / z, 1 / z, np.exp(-d) / z], atol=1e-14)
    assert ts.z / np.exp(ts.log_scale) == pytest.approx(z, rel=1e-12)


def test_cold_strong_field_is_ferromagnetic():
    rho = thermal_state(ModelParams(1.0, 5.0, 5.0, 0.01)).rho
    assert np.max(np.abs(rho - proj(KET00))) <= 1e-10


@pytest.mark.parametrize(
    "j, b1, b2, t",
    [(1, 0, 0, 1), (1, 1, -1, 0.9), (1, 2, 0.5, 0.3), (0.5, -3, 1, 2.0), (1, 4, 4, 0.05), (-1, 1.5, 0.2, 0.7)],
)
def test_thermal_state_matches_high_precision_formula(j, b1, b2, t):
    ts = thermal_state(ModelParams(j, b1, b2, t))
    assert np.max(np.abs(ts.rho - mp_thermal(j, b1, b2, t))) <= 1e-14


@settings(max_examples=100, deadline=None)
@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(0.05, 20))
def test_thermal_state_invariants(b1, b2, t):
    p = ModelParams(1.0, b1, b2, t)
    ts = thermal_state(p)
    rho = ts.rho
    mask = np.ones((4, 4), dtype=bool)
    for i, k in [(0, 0), (1, 1), (2, 2), (3, 3), (1, 2), (2, 1)]:
        mask[i, k] = False
    assert np.all(rho[mask] == 0)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    assert ts.z == pytest.approx(ts.u1 + ts.u2 + ts.w1 + ts.w2, rel=1e-10)
    assert ts.w1 * ts.w2 - ts.v**2 >= -1e-12
    h = hamiltonian(p)
    assert np.max(np.abs(rho @ h - h @ rho)) <= 1e-10


@settings(max_examples=100, deadline=None)
@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(0.05, 20))
def test_closed_form_agrees_with_gibbs_exponentiation(b1, b2, t):
    p = ModelParams(1.0, b1, b2, t)
    rho = thermal_state(p).rho
    gibbs = gibbs_state(hamiltonian(p), t)
    scale = np.max(np.abs(gibbs))
    assert np.max(np.abs(rho - gibbs)) <= 1e-10 * scale


@pytest.mark.parametrize("b1, b2, t", [(0.3, -0.3, 0.5), (1.0, 2.0, 1.3), (-2.0, 0.0, 2.5)])
def test_closed_form_agrees_with_expm(b1, b2, t):
    p = ModelParams(1.0, b1, b2, t)
    g = scipy.linalg.expm(-hamiltonian(p) / t)
    assert np.max(np.abs(thermal_state(p).rho - g / np.trace(g))) <= 1e-12


@settings(max_examples=50, deadline=None)
@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(0.05, 10), st.floats(-50, 50))
def test_energy_shift_invariance(b1, b2, t, c):
    p = ModelParams(1.0, b1, b2, t)
    h = hamiltonian(p)
    assert np.max(np.abs(gibbs_state(h + c * np.eye(4), t) - gibbs_state(h, t))) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(0.01, 20))
def test_field_reflection_symmetry(b1, b2, t):
    rho = thermal_state(ModelParams(1.0, b1, b2, t)).rho
    flipped = thermal_state(ModelParams(1.0, -b1, -b2, t)).rho
    assert np.max(np.abs(flipped - FLIP @ rho @ FLIP)) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(0.01, 20))
def test_qubit_swap_covariance(b1, b2, t):
    rho = thermal_state(ModelParams(1.0, b1, b2, t)).rho
    swapped = thermal_state(ModelParams(1.0, b2, b1, t)).rho
    assert np.max(np.abs(swapped - SWAP @ rho @ SWAP)) <= 1e-12


def test_low_temperature_survives_large_fields():
    ts = thermal_state(ModelParams(1.0, 10.0, -10.0, 1e-3))
    assert np.all(np.isfinite(ts.rho))
    assert np.isfinite(ts.z) and ts.z > 0


def test_ground_state_limit_examples():
    assert np.allclose(ground_state_limit(1.0, 0.0, 0.0), proj(ket(0, 1, -1, 0)), atol=1e-15)
    crossing = ground_state_limit(1.0, 0.5, 0.5)
    assert np.allclose(crossing, 0.5 * (proj(KET00) + proj(ket(0, 1, -1, 0))), atol=1e-15)
    assert np.allclose(ground_state_limit(1.0, 10.0, 10.0), proj(KET00), atol=1e-15)


@pytest.mark.parametrize("b1, b2", [(0.0, 0.0), (1.0, -1.0), (2.0, 2.0), (0.3, 0.1), (-1.5, 0.7)])
def test_thermal_state_approaches_ground_state(b1, b2):
    rho = thermal_state(ModelParams(1.0, b1, b2, 1e-3)).rho
    assert np.max(np.abs(rho - ground_state_limit(1.0, b1, b2))) <= 1e-6


def test_thermal_state_rejects_nonpositive_temperature():
    with pytest.raises(ValueError):
        thermal_state(ModelParams(1.0, 0.0, 0.0, -0.5))
