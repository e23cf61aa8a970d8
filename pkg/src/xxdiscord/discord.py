"""Mutual information, classical correlation and quantum discord of two qubits.

Classical correlation is maximized over rank-one projective measurements on
one qubit, parametrized by the Bloch direction n(theta, phi) of the "+"
projector (I + n.sigma)/2.
"""

from dataclasses import dataclass
from itertools import permutations
import math

import numpy as np
from scipy.optimize import minimize

from .linalg2q import (
    IDENTITY2,
    PAULIS,
    QUBIT_A,
    QUBIT_B,
    check_state,
    partial_trace,
    shannon_bits,
    von_neumann_entropy,
)

PROB_CUTOFF = 1e-14
OPTIMIZER_TOL = 1e-7
CONDITION_TOL = 1e-9
GRID_THETA = 64
GRID_PHI = 128
N_REFINE = 3


@dataclass(frozen=True)
class Measurement:
    theta: float
    phi: float
    side: str = QUBIT_B

    def __post_init__(self):
        if self.side not in (QUBIT_A, QUBIT_B):
            raise ValueError(f"side must be 'A' or 'B', got {self.side!r}")

    @property
    def direction(self):
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)])

    def projectors(self):
        """Single-qubit projectors (Pi_plus, Pi_minus)."""
        ns = sum(c * s for c, s in zip(self.direction, PAULIS))
        return 0.5 * (IDENTITY2 + ns), 0.5 * (IDENTITY2 - ns)

    def canonical(self):
        """Same measurement with theta in [0, pi] and phi in [0, 2 pi)."""
        n = self.direction
        theta = float(np.arccos(np.clip(n[2], -1.0, 1.0)))
        phi = float(np.arctan2(n[1], n[0]) % (2 * np.pi))
        return Measurement(theta, phi, self.side)


@dataclass(frozen=True)
class BlochDecomposition:
    r: np.ndarray
    s: np.ndarray
    corr: np.ndarray

    def reconstruct(self):
        rho = np.kron(IDENTITY2, IDENTITY2).astype(complex)
        for i, si in enumerate(PAULIS):
            rho += self.r[i] * np.kron(si, IDENTITY2) + self.s[i] * np.kron(IDENTITY2, si)
            for j, sj in enumerate(PAULIS):
                rho += self.corr[i, j] * np.kron(si, sj)
        return rho / 4


@dataclass(frozen=True)
class CorrelationSummary:
    mutual_info: float
    classical_corr: float
    discord: float
    optimal_measurement: Measurement
    entropy_a: float
    entropy_b: float
    entropy_ab: float


def bloch_decomposition(rho):
    rho = check_state(rho)
    r = np.array([np.trace(rho @ np.kron(s, IDENTITY2)).real for s in PAULIS])
    s = np.array([np.trace(rho @ np.kron(IDENTITY2, s)).real for s in PAULIS])
    corr = np.array([[np.trace(rho @ np.kron(a, b)).real for b in PAULIS] for a in PAULIS])
    return BlochDecomposition(r, s, corr)


def bell_diagonal_state(c1, c2, c3):
    """(1/4)[I + sum_i c_i sigma_i x sigma_i]."""
    check_bell_diagonal(c1, c2, c3)
    rho = np.eye(4, dtype=complex)
    for c, s in zip((c1, c2, c3), PAULIS):
        rho = rho + c * np.kron(s, s)
    return rho / 4


def entropies(rho):
    """(S_A, S_B, S_AB) in bits."""
    rho = check_state(rho)
    return (
        von_neumann_entropy(partial_trace(rho, QUBIT_A)),
        von_neumann_entropy(partial_trace(rho, QUBIT_B)),
        von_neumann_entropy(rho),
    )


def mutual_information(rho):
    s_a, s_b, s_ab = entropies(rho)
    return s_a + s_b - s_ab


def conditional_entropy(rho, m):
    """Average entropy of the unmeasured qubit after measuring ``m.side``."""
    rho = check_state(rho)
    total = 0.0
    for proj in m.projectors():
        op = np.kron(IDENTITY2, proj) if m.side == QUBIT_B else np.kron(proj, IDENTITY2)
        post = op @ rho @ op
        p = np.trace(post).real
        if p < PROB_CUTOFF:
            continue
        total += p * von_neumann_entropy(post / p)
    return total


def _qubit_entropy(length):
    # entropy of a qubit whose Bloch vector has the given length, vectorized
    x = np.clip(length, 0.0, 1.0)
    lo = 0.5 * (1.0 - x)
    hi = 0.5 * (1.0 + x)
    with np.errstate(divide="ignore", invalid="ignore"):
        t_lo = np.where(lo > 0, -lo * np.log2(np.where(lo > 0, lo, 1.0)), 0.0)
        t_hi = -hi * np.log2(hi)
    return t_lo + t_hi


def _conditional_entropy_bloch(bloch_other, bloch_measured, corr, n):
    """Vectorized conditional entropy for unit directions ``n`` of shape (3, N).

    ``corr`` is indexed [unmeasured, measured].
    """
    sn = bloch_measured @ n
    cn = corr @ n
    total = np.zeros(n.shape[1])
    for sign in (1.0, -1.0):
        q = 1.0 + sign * sn
        p = 0.5 * q
        ok = p >= PROB_CUTOFF
        vec = bloch_other[:, None] + sign * cn
        length = np.linalg.norm(vec, axis=0) / np.where(ok, q, 1.0)
        total += np.where(ok, p * _qubit_entropy(length), 0.0)
    return total


def _qubit_entropy_scalar(x):
    x = min(max(x, 0.0), 1.0)
    lo = 0.5 * (1.0 - x)
    hi = 0.5 * (1.0 + x)
    out = -hi * math.log2(hi)
    if lo > 0.0:
        out -= lo * math.log2(lo)
    return out


def _conditional_entropy_scalar(bloch_other, bloch_measured, corr, theta, phi):
    # same quantity as _conditional_entropy_bloch for one direction, without numpy overhead
    st = math.sin(theta)
    n = (st * math.cos(phi), st * math.sin(phi), math.cos(theta))
    sn = sum(bloch_measured[k] * n[k] for k in range(3))
    cn = [sum(corr[i][k] * n[k] for k in range(3)) for i in range(3)]
    total = 0.0
    for sign in (1.0, -1.0):
        q = 1.0 + sign * sn
        if 0.5 * q < PROB_CUTOFF:
            continue
        length = math.sqrt(sum((bloch_other[i] + sign * cn[i]) ** 2 for i in range(3))) / q
        total += 0.5 * q * _qubit_entropy_scalar(length)
    return total


def _directions(theta, phi):
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def _side_data(rho, side):
    b = bloch_decomposition(rho)
    if side == QUBIT_B:
        return b.r, b.s, b.corr, partial_trace(rho, QUBIT_A)
    if side == QUBIT_A:
        return b.s, b.r, b.corr.T, partial_trace(rho, QUBIT_B)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def measurement_grid(n_theta=GRID_THETA, n_phi=GRID_PHI):
    """Coarse (theta, phi) grid over the upper half sphere, flattened."""
    theta = np.linspace(0.0, 0.5 * np.pi, n_theta)
    phi = np.arange(n_phi) * (2 * np.pi / n_phi)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    return tt.ravel(), pp.ravel()


def classical_correlation(rho, side=QUBIT_B, *, n_theta=GRID_THETA, n_phi=GRID_PHI, n_refine=N_REFINE):
    """Maximal information gain about one qubit from measuring the other.

    A coarse grid over the half sphere (antipodal directions give the same
    projector pair) seeds Nelder-Mead refinements from the ``n_refine`` best
    grid points. The returned value is recomputed at the returned measurement
    with the dense projector formula.

    Returns
    -------
    (float, Measurement)
    """
    rho = check_state(rho)
    other, measured, corr, rho_other = _side_data(rho, side)
    s_other = von_neumann_entropy(rho_other)

    theta, phi = measurement_grid(n_theta, n_phi)
    cond = _conditional_entropy_bloch(other, measured, corr, _directions(theta, phi))
    # lowest conditional entropy first; ties by smallest theta, then smallest phi
    order = np.lexsort((phi, theta, cond))

    other_l, measured_l, corr_l = other.tolist(), measured.tolist(), corr.tolist()

    def objective(x):
        return _conditional_entropy_scalar(other_l, measured_l, corr_l, x[0], x[1])

    step_t = 0.5 * np.pi / max(n_theta - 1, 1)
    step_p = 2 * np.pi / n_phi
    candidates = [(theta[order[0]], phi[order[0]])]
    for k in order[:n_refine]:
        x0 = np.array([theta[k], phi[k]])
        simplex = np.array([x0, x0 + [step_t, 0.0], x0 + [0.0, step_p]])
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"initial_simplex": simplex, "xatol": 1e-9, "fatol": 1e-13, "maxiter": 2000},
        )
        candidates.append((res.x[0], res.x[1]))

    best_val, best_m = -np.inf, None
    for t, p in candidates:
        m = Measurement(float(t), float(p), side).canonical()
        val = s_other - conditional_entropy(rho, m)
        if val > best_val:
            best_val, best_m = val, m
    return float(best_val), best_m


def quantum_discord(rho, side=QUBIT_B, **grid):
    """Mutual information, classical correlation and discord for ``rho``."""
    rho = check_state(rho)
    s_a, s_b, s_ab = entropies(rho)
    mi = s_a + s_b - s_ab
    cc, m = classical_correlation(rho, side, **grid)
    qd = mi - cc
    if -OPTIMIZER_TOL < qd < 0.0:
        qd = 0.0
    return CorrelationSummary(mi, cc, qd, m, s_a, s_b, s_ab)


def _bell_weights(c1, c2, c3):
    return np.array(
        [
            1 - c1 - c2 - c3,
            1 - c1 + c2 + c3,
            1 + c1 - c2 + c3,
            1 + c1 + c2 - c3,
        ]
    )


def check_bell_diagonal(c1, c2, c3, tol=1e-12):
    w = _bell_weights(c1, c2, c3)
    if np.any(w < -tol):
        raise ValueError(f"({c1}, {c2}, {c3}) is not a valid Bell-diagonal triple")
    return np.clip(w, 0.0, None)


def luo_mutual_information(c1, c2, c3):
    """Closed-form mutual information of a Bell-diagonal state, in bits."""
    w = check_bell_diagonal(c1, c2, c3)
    nz = w[w > 0]
    return float(0.25 * np.sum(nz * np.log2(nz)))


def luo_classical_correlation(c1, c2, c3):
    """Closed-form classical correlation: h-type function of max |c_i|."""
    check_bell_diagonal(c1, c2, c3)
    c = max(abs(c1), abs(c2), abs(c3))
    return 1.0 - shannon_bits([0.5 * (1 - c), 0.5 * (1 + c)])


def qd_equals_cc_condition(c1, c2, c3, *, strict_order=False, tol=CONDITION_TOL):
    """True when two coefficients are equal, c_i, and the third is -c_i**2.

    Those equalities alone give I = 2 CC for Bell-diagonal states. With
    ``strict_order`` the ordering c_i > c_k is required as well, which rules
    out every negative c_i (including the zero-field thermal state). The
    triple is not required to be a valid state.
    """
    for ci, cj, ck in permutations((c1, c2, c3)):
        if abs(ci - cj) > tol or abs(ck + ci * ci) > tol:
            continue
        if strict_order and not ck < ci:
            continue
        return True
    return False
