"""Two-qubit XX Heisenberg chain with independent longitudinal fields.

The Hamiltonian in the basis |00>, |01>, |10>, |11> is::

    [[-(B1+B2), 0,         0,        0      ],
     [0,        -(B1-B2),  J,        0      ],
     [0,        J,         (B1-B2),  0      ],
     [0,        0,         0,        (B1+B2)]]

with eigenvalues -(B1+B2), (B1+B2) and +-D, D = sqrt((B1-B2)**2 + J**2).
Energies are in units where k_B = 1.
"""

from dataclasses import dataclass

import numpy as np

from .linalg2q import SpectralDecomposition

DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class ModelParams:
    """Coupling J, fields b1 and b2 on qubits A and B, and temperature."""

    j: float = 1.0
    b1: float = 0.0
    b2: float = 0.0
    temperature: float = 1.0

    def __post_init__(self):
        if not self.j:
            raise ValueError("coupling j must be nonzero")
        if not self.temperature > 0:
            raise ValueError(f"temperature must be positive, got {self.temperature!r}")

    @property
    def gap(self):
        return float(np.hypot(self.b1 - self.b2, self.j))


@dataclass(frozen=True)
class ThermalState:
    """Gibbs state together with its closed-form X-state coefficients.

    ``u1, u2, w1, w2, v, z`` all carry a common factor exp(E_min / T) relative
    to the textbook Boltzmann weights so they never overflow; every ratio
    between them, and therefore ``rho``, is unaffected.
    """

    params: ModelParams
    rho: np.ndarray
    u1: float
    u2: float
    w1: float
    w2: float
    v: float
    z: float
    d: float
    e_min: float

    @property
    def log_scale(self):
        """log of the factor removed from the weights: E_min / T."""
        return self.e_min / self.params.temperature


def hamiltonian(p):
    s = p.b1 + p.b2
    b = p.b1 - p.b2
    h = np.zeros((4, 4), dtype=complex)
    h[0, 0] = -s
    h[1, 1] = -b
    h[2, 2] = b
    h[3, 3] = s
    h[1, 2] = h[2, 1] = p.j
    return h


def _one_minus_ratio(b, d, j):
    # 1 - b/d without cancellation when |b| >> |j|
    if b > 0:
        return j * j / (d * (d + b))
    return 1.0 - b / d


def _one_plus_ratio(b, d, j):
    if b < 0:
        return j * j / (d * (d - b))
    return 1.0 + b / d


def psi_plus_minus(p):
    """Normalized |psi+> and |psi-> with amplitude ratio ((B1-B2) +- D)/J on |10>."""
    b = p.b1 - p.b2
    d = p.gap
    out = []
    for sign in (1.0, -1.0):
        # the two closed forms of the ratio are equal; pick the one without cancellation
        num = b + sign * d
        if abs(num) < 0.5 * d:
            ratio = -p.j / (b - sign * d)
        else:
            ratio = num / p.j
        vec = np.array([0.0, 1.0, ratio, 0.0], dtype=complex)
        out.append(vec / np.linalg.norm(vec))
    return out[0], out[1]


def eigensystem(p):
    """Closed-form spectrum, ascending, with eigenvectors as columns.

    Degenerate levels are ordered |psi->, |00>, |11>, |psi+>.
    """
    s = p.b1 + p.b2
    d = p.gap
    psi_p, psi_m = psi_plus_minus(p)
    ket00 = np.array([1, 0, 0, 0], dtype=complex)
    ket11 = np.array([0, 0, 0, 1], dtype=complex)
    levels = [(-d, 0, psi_m), (-s, 1, ket00), (s, 2, ket11), (d, 3, psi_p)]
    levels.sort(key=lambda t: (t[0], t[1]))
    return SpectralDecomposition(
        np.array([e for e, _, _ in levels]),
        np.column_stack([vec for _, _, vec in levels]),
    )


def ground_energy(p):
    return min(-abs(p.b1 + p.b2), -p.gap)


def thermal_state(p):
    """Gibbs state exp(-H/T)/Z built from the closed-form coefficients."""
    t = p.temperature
    s = p.b1 + p.b2
    b = p.b1 - p.b2
    d = p.gap
    e_min = ground_energy(p)
    # every exponent below is <= 0
    e_lo = np.exp((e_min + d) / t)
    e_hi = np.exp((e_min - d) / t)
    u1 = float(np.exp((e_min + s) / t))
    u2 = float(np.exp((e_min - s) / t))
    w1 = 0.5 * (_one_plus_ratio(b, d, p.j) * e_lo + _one_minus_ratio(b, d, p.j) * e_hi)
    w2 = 0.5 * (_one_minus_ratio(b, d, p.j) * e_lo + _one_plus_ratio(b, d, p.j) * e_hi)
    v = -0.5 * (p.j / d) * (e_lo - e_hi)
    z = u1 + u2 + w1 + w2
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = u1 / z
    rho[1, 1] = w1 / z
    rho[2, 2] = w2 / z
    rho[3, 3] = u2 / z
    rho[1, 2] = rho[2, 1] = v / z
    return ThermalState(p, rho, u1, u2, float(w1), float(w2), float(v), float(z), d, e_min)


def gibbs_state(h, temperature):
    """exp(-H/T)/Z for any Hermitian H by eigendecomposition, shifted by E_min."""
    if not temperature > 0:
        raise ValueError(f"temperature must be positive, got {temperature!r}")
    w, vecs = np.linalg.eigh(h)
    weights = np.exp(-(w - w[0]) / temperature)
    weights /= weights.sum()
    return (vecs * weights) @ vecs.conj().T


def ground_state_limit(j=1.0, b1=0.0, b2=0.0):
    """Zero-temperature limit: uniform mixture over the ground manifold."""
    p = ModelParams(j=j, b1=b1, b2=b2, temperature=1.0)
    spec = eigensystem(p)
    e0 = spec.eigenvalues[0]
    idx = np.flatnonzero(spec.eigenvalues - e0 <= DEGENERACY_TOL)
    vecs = spec.eigenvectors[:, idx]
    return vecs @ vecs.conj().T / len(idx)
