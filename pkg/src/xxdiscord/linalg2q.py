"""Dense linear algebra for one- and two-qubit operators.

Matrices are plain ``numpy`` complex arrays of shape (2, 2) or (4, 4). The
two-qubit basis order is |00>, |01>, |10>, |11> with qubit A the left factor.
"""

from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
# negative eigenvalues down to -NEGATIVE_TOL are roundoff and clamp to zero
NEGATIVE_TOL = 1e-10

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

QUBIT_A = "A"
QUBIT_B = "B"


class NotAStateError(ValueError):
    """Raised when a matrix is not a valid density operator."""


class SpectralDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_operator(m, dims=(2, 4)):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in dims:
        raise ValueError(f"expected a square matrix of dimension {dims}, got shape {m.shape}")
    return m


def is_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def check_hermitian(m, tol=HERMITIAN_TOL):
    m = as_operator(m)
    if not is_hermitian(m, tol):
        raise ValueError("matrix is not Hermitian")
    return m


def kron(a, b):
    """Tensor product of two single-qubit operators (a acts on qubit A)."""
    a = as_operator(a, dims=(2,))
    b = as_operator(b, dims=(2,))
    return np.kron(a, b)


def partial_trace(rho, keep=QUBIT_A):
    """Reduced operator of the kept qubit of a two-qubit operator."""
    rho = check_hermitian(as_operator(rho, dims=(4,)))
    t = rho.reshape(2, 2, 2, 2)
    if keep == QUBIT_A:
        return np.einsum("ijkj->ik", t)
    if keep == QUBIT_B:
        return np.einsum("jijk->ik", t)
    raise ValueError(f"keep must be {QUBIT_A!r} or {QUBIT_B!r}, got {keep!r}")


def _normalize_phases(vecs):
    # first non-negligible component of every eigenvector made real positive
    out = vecs.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        if idx.size:
            z = col[idx[0]]
            out[:, k] = col * (abs(z) / z)
    return out


def eig_hermitian(m):
    """Ascending eigenvalues and orthonormal eigenvectors of a Hermitian matrix.

    Eigenvector phases are fixed so the output is deterministic: the first
    component with modulus above 1e-12 is real and positive.
    """
    m = check_hermitian(m)
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return SpectralDecomposition(w, _normalize_phases(v))


def state_eigenvalues(rho):
    """Clamped spectrum of a density operator, validating positivity."""
    w = np.linalg.eigvalsh(check_hermitian(rho))
    if w[0] < -NEGATIVE_TOL:
        raise NotAStateError(f"negative eigenvalue {w[0]:.3e}")
    return np.clip(w, 0.0, None)


def check_state(rho):
    """Validate Hermiticity, unit trace and positivity; return the array."""
    rho = as_operator(rho)
    if not is_hermitian(rho):
        raise NotAStateError("density operator is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise NotAStateError(f"trace is {tr!r}, expected 1")
    state_eigenvalues(rho)
    return rho


def shannon_bits(p):
    """Shannon entropy in bits with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float)
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz))) + 0.0


def von_neumann_entropy(rho):
    """S(rho) = -Tr rho log2 rho in bits."""
    rho = as_operator(rho)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise NotAStateError(f"trace is {tr!r}, expected 1")
    return shannon_bits(state_eigenvalues(rho))


def random_unitary(dim, rng):
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
