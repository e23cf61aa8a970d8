"""Concurrence and entanglement of formation for two-qubit states."""

from dataclasses import dataclass, replace

import numpy as np

from .linalg2q import SIGMA_Y, check_state
from .xxchain import thermal_state

SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)
CONCURRENCE_TOL = 1e-12


@dataclass(frozen=True)
class EntanglementResult:
    concurrence: float
    eof: float
    spin_flip_roots: tuple


def binary_entropy(x):
    """h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))


def eof_from_concurrence(c):
    """Entanglement of formation, in bits, of a two-qubit state with concurrence c."""
    if c < -CONCURRENCE_TOL or c > 1.0 + CONCURRENCE_TOL:
        raise ValueError(f"concurrence must lie in [0, 1], got {c!r}")
    c = min(max(c, 0.0), 1.0)
    if c == 0.0:
        return 0.0
    # (1 - sqrt(1-c^2))/2 written without cancellation for small c
    small = 0.5 * c * c / (1.0 + np.sqrt(1.0 - c * c))
    return binary_entropy(small)


def spin_flip_roots(rho):
    """The λ_i of ρ ρ̃ (square roots of its eigenvalues), descending.

    With ρ = L L† the λ_i are the singular values of Lᵀ (σy⊗σy) L, which keeps
    small λ_i accurate to machine precision where the eigenvalues of ρ ρ̃
    themselves would only resolve them to about 1e-8.
    """
    w, v = np.linalg.eigh(rho)
    factor = v * np.sqrt(np.clip(w, 0.0, None))
    tau = factor.T @ SPIN_FLIP @ factor
    return np.linalg.svd(tau, compute_uv=False)


def concurrence_general(rho):
    """Concurrence and EOF of an arbitrary two-qubit density matrix."""
    rho = check_state(np.asarray(rho, dtype=complex))
    if rho.shape != (4, 4):
        raise ValueError("concurrence needs a two-qubit (4x4) state")
    lam = spin_flip_roots(rho)
    c = max(lam[0] - lam[1] - lam[2] - lam[3], 0.0)
    c = min(float(c), 1.0)
    return EntanglementResult(c, eof_from_concurrence(c), tuple(float(x) for x in lam))


def concurrence_x_state(ts):
    """Closed form (2/Z) max(|v| - sqrt(u1 u2), 0) for the thermal X state."""
    return float(2.0 / ts.z * max(abs(ts.v) - np.sqrt(ts.u1 * ts.u2), 0.0))


def concurrence_margin(p):
    """log|v| - log sqrt(u1 u2); positive exactly when the thermal state is entangled.

    Evaluated in log space so it stays finite at very low temperature.
    """
    d = p.gap
    x = d / p.temperature
    # log sinh(x) = x + log1p(-exp(-2x)) - log 2
    log_sinh = x + np.log1p(-np.exp(-2.0 * x)) - np.log(2.0)
    # u1 u2 = 1 before rescaling, so log sqrt(u1 u2) = 0
    return float(np.log(abs(p.j) / d) + log_sinh)


DEFAULT_BRACKETS = {"temperature": (1e-3, 50.0), "b1": (0.0, 20.0)}


def disentanglement_boundary(p, free, *, b2_of_b1=None, interval=None, tol=1e-8, max_iter=200):
    """Locate where the thermal concurrence first vanishes, by bisection.

    Parameters
    ----------
    p : ModelParams
        Fixed parameters; the coordinate named by ``free`` is overwritten.
    free : {"temperature", "b1"}
        Coordinate to solve for.
    b2_of_b1 : callable, optional
        When ``free == "b1"``, maps b1 to b2 (e.g. ``lambda b: -b``). Defaults
        to holding ``p.b2`` fixed.
    interval : (lo, hi), optional
        Search bracket. Defaults to [1e-3, 50] for temperature and [0, 20]
        for the field.

    Returns
    -------
    float or None
        Root of |v| = sqrt(u1 u2) to within ``tol``, or None if the margin does
        not change sign on the interval.
    """
    if free not in DEFAULT_BRACKETS:
        raise ValueError(f"free must be 'temperature' or 'b1', got {free!r}")
    lo, hi = interval if interval is not None else DEFAULT_BRACKETS[free]
    if not lo < hi or (free == "temperature" and lo <= 0):
        raise ValueError(f"invalid interval ({lo!r}, {hi!r})")

    def margin(x):
        if free == "temperature":
            q = replace(p, temperature=x)
        else:
            b2 = b2_of_b1(x) if b2_of_b1 is not None else p.b2
            q = replace(p, b1=x, b2=b2)
        return concurrence_margin(q)

    f_lo, f_hi = margin(lo), margin(hi)
    if f_lo == 0.0:
        return float(lo)
    if f_hi == 0.0:
        return float(hi)
    if np.sign(f_lo) == np.sign(f_hi):
        return None
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = margin(mid)
        if f_mid == 0.0:
            return float(mid)
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    return float(0.5 * (lo + hi))


def thermal_entanglement(p):
    return concurrence_general(thermal_state(p).rho)

