"""Oracle cross-checks run by ``xxdiscord verify``."""

from dataclasses import dataclass
import math
import sys

import numpy as np
from scipy.optimize import bisect

from .discord import (
    bell_diagonal_state,
    classical_correlation,
    luo_classical_correlation,
    luo_mutual_information,
    mutual_information,
    quantum_discord,
)
from .entanglement import concurrence_general, concurrence_x_state, disentanglement_boundary
from .monogamy import equality_condition_check, report_from_ab
from .sweep import preset, run_sweep
from .xxchain import ModelParams, thermal_state

# reference values the checks report against: the zero-concurrence field
# window at T = 1.5 and the zero-field critical temperature
QUOTED_FIELD_WINDOW = 1.1456
QUOTED_CRITICAL_T = 1.1346

TOLERANCES = {
    "concurrence_closed_form": 1e-10,
    "luo_cc": 1e-6,
    "luo_mi": 1e-9,
    "equal_pair_qd_cc": 1e-6,
    "pairing_condition": 1e-6,
    "critical_t": 2e-4,
    "field_window": 1e-6,
}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str
    mandatory: bool = True

    def line(self):
        status = "PASS" if self.passed else ("FAIL" if self.mandatory else "INFO")
        return f"[{status}] {self.name}: {self.detail}"


def random_bell_triples(n, rng):
    """Uniform triples from the tetrahedron of valid Bell-diagonal states."""
    out = []
    while len(out) < n:
        c = rng.uniform(-1.0, 1.0, size=3)
        w = (1 - c[0] - c[1] - c[2], 1 - c[0] + c[1] + c[2], 1 + c[0] - c[1] + c[2], 1 + c[0] + c[1] - c[2])
        if min(w) >= 0:
            out.append(tuple(float(x) for x in c))
    return out


def equal_pair_triples(n, rng):
    """Triples (c, c, -c**2) in random order, c uniform in [-1, 1]."""
    out = []
    for c in rng.uniform(-1.0, 1.0, size=n):
        triple = [c, c, -c * c]
        k = rng.integers(3)
        triple[2], triple[k] = triple[k], triple[2]
        out.append(tuple(float(x) for x in triple))
    return out


def field_window_oracle(t=1.5, j=1.0):
    """B* with sinh(D/T) = D/|J| and D = sqrt(4 B*^2 + J^2), by plain bisection in D."""
    d = bisect(lambda d: math.sinh(d / t) - d / abs(j), abs(j) * (1 + 1e-12), 50.0, xtol=1e-14)
    return 0.5 * math.sqrt(d * d - j * j)


def check_concurrence(tol, quick):
    n_b, n_t = (7, 5) if quick else (21, 11)
    worst = 0.0
    for b1 in np.linspace(-3, 3, n_b):
        for b2 in np.linspace(-3, 3, n_b):
            for t in np.linspace(0.1, 3, n_t):
                ts = thermal_state(ModelParams(1.0, float(b1), float(b2), float(t)))
                worst = max(worst, abs(concurrence_general(ts.rho).concurrence - concurrence_x_state(ts)))
    return Check("closed-form vs spin-flip concurrence", worst <= tol, f"max diff {worst:.3e} (tol {tol:g})")


def check_luo(tol_cc, tol_mi, quick, rng):
    worst_cc = worst_mi = 0.0
    for c in random_bell_triples(50 if quick else 1000, rng):
        rho = bell_diagonal_state(*c)
        cc, _ = classical_correlation(rho)
        worst_cc = max(worst_cc, abs(cc - luo_classical_correlation(*c)))
        worst_mi = max(worst_mi, abs(mutual_information(rho) - luo_mutual_information(*c)))
    return [
        Check("Bell-diagonal CC vs closed form", worst_cc <= tol_cc, f"max diff {worst_cc:.3e} (tol {tol_cc:g})"),
        Check("Bell-diagonal I vs closed form", worst_mi <= tol_mi, f"max diff {worst_mi:.3e} (tol {tol_mi:g})"),
    ]


def check_equal_pair(tol, quick, rng):
    worst = 0.0
    for c in equal_pair_triples(50 if quick else 1000, rng):
        s = quantum_discord(bell_diagonal_state(*c))
        worst = max(worst, abs(s.discord - s.classical_corr))
    return Check("QD = CC on (c, c, -c^2) triples", worst <= tol, f"max |QD-CC| {worst:.3e} (tol {tol:g})")


def check_pairing_condition(tol, quick):
    disagreements = total = 0
    for name in ("fig12", "fig13", "fig6"):
        for spec in preset(name, quick=quick):
            for row in run_sweep(spec):
                r = report_from_ab(row["s_a"], row["mutual_info"], row["eof"], row["discord"], row["classical_corr"])
                a, b = equality_condition_check(r, tol)
                total += 1
                disagreements += a != b
    return Check(
        "QD=CC iff half I = EN_AE + EN_AB - QD_AE",
        disagreements == 0,
        f"{disagreements} disagreements on {total} points (tol {tol:g})",
    )


def check_boundaries(tol_t, tol_b):
    tc = disentanglement_boundary(ModelParams(1.0, 0.0, 0.0, 1.0), "temperature", tol=1e-12)
    exact = 1.0 / math.asinh(1.0)
    checks = [
        Check(
            "critical temperature at zero field",
            tc is not None and abs(tc - QUOTED_CRITICAL_T) <= tol_t and abs(tc - exact) <= 1e-9,
            f"T_c = {tc:.8f}, 1/asinh(1) = {exact:.8f}, quoted {QUOTED_CRITICAL_T}",
        )
    ]
    b_star = disentanglement_boundary(ModelParams(1.0, 0.0, 0.0, 1.5), "b1", b2_of_b1=lambda b: -b, tol=1e-12)
    oracle = field_window_oracle(1.5)
    checks.append(
        Check(
            "zero-concurrence field window at T=1.5",
            b_star is not None and abs(b_star - oracle) <= tol_b,
            f"solver {b_star:.8f}, bisection oracle {oracle:.8f} (tol {tol_b:g})",
        )
    )
    checks.append(
        Check(
            "quoted field window",
            abs(b_star - QUOTED_FIELD_WINDOW) <= tol_b,
            f"quoted {QUOTED_FIELD_WINDOW} differs from computed {b_star:.6f} by {QUOTED_FIELD_WINDOW - b_star:+.4f}",
            mandatory=False,
        )
    )
    return checks


def verify(quick=False, tolerances=None, stream=None, seed=12345):
    """Run every check, print one line each, and return (all_mandatory_passed, checks)."""
    stream = stream if stream is not None else sys.stdout
    tol = dict(TOLERANCES)
    tol.update(tolerances or {})
    rng = np.random.default_rng(seed)
    checks = [check_concurrence(tol["concurrence_closed_form"], quick)]
    checks += check_luo(tol["luo_cc"], tol["luo_mi"], quick, rng)
    checks.append(check_equal_pair(tol["equal_pair_qd_cc"], quick, rng))
    checks.append(check_pairing_condition(tol["pairing_condition"], quick))
    checks += check_boundaries(tol["critical_t"], tol["field_window"])
    for c in checks:
        print(c.line(), file=stream)
    ok = all(c.passed for c in checks if c.mandatory)
    print("verification " + ("passed" if ok else "FAILED"), file=stream)
    return ok, checks
