"""System-environment bookkeeping for the thermal two-qubit state.

The pair AB is treated as part of a pure state on ABE. No environment state is
ever built: the AE-side quantities are defined from AB-side ones through the
Koashi-Winter relations

    EN_AB + CC_AE = S_A,    EN_AE + CC_AB = S_A,

and the entanglement/discord pairing

    EN_AB + EN_AE = QD_AB + QD_AE,

where CC and QD always measure the second qubit (B, resp. E).
"""

from dataclasses import dataclass

from .discord import quantum_discord
from .entanglement import concurrence_general
from .linalg2q import QUBIT_B
from .xxchain import thermal_state

DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class MonogamyReport:
    s_a: float
    i_ab: float
    en_ab: float
    qd_ab: float
    cc_ab: float
    cc_ae: float
    en_ae: float
    qd_ae: float
    eq17_lhs: float
    eq17_rhs: float


def report_from_ab(s_a, i_ab, en_ab, qd_ab, cc_ab):
    """Derive the environment side from AB-side values."""
    cc_ae = s_a - en_ab
    en_ae = s_a - cc_ab
    qd_ae = en_ab + en_ae - qd_ab
    return MonogamyReport(
        s_a=s_a,
        i_ab=i_ab,
        en_ab=en_ab,
        qd_ab=qd_ab,
        cc_ab=cc_ab,
        cc_ae=cc_ae,
        en_ae=en_ae,
        qd_ae=qd_ae,
        eq17_lhs=0.5 * i_ab,
        eq17_rhs=en_ae + en_ab - qd_ae,
    )


def monogamy_report(p, side=QUBIT_B):
    rho = thermal_state(p).rho
    ent = concurrence_general(rho)
    corr = quantum_discord(rho, side)
    return report_from_ab(corr.entropy_a, corr.mutual_info, ent.eof, corr.discord, corr.classical_corr)


def equality_condition_check(r, tol=DEFAULT_TOL):
    """(QD_AB == CC_AB, half of I_AB == EN_AE + EN_AB - QD_AE), each within ``tol``.

    The two flags are supposed to agree; disagreement would falsify the
    claimed equivalence.
    """
    qd_equals_cc = abs(r.qd_ab - r.cc_ab) <= tol
    eq17_holds = abs(r.eq17_lhs - r.eq17_rhs) <= tol
    return qd_equals_cc, eq17_holds
