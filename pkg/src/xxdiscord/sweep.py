"""Parameter sweeps over field or temperature and their CSV serialization."""

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .discord import quantum_discord
from .entanglement import concurrence_general
from .linalg2q import QUBIT_A, QUBIT_B
from .monogamy import report_from_ab
from .xxchain import ModelParams, thermal_state

FIELD_SWEEP = "field_sweep"
TEMP_SWEEP = "temp_sweep"

COLUMNS = (
    "b1", "b2", "temperature", "j", "side",
    "concurrence", "eof",
    "entropy_a", "entropy_b", "entropy_ab", "mutual_info", "classical_corr", "discord",
    "theta_opt", "phi_opt",
    "s_a", "cc_ae", "en_ae", "qd_ae", "eq17_lhs", "eq17_rhs",
)

FIELD_GRID = (-4.0, 4.0, 401)
TEMP_GRID = (0.01, 3.0, 300)


class SweepError(ValueError):
    """Invalid sweep specification."""


@dataclass(frozen=True)
class SweepSpec:
    """One line of parameter space.

    In a field sweep b1 runs over ``grid`` at fixed ``temperature``; in a
    temperature sweep the temperature runs over ``grid`` at fixed ``b1``.
    The second field is b2 = b1 when ``uniform`` and b2 = -ratio * b1 otherwise.
    """

    mode: str = FIELD_SWEEP
    j: float = 1.0
    ratio: float = 1.0
    uniform: bool = False
    temperature: float = 1.0
    b1: float = 1.0
    grid: tuple = FIELD_GRID
    side: str = QUBIT_B
    output_path: str = None

    def validate(self):
        if self.mode not in (FIELD_SWEEP, TEMP_SWEEP):
            raise SweepError(f"mode must be {FIELD_SWEEP!r} or {TEMP_SWEEP!r}, got {self.mode!r}")
        start, stop, count = self.grid
        if int(count) != count or count < 2:
            raise SweepError(f"grid needs at least 2 points, got {count!r}")
        if not start < stop:
            raise SweepError(f"grid start {start!r} must be below stop {stop!r}")
        if self.side not in (QUBIT_A, QUBIT_B):
            raise SweepError(f"side must be 'A' or 'B', got {self.side!r}")
        if not self.j:
            raise SweepError("coupling j must be nonzero")
        if self.mode == TEMP_SWEEP and start <= 0:
            raise SweepError("temperatures must be positive")
        if self.mode == FIELD_SWEEP and not self.temperature > 0:
            raise SweepError("temperature must be positive")
        return self

    def b2_for(self, b1):
        return b1 if self.uniform else -self.ratio * b1

    def values(self):
        start, stop, count = self.grid
        return np.linspace(start, stop, int(count))

    def points(self):
        self.validate()
        out = []
        for x in self.values():
            x = float(x)
            if self.mode == FIELD_SWEEP:
                b1, t = x, self.temperature
            else:
                b1, t = self.b1, x
            out.append(ModelParams(j=self.j, b1=b1, b2=self.b2_for(b1) + 0.0, temperature=t))
        return out


def evaluate_point(p, side=QUBIT_B):
    """Every reported quantity at one parameter point, as a dict keyed by COLUMNS."""
    rho = thermal_state(p).rho
    ent = concurrence_general(rho)
    corr = quantum_discord(rho, side)
    mono = report_from_ab(corr.entropy_a, corr.mutual_info, ent.eof, corr.discord, corr.classical_corr)
    return {
        "b1": p.b1,
        "b2": p.b2,
        "temperature": p.temperature,
        "j": p.j,
        "side": side,
        "concurrence": ent.concurrence,
        "eof": ent.eof,
        "entropy_a": corr.entropy_a,
        "entropy_b": corr.entropy_b,
        "entropy_ab": corr.entropy_ab,
        "mutual_info": corr.mutual_info,
        "classical_corr": corr.classical_corr,
        "discord": corr.discord,
        "theta_opt": corr.optimal_measurement.theta,
        "phi_opt": corr.optimal_measurement.phi,
        "s_a": mono.s_a,
        "cc_ae": mono.cc_ae,
        "en_ae": mono.en_ae,
        "qd_ae": mono.qd_ae,
        "eq17_lhs": mono.eq17_lhs,
        "eq17_rhs": mono.eq17_rhs,
    }


def _evaluate(args):
    return evaluate_point(*args)


def run_sweep(spec, jobs=1):
    """Rows for every grid point, in grid order."""
    tasks = [(p, spec.side) for p in spec.points()]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return [_evaluate(t) for t in tasks]


def format_value(v):
    if isinstance(v, str):
        return v
    # 12 significant digits; +0.0 folds negative zero
    return f"{float(v) + 0.0:.12g}"


def write_csv(rows, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in COLUMNS])


def rows_to_csv(rows):
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def read_csv(path_or_stream):
    """Parse a sweep CSV back into dicts of floats (``side`` stays a string)."""
    if isinstance(path_or_stream, str):
        with open(path_or_stream, newline="") as fh:
            return read_csv(fh)
    reader = csv.DictReader(path_or_stream)
    if tuple(reader.fieldnames or ()) != COLUMNS:
        raise ValueError("unexpected CSV header")
    return [{k: (v if k == "side" else float(v)) for k, v in row.items()} for row in reader]


def _field(t, ratio=1.0, uniform=False):
    return SweepSpec(mode=FIELD_SWEEP, temperature=t, ratio=ratio, uniform=uniform, grid=FIELD_GRID)


def _temp(b1, ratio=1.0, uniform=False):
    return SweepSpec(mode=TEMP_SWEEP, b1=b1, ratio=ratio, uniform=uniform, grid=TEMP_GRID)


# panels per figure; multi-panel figures are concatenated in panel order
PRESETS = {
    "fig1": [_field(0.2)],
    "fig2": [_field(0.9)],
    "fig3": [_field(1.5)],
    "fig4": [_temp(1.0), _temp(2.0)],
    "fig5": [_field(1.5, ratio=2.0), _field(1.5, ratio=0.5)],
    "fig6": [_field(0.2, uniform=True)],
    "fig7": [_field(0.9, uniform=True)],
    "fig8": [_field(1.5, uniform=True)],
    "fig9": [_temp(1.0, uniform=True), _temp(2.0, uniform=True)],
    "fig10": [_field(0.9)],
    "fig11": [_temp(1.0)],
    "fig12": [_field(1.5)],
    "fig13": [_temp(1.0)],
}
for _name in ("fig4", "fig5", "fig9"):
    PRESETS[_name + "a"], PRESETS[_name + "b"] = ([s] for s in PRESETS[_name])


def preset(name, quick=False):
    """Sweep specs of a figure preset; ``quick`` thins every grid to about 41 points."""
    try:
        specs = PRESETS[name]
    except KeyError:
        raise SweepError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    if quick:
        specs = [replace(s, grid=_thin(s.grid)) for s in specs]
    return specs


def _thin(grid):
    start, stop, count = grid
    # keep the midpoint (b1 = 0 on symmetric field grids) on the thinned grid
    n = min(count, 41 if count % 2 else 40)
    return (start, stop, n)
