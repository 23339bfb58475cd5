"""
Parameter sweeps over coupling J, temperature T and channel strength.
Every grid point evolves the XXX Gibbs state through the chosen channel and
records its correlation vector and the requested measures.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import bisect

from channels import apply_channel, channel_from_name, evolve_coeffs
from errors import ConfigError, ConsistencyError, NoEntanglementAnywhere
from files import write_records_csv, write_rows_csv
from measures import (
    concurrence, concurrence_margin, gqd1_bds, gqd1_numeric, qd_bds, qd_numeric,
)
from optimizer import OptimizerConfig
from states import thermal_xxx
from utils import MEASURE_ORDER

log = logging.getLogger(__name__)

CHANNELS = ("none", "bf", "gad")
BASE_COLUMNS = ("J", "T", "alpha", "p", "gamma", "c1", "c2", "c3")
ORACLE_COLUMNS = {"qd": "qd_numeric", "gqd1": "gqd1_numeric"}
ORDERING_ZERO_BAND = 1e-9
COLD_FRACTION = 1e-3
MAX_BRACKET_DOUBLINGS = 64


@dataclass(frozen=True)
class GridAxis:
    start: float
    stop: float
    steps: int

    def values(self):
        if self.steps == 1:
            return np.array([float(self.start)])
        return np.linspace(self.start, self.stop, self.steps)

    def validate(self, name):
        if self.steps < 1:
            raise ConfigError(f"{name} steps must be >= 1, got {self.steps}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ConfigError(f"{name} range must be finite")
        if self.steps > 1 and self.stop < self.start:
            raise ConfigError(f"{name} range is reversed: {self.start} > {self.stop}")


@dataclass(frozen=True)
class SweepConfig:
    j_axis: GridAxis = GridAxis(-4.0, 4.0, 81)
    t_axis: GridAxis = GridAxis(0.1, 3.0, 59)
    channel: str = "none"
    p: float = 0.0
    gamma: float = 0.0
    measures: Tuple[str, ...] = MEASURE_ORDER
    oracle: bool = False
    output_path: Optional[Path] = None
    workers: int = 1
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)

    def validate(self):
        """Reject the configuration before any computation starts"""
        self.j_axis.validate("J")
        self.t_axis.validate("T")
        if self.t_axis.start <= 0:
            raise ConfigError(f"T_min must be > 0, got {self.t_axis.start}")
        if self.channel not in CHANNELS:
            raise ConfigError(f"channel must be one of {', '.join(CHANNELS)}, got '{self.channel}'")
        for name in ("p", "gamma"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {value}")
        if self.channel == "gad" and self.p != 0.5:
            raise ConfigError(f"the GAD sweep runs at p = 1/2 only, got p = {self.p}")
        if not self.measures or any(m not in MEASURE_ORDER for m in self.measures):
            raise ConfigError(f"measures must be a non-empty subset of {', '.join(MEASURE_ORDER)}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        self.optimizer.validate()
        return self

    def channel_spec(self):
        return channel_from_name(self.channel, self.p, self.gamma)

    def columns(self):
        columns = list(BASE_COLUMNS) + list(self.measures)
        if self.oracle:
            columns += [ORACLE_COLUMNS[m] for m in self.measures if m in ORACLE_COLUMNS]
        return tuple(columns)


@dataclass(frozen=True)
class SweepRecord:
    """One grid point; coefficients are post-channel"""

    J: float
    T: float
    alpha: float
    p: float
    gamma: float
    c1: float
    c2: float
    c3: float
    qd: Optional[float] = None
    gqd1: Optional[float] = None
    concurrence: Optional[float] = None
    qd_numeric: Optional[float] = None
    gqd1_numeric: Optional[float] = None

    def row(self, columns):
        return [getattr(self, name) for name in columns]


def evaluate_point(J, T, channel, measures, oracle=False, optimizer=None):
    """Evolve the Gibbs state at (J, T) and compute the requested measures"""
    state = thermal_xxx(J, T)
    rho = apply_channel(state.rho, channel)
    coeffs = evolve_coeffs(state.coeffs, channel)
    optimizer = optimizer or OptimizerConfig()

    values = {}
    if "qd" in measures:
        values["qd"] = qd_bds(coeffs)
        if oracle:
            values["qd_numeric"] = qd_numeric(rho, optimizer)
    if "gqd1" in measures:
        values["gqd1"] = gqd1_bds(coeffs)
        if oracle:
            values["gqd1_numeric"] = gqd1_numeric(rho, optimizer)
    if "concurrence" in measures:
        values["concurrence"] = concurrence(rho)

    return SweepRecord(
        J=float(J), T=float(T), alpha=state.alpha,
        p=channel.p if channel else 0.0,
        gamma=channel.gamma if channel else 0.0,
        c1=coeffs.c1, c2=coeffs.c2, c3=coeffs.c3,
        **values,
    )


def _evaluate_row(job):
    J, t_values, channel, measures, oracle, optimizer = job
    return [evaluate_point(J, T, channel, measures, oracle, optimizer) for T in t_values]


def evaluate_grid(j_values, t_values, channel=None, measures=MEASURE_ORDER, oracle=False,
                  optimizer=None, workers=1, progress=None):
    """Cartesian grid, rows sorted by (J, T) whatever the scheduling.

    progress, when given, is called with the number of finished rows after
    each J row completes.
    """
    t_values = [float(t) for t in t_values]
    jobs = [(float(J), t_values, channel, tuple(measures), oracle, optimizer) for J in j_values]

    records = []
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for row in pool.map(_evaluate_row, jobs):
                records.extend(row)
                if progress:
                    progress(len(row))
    else:
        for job in jobs:
            row = _evaluate_row(job)
            records.extend(row)
            if progress:
                progress(len(row))

    records.sort(key=lambda r: (r.J, r.T))
    return records


def run_sweep(cfg, progress=None):
    """Validate, evaluate the grid, and write the CSV if an output path is set"""
    cfg.validate()
    records = evaluate_grid(
        cfg.j_axis.values(), cfg.t_axis.values(), cfg.channel_spec(), cfg.measures,
        cfg.oracle, cfg.optimizer, cfg.workers, progress,
    )
    if cfg.output_path is not None:
        write_records_csv(cfg.output_path, records, cfg.columns())
        log.info("wrote %d rows to %s", len(records), cfg.output_path)
    return records


# Sudden death

def sudden_death_temperature(J, channel=None):
    """Temperature at which the concurrence of the evolved Gibbs state reaches zero.

    The signed Wootters margin is bracketed between J·1e-3 and the first
    doubling of J where it is negative, then bisected to 1e-12.
    """
    if not J > 0:
        raise NoEntanglementAnywhere(f"J = {J} is not antiferromagnetic; concurrence is zero for all T")

    def margin(T):
        return concurrence_margin(apply_channel(thermal_xxx(J, T).rho, channel))

    cold = J * COLD_FRACTION
    if margin(cold) <= 0:
        raise NoEntanglementAnywhere(f"no entanglement at T = {cold:g} for J = {J}")

    hot = J
    for _ in range(MAX_BRACKET_DOUBLINGS):
        if margin(hot) < 0:
            break
        cold = hot
        hot *= 2
    else:
        raise ConsistencyError(f"concurrence never vanished up to T = {hot:g}")

    log.debug("sudden death bracket [%g, %g] for J=%g", cold, hot, J)
    return bisect(margin, cold, hot, xtol=1e-12, maxiter=500)


# Ordering report

@dataclass(frozen=True)
class Crossing:
    axis: str
    fixed: float
    location: float
    lower: float
    upper: float


@dataclass(frozen=True)
class OrderingReport:
    points: int
    fractions: dict
    crossings: Tuple[Crossing, ...]
    channel: str

    @property
    def violated(self):
        return self.fractions["+"] > 0 and self.fractions["-"] > 0

    @property
    def verdict(self):
        if self.violated:
            return "ordering violated"
        return "ordering preserved"

    def describe(self):
        if self.violated:
            return "gqd1 - qd takes both signs on the grid"
        if self.fractions["-"] > 0:
            return "qd >= gqd1 everywhere on the grid"
        return "gqd1 >= qd everywhere on the grid"


def ordering_sign(difference, band=ORDERING_ZERO_BAND):
    if abs(difference) < band:
        return 0
    return 1 if difference > 0 else -1


def _crossings_along(records, axis):
    fixed_name = "T" if axis == "J" else "J"
    lines = {}
    for record in records:
        lines.setdefault(getattr(record, fixed_name), []).append(record)

    found = []
    for fixed, line in sorted(lines.items()):
        line.sort(key=lambda r: getattr(r, axis))
        signed = [(getattr(r, axis), r.gqd1 - r.qd) for r in line if ordering_sign(r.gqd1 - r.qd)]
        for (x0, d0), (x1, d1) in zip(signed, signed[1:]):
            if (d0 > 0) != (d1 > 0):
                location = x0 + (x1 - x0) * d0 / (d0 - d1)
                found.append(Crossing(axis=axis, fixed=fixed, location=location, lower=x0, upper=x1))
    return found


def ordering_report(cfg, progress=None):
    """Partition the grid by sign(gqd1 - qd) and locate the sign changes"""
    if "qd" not in cfg.measures or "gqd1" not in cfg.measures:
        raise ConfigError("ordering needs both qd and gqd1 in the measure list")
    cfg.validate()
    records = evaluate_grid(
        cfg.j_axis.values(), cfg.t_axis.values(), cfg.channel_spec(), ("qd", "gqd1"),
        False, cfg.optimizer, cfg.workers, progress,
    )

    counts = {"+": 0, "0": 0, "-": 0}
    for record in records:
        counts["+0-"[1 - ordering_sign(record.gqd1 - record.qd)]] += 1
    total = len(records)
    fractions = {key: value / total for key, value in counts.items()}

    crossings = _crossings_along(records, "J") + _crossings_along(records, "T")
    return OrderingReport(points=total, fractions=fractions, crossings=tuple(crossings),
                          channel=cfg.channel)


def write_crossings_csv(path, report):
    rows = ([c.axis, c.fixed, c.location, c.lower, c.upper] for c in report.crossings)
    return write_rows_csv(path, ("axis", "fixed", "location", "lower", "upper"), rows)
