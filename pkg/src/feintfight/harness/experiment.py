"""Experiment matrices: many seeded sessions, aggregated with bootstrap CIs.

A matrix is conditions x profiles x seeds. Every cell runs the same seed
list, sessions are independent, and aggregation is a deterministic reduce, so
results do not depend on execution order or the number of worker processes.
Uncertain-minus-certain difference rows carry seeded percentile-bootstrap
confidence intervals (this artifact has no human between-subjects factor, so
no ANOVA is attempted).
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..agents.profiles import AgentProfile, resolve_profile
from ..config import GameConfig
from ..engine.core import StartMode
from ..errors import InsufficientSamplesError, MalformedLogError
from ..rng import derive_seed
from ..types import Condition
from .metrics import ExertionModelParams, compute_metrics
from .session import DEFAULT_TIME_CAP, run_session


@dataclass(frozen=True)
class ExperimentMatrix:
    conditions: Tuple[Condition, ...]
    profiles: Tuple[str, ...]
    seed_pairs: Tuple[Tuple[int, int], ...]

    @staticmethod
    def build(
        conditions: Sequence[str],
        profiles: Sequence[str],
        n_seeds: int,
        master_seed: int = 0,
        seeds: Optional[Sequence] = None,
    ) -> "ExperimentMatrix":
        if seeds is not None:
            pairs = tuple(
                (s, s) if isinstance(s, int) else (int(s[0]), int(s[1])) for s in seeds
            )
        else:
            pairs = tuple(
                (derive_seed(master_seed, "session", i), derive_seed(master_seed, "session", i))
                for i in range(n_seeds)
            )
        return ExperimentMatrix(
            conditions=tuple(Condition(c) for c in conditions),
            profiles=tuple(profiles),
            seed_pairs=pairs,
        )

    @staticmethod
    def from_file(path: str) -> "ExperimentMatrix":
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
        return ExperimentMatrix.build(
            conditions=data.get("conditions", ["certain", "uncertain"]),
            profiles=data.get("profiles", ["young_gullible"]),
            n_seeds=data.get("n_seeds", 0),
            master_seed=data.get("master_seed", 0),
            seeds=data.get("seeds"),
        )


@dataclass
class CellStats:
    condition: Condition
    profile: str
    n: int
    #: metric -> (mean, sd, n_effective); sessions missing a metric are skipped.
    stats: Dict[str, Tuple[float, float, int]]


@dataclass
class DiffRow:
    profile: str
    metric: str
    mean_diff: float
    ci_low: float
    ci_high: float
    level: float


@dataclass
class SummaryTable:
    cells: List[CellStats] = field(default_factory=list)
    diffs: List[DiffRow] = field(default_factory=list)

    def cell(self, condition: Condition, profile: str) -> CellStats:
        for cell in self.cells:
            if cell.condition is condition and cell.profile == profile:
                return cell
        raise KeyError((condition, profile))

    def diff(self, profile: str, metric: str) -> DiffRow:
        for row in self.diffs:
            if row.profile == profile and row.metric == metric:
                return row
        raise KeyError((profile, metric))

    def to_rows(self) -> List[dict]:
        rows: List[dict] = []
        for cell in self.cells:
            for metric in sorted(cell.stats):
                mean, sd, n_eff = cell.stats[metric]
                rows.append(
                    {
                        "row": "cell",
                        "condition": cell.condition.value,
                        "profile": cell.profile,
                        "metric": metric,
                        "mean": mean,
                        "sd": sd,
                        "n": n_eff,
                    }
                )
        for diff in self.diffs:
            rows.append(
                {
                    "row": "diff",
                    "condition": "uncertain-certain",
                    "profile": diff.profile,
                    "metric": diff.metric,
                    "mean": diff.mean_diff,
                    "ci_low": diff.ci_low,
                    "ci_high": diff.ci_high,
                    "level": diff.level,
                }
            )
        return rows

    @staticmethod
    def from_rows(rows: Sequence[dict]) -> "SummaryTable":
        cells: Dict[Tuple[str, str], CellStats] = {}
        diffs: List[DiffRow] = []
        cell_n: Dict[Tuple[str, str], int] = {}
        for row in rows:
            if row["row"] == "cell":
                key = (row["condition"], row["profile"])
                cell = cells.get(key)
                if cell is None:
                    cell = CellStats(Condition(row["condition"]), row["profile"], 0, {})
                    cells[key] = cell
                n_eff = int(row["n"])
                cell.stats[row["metric"]] = (row["mean"], row["sd"], n_eff)
                cell_n[key] = max(cell_n.get(key, 0), n_eff)
            elif row["row"] == "diff":
                diffs.append(
                    DiffRow(
                        profile=row["profile"],
                        metric=row["metric"],
                        mean_diff=row["mean"],
                        ci_low=row["ci_low"],
                        ci_high=row["ci_high"],
                        level=row["level"],
                    )
                )
            else:
                raise MalformedLogError(f"unknown table row type {row['row']!r}")
        for key, cell in cells.items():
            cell.n = cell_n[key]
        return SummaryTable(cells=list(cells.values()), diffs=diffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SummaryTable):
            return NotImplemented
        return self.to_rows() == other.to_rows()


# ---------------------------------------------------------------------------


def bootstrap_diff_ci(
    samples_a: Sequence[float],
    samples_b: Sequence[float],
    resamples: int = 10000,
    level: float = 0.95,
    seed: int = 0,
) -> Tuple[float, float]:
    """Seeded percentile-bootstrap CI for mean(a) - mean(b).

    Samples are sorted before resampling so the interval depends only on the
    multisets, keeping aggregation permutation-invariant over seeds.
    """
    if len(samples_a) < 2 or len(samples_b) < 2:
        raise InsufficientSamplesError("need at least 2 samples per group")
    if not 0.0 < level < 1.0:
        raise ValueError("level must be in (0, 1)")
    rng = np.random.default_rng(seed)
    a = np.sort(np.asarray(samples_a, dtype=float))
    b = np.sort(np.asarray(samples_b, dtype=float))
    means_a = a[rng.integers(0, len(a), size=(resamples, len(a)))].mean(axis=1)
    means_b = b[rng.integers(0, len(b), size=(resamples, len(b)))].mean(axis=1)
    diffs = means_a - means_b
    tail = (1.0 - level) / 2.0 * 100.0
    low, high = np.percentile(diffs, [tail, 100.0 - tail])
    return float(low), float(high)


def _session_values(args) -> Tuple[str, str, int, Dict[str, Optional[float]]]:
    config_dict, profile_dict, pair, index, start_value, time_cap, params = args
    config = GameConfig.from_dict(config_dict)
    profile = AgentProfile.from_dict(profile_dict)
    log = run_session(config, profile, pair, StartMode(start_value), time_cap)
    metrics = compute_metrics(log, profile, params)
    return (config.condition.value, profile.name, index, metrics.values())


def run_experiment(
    matrix: ExperimentMatrix,
    base_config: GameConfig = GameConfig(),
    jobs: int = 1,
    start: StartMode = StartMode.GAMEPLAY_ONLY,
    time_cap: float = DEFAULT_TIME_CAP,
    resamples: int = 10000,
    level: float = 0.95,
    exertion_params: ExertionModelParams = ExertionModelParams(),
    ci_seed: int = 0,
) -> SummaryTable:
    """Run n seeded sessions per cell and aggregate mean/SD plus CI rows.

    The per-cell sample lists are ordered by seed index, so the reduce (and
    therefore the output) is identical whatever `jobs` is.
    """
    if len(matrix.seed_pairs) < 2:
        raise InsufficientSamplesError("an experiment needs at least 2 seeds per cell")
    profiles = {name: resolve_profile(name) for name in matrix.profiles}
    tasks = []
    for condition in matrix.conditions:
        config = base_config.override({"condition": condition.value})
        for profile_name in matrix.profiles:
            for index, pair in enumerate(matrix.seed_pairs):
                tasks.append(
                    (
                        config.to_dict(),
                        profiles[profile_name].to_dict(),
                        pair,
                        index,
                        start.value,
                        time_cap,
                        exertion_params,
                    )
                )

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_session_values, tasks, chunksize=8))
    else:
        outcomes = [_session_values(task) for task in tasks]

    by_cell: Dict[Tuple[str, str], List[Dict[str, Optional[float]]]] = {}
    for condition_value, profile_name, index, values in sorted(
        outcomes, key=lambda item: (item[0], item[1], item[2])
    ):
        by_cell.setdefault((condition_value, profile_name), []).append(values)

    table = SummaryTable()
    metric_names: List[str] = []
    for (condition_value, profile_name), rows in by_cell.items():
        stats: Dict[str, Tuple[float, float, int]] = {}
        metric_names = sorted(rows[0])
        for metric in metric_names:
            samples = [r[metric] for r in rows if r[metric] is not None]
            if not samples:
                continue  # undefined for every session in the cell: report as absent
            mean = float(np.mean(samples))
            sd = float(np.std(samples, ddof=1)) if len(samples) > 1 else 0.0
            stats[metric] = (mean, sd, len(samples))
        table.cells.append(
            CellStats(Condition(condition_value), profile_name, len(rows), stats)
        )

    has_both = {Condition.CERTAIN, Condition.UNCERTAIN} <= set(matrix.conditions)
    if has_both:
        for profile_name in matrix.profiles:
            uncertain = by_cell[(Condition.UNCERTAIN.value, profile_name)]
            certain = by_cell[(Condition.CERTAIN.value, profile_name)]
            for metric in metric_names:
                a = [r[metric] for r in uncertain if r[metric] is not None]
                b = [r[metric] for r in certain if r[metric] is not None]
                if len(a) < 2 or len(b) < 2:
                    continue
                low, high = bootstrap_diff_ci(
                    a, b, resamples, level, seed=derive_seed(ci_seed, profile_name, metric)
                )
                table.diffs.append(
                    DiffRow(
                        profile=profile_name,
                        metric=metric,
                        mean_diff=float(np.mean(a) - np.mean(b)),
                        ci_low=low,
                        ci_high=high,
                        level=level,
                    )
                )
    return table


# ---------------------------------------------------------------------------
# Table export / import
# ---------------------------------------------------------------------------

_CSV_COLUMNS = ["row", "condition", "profile", "metric", "mean", "sd", "n", "ci_low", "ci_high", "level"]


def export_table(table: SummaryTable, fmt: str, path: str) -> None:
    """Write the table as CSV (RFC 4180 via csv module) or JSONL; lossless."""
    rows = table.to_rows()
    if fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=_CSV_COLUMNS, extrasaction="ignore")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: _csv_cell(v) for k, v in row.items()})
    elif fmt == "jsonl":
        with open(path, "w", encoding="utf-8") as handle:
            for row in rows:
                handle.write(json.dumps(row, separators=(",", ":")))
                handle.write("\n")
    else:
        raise ValueError(f"unknown table format {fmt!r}")


def import_table(path: str, fmt: str) -> SummaryTable:
    if fmt == "csv":
        with open(path, "r", encoding="utf-8", newline="") as handle:
            reader = csv.DictReader(handle)
            rows = []
            for raw in reader:
                row: dict = {"row": raw["row"], "condition": raw["condition"], "profile": raw["profile"], "metric": raw["metric"]}
                if raw["row"] == "cell":
                    row["mean"] = _parse_float(raw["mean"])
                    row["sd"] = _parse_float(raw["sd"])
                    row["n"] = int(raw["n"])
                else:
                    row["mean"] = _parse_float(raw["mean"])
                    row["ci_low"] = _parse_float(raw["ci_low"])
                    row["ci_high"] = _parse_float(raw["ci_high"])
                    row["level"] = _parse_float(raw["level"])
                rows.append(row)
            return SummaryTable.from_rows(rows)
    if fmt == "jsonl":
        with open(path, "r", encoding="utf-8") as handle:
            rows = [json.loads(line) for line in handle if line.strip()]
        return SummaryTable.from_rows(rows)
    raise ValueError(f"unknown table format {fmt!r}")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_float(text: str) -> float:
    return float(text) if text not in ("", None) else math.nan
