"""Operator command line: simulate, experiment, validate, serve, replay.

Exit codes: 0 success, 1 runtime failure (including failed validation
checks), 2 usage or precondition errors. Every subcommand is non-interactive
and deterministic given its flags and seeds; nothing is written outside the
paths given via --out / --log-dir. With --quiet the only stdout line is a
machine-parsable JSON summary.
"""

from __future__ import annotations

import json
import sys
import time as _time

import click

from . import __version__
from .agents.profiles import resolve_profile
from .config import GameConfig
from .engine.core import StartMode, monster_decide, roll_attack_modifiers
from .errors import ConfigError, InsufficientSamplesError, ProfileFormatError, UnknownProfileError
from .harness.experiment import ExperimentMatrix, export_table, run_experiment
from .harness.metrics import compute_metrics
from .harness.session import DEFAULT_TIME_CAP, SessionLog, run_session
from .rng import Stream
from .types import MoveId


def _load_config(path: str | None, condition: str | None = None) -> GameConfig:
    config = GameConfig()
    if path is not None:
        with open(path, "r", encoding="utf-8") as handle:
            config = config.override(json.load(handle))
    if condition is not None:
        config = config.override({"condition": condition})
    config.validate()
    return config


def _echo_summary(summary: dict, quiet: bool, human: str) -> None:
    if quiet:
        click.echo(json.dumps(summary, separators=(",", ":")))
    else:
        click.echo(human)


@click.group()
@click.version_option(__version__, prog_name="feintfight")
def main() -> None:
    """Deterministic exergame combat simulator and experiment harness."""


# -- simulate -----------------------------------------------------------------


@main.command()
@click.option("--condition", type=click.Choice(["certain", "uncertain"]), default="certain", show_default=True)
@click.option("--profile", "profile_name", default="young_gullible", show_default=True,
              help="Builtin profile name or path to a profile JSON file.")
@click.option("--seed", type=int, default=0, show_default=True, help="Engine seed (and agent seed unless overridden).")
@click.option("--agent-seed", type=int, default=None, help="Separate agent seed.")
@click.option("--with-training", is_flag=True, help="Include the warm-up phase.")
@click.option("--time-cap", type=float, default=DEFAULT_TIME_CAP, show_default=True,
              help="Simulated-seconds cap before the session is abandoned.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON file overriding config fields.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False), help="Event-log output path.")
@click.option("--quiet", is_flag=True, help="Print a single JSON summary line.")
def simulate(condition, profile_name, seed, agent_seed, with_training, time_cap, config_path, out_path, quiet):
    """Run one seeded agent session and write its event log."""
    try:
        config = _load_config(config_path, condition)
        profile = resolve_profile(profile_name)
        profile.validate(config)
    except (UnknownProfileError, ProfileFormatError) as exc:
        raise click.UsageError(f"unknown-profile: {exc}")
    except ConfigError as exc:
        raise click.UsageError(f"invalid-config: {exc}")
    start = StartMode.WITH_TRAINING if with_training else StartMode.GAMEPLAY_ONLY
    pair = (seed, agent_seed if agent_seed is not None else seed)
    log = run_session(config, profile, pair, start, time_cap)
    try:
        log.write(out_path)
    except OSError as exc:
        raise click.ClickException(f"io-failure: {exc}")
    metrics = compute_metrics(log, profile)
    summary = {
        "out": out_path,
        "seed": pair[0],
        "agent_seed": pair[1],
        "condition": config.condition.value,
        "profile": profile.name,
        "winner": metrics.winner.value if metrics.winner else None,
        "capped": log.capped,
        "duration": metrics.session_duration,
        "events": len(log.events),
    }
    _echo_summary(
        summary, quiet,
        f"{profile.name} vs monster [{config.condition.value}] seed={pair[0]}: "
        f"winner={summary['winner']} in {metrics.session_duration:.1f}s "
        f"({len(log.events)} events) -> {out_path}",
    )


# -- experiment -----------------------------------------------------------------


@main.command()
@click.option("--matrix", "matrix_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Matrix JSON: conditions, profiles, seeds or n_seeds+master_seed.")
@click.option("--conditions", default="certain,uncertain", show_default=True)
@click.option("--profiles", default="young_gullible", show_default=True)
@click.option("--n", "n_seeds", type=int, default=None, help="Seeds per cell (overrides the matrix file).")
@click.option("--master-seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True, help="Parallel session workers.")
@click.option("--resamples", type=int, default=10000, show_default=True)
@click.option("--with-training", is_flag=True)
@click.option("--time-cap", type=float, default=DEFAULT_TIME_CAP, show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), default="csv", show_default=True)
@click.option("--quiet", is_flag=True)
def experiment(matrix_path, conditions, profiles, n_seeds, master_seed, jobs, resamples,
               with_training, time_cap, config_path, out_path, fmt, quiet):
    """Run a conditions x profiles x seeds matrix and export the summary table."""
    try:
        config = _load_config(config_path)
        if matrix_path is not None:
            matrix = ExperimentMatrix.from_file(matrix_path)
            if n_seeds is not None:
                matrix = ExperimentMatrix.build(
                    [c.value for c in matrix.conditions], matrix.profiles, n_seeds, master_seed
                )
        else:
            if n_seeds is None:
                raise click.UsageError("insufficient-samples: provide --n or a --matrix file")
            matrix = ExperimentMatrix.build(
                conditions.split(","), profiles.split(","), n_seeds, master_seed
            )
        for name in matrix.profiles:
            resolve_profile(name)
    except (UnknownProfileError, ProfileFormatError) as exc:
        raise click.UsageError(f"unknown-profile: {exc}")
    except ConfigError as exc:
        raise click.UsageError(f"invalid-config: {exc}")
    start = StartMode.WITH_TRAINING if with_training else StartMode.GAMEPLAY_ONLY
    began = _time.perf_counter()
    try:
        table = run_experiment(
            matrix, config, jobs=jobs, start=start, time_cap=time_cap, resamples=resamples
        )
    except InsufficientSamplesError as exc:
        raise click.UsageError(f"insufficient-samples: {exc}")
    elapsed = _time.perf_counter() - began
    try:
        export_table(table, fmt, out_path)
    except OSError as exc:
        raise click.ClickException(f"io-failure: {exc}")
    sessions = len(matrix.conditions) * len(matrix.profiles) * len(matrix.seed_pairs)
    summary = {
        "out": out_path,
        "format": fmt,
        "cells": len(table.cells),
        "diff_rows": len(table.diffs),
        "sessions": sessions,
        "seconds": round(elapsed, 3),
    }
    _echo_summary(
        summary, quiet,
        f"{sessions} sessions across {len(table.cells)} cells in {elapsed:.1f}s "
        f"({sessions / elapsed:.1f}/s) -> {out_path} [{fmt}]",
    )


# -- validate ---------------------------------------------------------------------


VALIDATION_TOLERANCE = 0.01


def _validate_checks(config: GameConfig, draws: int, seed: int):
    """Monte Carlo frequency checks against the rulebook's stated odds."""
    defaults = GameConfig()
    rng = Stream(seed)
    both = (MoveId.MONSTER_PUNCH, MoveId.MONSTER_SQUAT)
    single = (MoveId.MONSTER_PUNCH,)

    certain = config.override({"condition": "certain"})
    uncertain = config.override({"condition": "uncertain"})

    walk = punch = squat = 0
    for _ in range(draws):
        decision = monster_decide(both, certain, rng)
        name = type(decision).__name__
        if name == "Walk":
            walk += 1
        elif decision.move is MoveId.MONSTER_PUNCH:
            punch += 1
        else:
            squat += 1
    checks = [
        ("certain_policy.walk", walk / draws, 1.0 - defaults.p_attack_intent),
        ("certain_policy.punch", punch / draws, defaults.p_attack_intent / 2),
        ("certain_policy.squat", squat / draws, defaults.p_attack_intent / 2),
    ]

    walk = real = false = 0
    for _ in range(draws):
        decision = monster_decide(single, uncertain, rng)
        name = type(decision).__name__
        if name == "Walk":
            walk += 1
        elif name == "RealAttack":
            real += 1
        else:
            false += 1
    attacks = real + false
    checks += [
        ("uncertain_policy.walk", walk / draws, 1.0 - defaults.p_attack_intent),
        ("uncertain_policy.real", real / draws, defaults.p_attack_intent * (1 - defaults.p_false_attack)),
        ("uncertain_policy.false", false / draws, defaults.p_attack_intent * defaults.p_false_attack),
        ("false_fraction_of_attacks", false / attacks if attacks else 0.0, defaults.p_false_attack),
    ]

    missed_n = crit_n = not_missed = 0
    for _ in range(draws):
        missed, crit = roll_attack_modifiers(uncertain, rng)
        missed_n += missed
        if not missed:
            not_missed += 1
            crit_n += crit
    checks += [
        ("modifiers.miss", missed_n / draws, defaults.p_miss),
        ("modifiers.crit_given_hit", crit_n / not_missed if not_missed else 0.0, defaults.p_crit),
    ]
    return [
        {
            "check": name,
            "observed": round(observed, 6),
            "expected": expected,
            "tolerance": VALIDATION_TOLERANCE,
            "ok": abs(observed - expected) <= VALIDATION_TOLERANCE,
        }
        for name, observed, expected in checks
    ]


@main.command()
@click.option("--draws", type=int, default=100000, show_default=True)
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Config to probe (checks still compare against the stock odds).")
@click.option("--quiet", is_flag=True)
def validate(draws, seed, config_path, quiet):
    """Monte Carlo check of monster policy and miss/crit odds (+-0.01)."""
    if draws < 1:
        raise click.UsageError("insufficient-samples: --draws must be positive")
    try:
        config = _load_config(config_path)
    except ConfigError as exc:
        raise click.UsageError(f"invalid-config: {exc}")
    if draws < 10000:
        click.echo(
            f"warning: {draws} draws cannot guarantee the +-{VALIDATION_TOLERANCE} tolerance "
            "(use >= 100000)", err=True,
        )
    rows = _validate_checks(config, draws, seed)
    ok = all(row["ok"] for row in rows)
    if quiet:
        click.echo(json.dumps({"draws": draws, "seed": seed, "ok": ok, "checks": rows},
                              separators=(",", ":")))
    else:
        for row in rows:
            status = "ok " if row["ok"] else "FAIL"
            click.echo(
                f"[{status}] {row['check']:28s} observed={row['observed']:<9g} "
                f"expected={row['expected']:g} (+-{row['tolerance']})"
            )
        click.echo(f"{'all checks passed' if ok else 'CHECKS FAILED'} ({draws} draws, seed {seed})")
    if not ok:
        sys.exit(1)


# -- serve -----------------------------------------------------------------------


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=7777, show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--log-dir", type=click.Path(file_okay=False), default=None,
              help="Write each finished session's event log here.")
def serve(host, port, config_path, log_dir):
    """Serve live play sessions over WebSocket (schema gf/1)."""
    from .service.server import run_server

    try:
        config = _load_config(config_path)
    except ConfigError as exc:
        raise click.UsageError(f"invalid-config: {exc}")
    click.echo(f"feintfight service on ws://{host}:{port} (schema gf/1)")
    try:
        run_server(host, port, config, log_dir)
    except OSError as exc:
        raise click.ClickException(f"bind-failure: {exc}")


# -- replay ----------------------------------------------------------------------


@main.command()
@click.option("--log", "log_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--speed", type=float, default=None,
              help="Real-time pacing multiplier; omit for batch output.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="Write frames to a file instead of stdout.")
def replay(log_path, speed, out_path):
    """Stream a recorded session as protocol frames."""
    from .errors import MalformedLogError
    from .service.protocol import encode
    from .service.server import replay_stream

    try:
        log = SessionLog.read(log_path)
    except MalformedLogError as exc:
        raise click.ClickException(f"malformed-log: {exc}")
    sink = open(out_path, "w", encoding="utf-8") if out_path else sys.stdout
    try:
        started = _time.perf_counter()
        for emit_at, message in replay_stream(log, speed if speed else float("inf")):
            if speed:
                delay = emit_at - (_time.perf_counter() - started)
                if delay > 0:
                    _time.sleep(delay)
            sink.write(encode(message))
            sink.write("\n")
    finally:
        if out_path:
            sink.close()


if __name__ == "__main__":
    main()
