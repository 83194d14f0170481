"""Per-session performance and exertion measures derived from an event log.

Everything here is computed from the log alone (no re-simulation):

* gesture counts         - every submission, recognized or not
* attack success rate    - executed submissions / all submissions per gesture
* shield success rate    - activations that blocked a real attack / activations
* completion times       - per monster life, clocked from that life's
                           gameplay entry to its LifeLost
* energy, calories, HR%  - an explicit exertion proxy driven by the energy
                           cost of executed gestures

The heart-rate proxy relaxes toward rest + intensity * (maxHR - rest) with a
first-order time constant; intensity is the windowed energy rate scaled into
the heart-rate reserve. Calories are a linear proxy in arbitrary units. Both
are monotone in executed gestures by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..agents.profiles import AgentProfile
from ..config import energy_cost_table
from ..errors import MalformedLogError
from ..events import (
    GestureSubmitted,
    LifeLost,
    PhaseChanged,
    SessionEnded,
    ShieldActivated,
    ShieldExpired,
)
from ..types import ATTACK_GESTURES, Actor, Gesture
from .session import SessionLog


def max_heart_rate(age: float) -> float:
    """Estimated maximum heart rate in bpm: 211 - 0.64 * age."""
    if age <= 0:
        raise ValueError("nonpositive-age")
    return 211.0 - 0.64 * age


@dataclass(frozen=True)
class ExertionModelParams:
    rest_hr: float = 70.0
    hr_time_constant: float = 30.0
    intensity_window: float = 30.0
    #: Fraction of heart-rate reserve per (energy unit / second) of activity.
    intensity_scale: float = 0.6
    kcal_per_energy_unit: float = 0.5
    #: Integration grid for the HR trace, seconds.
    grid: float = 0.25

    def validate(self) -> None:
        for name in ("rest_hr", "hr_time_constant", "intensity_window", "intensity_scale", "kcal_per_energy_unit", "grid"):
            if getattr(self, name) <= 0:
                raise ValueError(f"exertion parameter {name} must be positive")


@dataclass
class Metrics:
    completion_time_per_life: List[Optional[float]]
    success_rate: Dict[str, Optional[float]]
    gesture_count: Dict[str, int]
    total_energy: float
    calories_proxy: float
    avg_hr_pct: float
    session_duration: float
    winner: Optional[Actor]
    capped: bool

    def values(self) -> Dict[str, Optional[float]]:
        """Flat metric->value view used for aggregation and exports."""
        out: Dict[str, Optional[float]] = {}
        for i, t in enumerate(self.completion_time_per_life, start=1):
            out[f"completion_time.life{i}"] = t
        for gesture in (*ATTACK_GESTURES, Gesture.ZOOM_SQUAT):
            out[f"success_rate.{gesture.value}"] = self.success_rate.get(gesture.value)
        for gesture in Gesture:
            out[f"gesture_count.{gesture.value}"] = float(self.gesture_count.get(gesture.value, 0))
        out["attack_gesture_total"] = float(
            sum(self.gesture_count.get(g.value, 0) for g in ATTACK_GESTURES)
        )
        out["total_energy"] = self.total_energy
        out["calories_proxy"] = self.calories_proxy
        out["avg_hr_pct"] = self.avg_hr_pct
        out["session_duration"] = self.session_duration
        out["player_won"] = None if self.winner is None else float(self.winner is Actor.PLAYER)
        return out


def _executed_energy_impulses(log: SessionLog) -> List[Tuple[float, float]]:
    costs = energy_cost_table(log.config)
    return [
        (event.time, costs[event.move.value])
        for event in log.events
        if isinstance(event, GestureSubmitted) and event.executed
    ]


def compute_metrics(
    log: SessionLog,
    profile: AgentProfile,
    params: ExertionModelParams = ExertionModelParams(),
) -> Metrics:
    params.validate()
    submitted: Dict[str, int] = {}
    executed: Dict[str, int] = {}
    activations = 0
    blocked_activations = 0
    life_anchor: Optional[float] = 0.0 if log.start.value == "gameplay_only" else None
    completion: List[Optional[float]] = []
    winner: Optional[Actor] = None

    for event in log.events:
        if isinstance(event, GestureSubmitted):
            submitted[event.move.value] = submitted.get(event.move.value, 0) + 1
            if event.executed:
                executed[event.move.value] = executed.get(event.move.value, 0) + 1
        elif isinstance(event, ShieldActivated):
            activations += 1
        elif isinstance(event, ShieldExpired):
            if event.blocked_any:
                blocked_activations += 1
        elif isinstance(event, PhaseChanged):
            if event.to_phase.get("name") == "gameplay" and event.from_phase.get("name") in (
                "training",
                "inter_life_wait",
            ):
                life_anchor = event.time
        elif isinstance(event, LifeLost) and event.actor is Actor.MONSTER:
            if life_anchor is None:
                raise MalformedLogError("monster life lost before any gameplay entry")
            completion.append(round(event.time - life_anchor, 9))
            life_anchor = None  # the next anchor is the wait
        elif isinstance(event, SessionEnded):
            winner = event.winner

    success_rate: Dict[str, Optional[float]] = {}
    for gesture in ATTACK_GESTURES:
        total = submitted.get(gesture.value, 0)
        success_rate[gesture.value] = (executed.get(gesture.value, 0) / total) if total else None
    success_rate[Gesture.ZOOM_SQUAT.value] = (
        blocked_activations / activations if activations else None
    )

    impulses = _executed_energy_impulses(log)
    total_energy = round(math.fsum(e for _, e in impulses), 9)
    duration = log.duration
    exertion = simulate_exertion(log, profile, params)

    return Metrics(
        completion_time_per_life=completion,
        success_rate=success_rate,
        gesture_count=submitted,
        total_energy=total_energy,
        calories_proxy=exertion["calories_proxy"],
        avg_hr_pct=exertion["avg_hr_pct"],
        session_duration=duration,
        winner=winner,
        capped=log.capped,
    )


def simulate_exertion(
    log: SessionLog,
    profile: AgentProfile,
    params: ExertionModelParams = ExertionModelParams(),
) -> Dict[str, float]:
    """Heart-rate and calorie proxies from the executed-gesture energy trace."""
    params.validate()
    impulses = _executed_energy_impulses(log)
    total_energy = math.fsum(e for _, e in impulses)
    hr_max = max_heart_rate(profile.age)

    duration = max(log.duration, params.grid)
    n = int(math.ceil(duration / params.grid)) + 1
    energy = np.zeros(n)
    for t, e in impulses:
        idx = min(n - 1, int(round(t / params.grid)))
        energy[idx] += e

    window_cells = max(1, int(round(params.intensity_window / params.grid)))
    cum = np.cumsum(energy)
    shifted = np.zeros(n)
    if window_cells < n:
        shifted[window_cells:] = cum[:-window_cells]
    windowed = cum - shifted
    rate = windowed / params.intensity_window
    intensity = np.clip(rate * params.intensity_scale, 0.0, 1.0)
    target = params.rest_hr + intensity * (hr_max - params.rest_hr)

    alpha = 1.0 - math.exp(-params.grid / params.hr_time_constant)
    hr = np.empty(n)
    level = params.rest_hr
    for i in range(n):
        level += alpha * (target[i] - level)
        hr[i] = level

    return {
        "avg_hr_pct": float(hr.mean() / hr_max * 100.0),
        "calories_proxy": round(params.kcal_per_energy_unit * total_energy, 9),
    }
