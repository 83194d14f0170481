"""Agent decision making: observation projection and gesture scheduling.

An agent sees the game only through `observe()`, which mirrors what a human
player can see: whether a monster attack animation is in progress and for how
long, but never whether it is a feint. A feint reveals itself by vanishing at
the feint duration, so "still in progress past that" is the only tell.

`decide()` is called once per tick and returns at most one future-dated
intent. The driver keeps a single pending intent; a newly returned one
replaces it (a reactive defense may preempt a queued attack). All stochastic
choices (reaction latency, recognition) are drawn from the agent's own
stream, never the engine's.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional

from ..engine.core import GameState, GestureInput
from ..engine import kernel as K
from ..events import round_time
from ..rng import Stream
from ..types import (
    Direction,
    GamePhase,
    Gameplay,
    Gesture,
    InterLifeWait,
    Revive,
    Terminal,
    Training,
)
from .profiles import AgentProfile, DefensePolicy

@dataclass(slots=True)
class Observation:
    """Player-visible projection of the game state at one tick."""

    tick: int
    time: float
    tick_seconds: float
    phase: GamePhase
    cooldown_ticks: Dict[Gesture, int]
    hp: int
    lives: int
    shield_active: bool
    shield_remaining: float
    monster_hp: int
    monster_lives: int
    monster_position: float
    attack_in_progress: bool
    attack_elapsed: Optional[float]


def observe(state: GameState) -> Observation:
    """Project the state for an agent; hides feint/real and all RNG internals.

    Built once per tick, so floats here are raw products (no decimal
    rounding); only serialized event timestamps need the stable form.
    """
    buf = state.buf
    tick_s = state.config.tick
    pending = state.pending_attack
    return Observation(
        tick=state.tick_count,
        time=state.tick_count * tick_s,
        tick_seconds=tick_s,
        phase=state.phase,
        cooldown_ticks={
            Gesture.KICK: buf[K.CD_KICK],
            Gesture.PUNCH: buf[K.CD_PUNCH],
            Gesture.ZOOM_KICK: buf[K.CD_ZOOM_KICK],
            Gesture.ZOOM_SQUAT: buf[K.CD_ZOOM_SQUAT],
        },
        hp=state.player_hp,
        lives=state.player_lives,
        shield_active=buf[K.SHIELD] > 0,
        shield_remaining=buf[K.SHIELD] * tick_s,
        monster_hp=state.monster_hp,
        monster_lives=state.monster_lives,
        monster_position=buf[K.POS] * state.ticks.step_m,
        attack_in_progress=pending is not None,
        attack_elapsed=None if pending is None else (pending.total_ticks - buf[K.ATTACK]) * tick_s,
    )


@dataclass(frozen=True)
class GestureIntent:
    gesture: Gesture
    direction: Direction
    issue_tick: int
    issue_time: float
    recognized: bool

    def to_input(self) -> GestureInput:
        return GestureInput(self.gesture, self.direction, self.recognized)


@dataclass
class AgentMemory:
    """Per-session scratch state; decide() owns every field."""

    attack_seen: bool = False
    reveal_due_tick: Optional[int] = None
    pending_issue_tick: int = -1
    pending_is_defense: bool = False
    last_issue_tick: int = -(10 ** 9)


def _ticks(seconds: float, tick_seconds: float) -> int:
    return max(0, math.ceil(seconds / tick_seconds - 1e-9))


def decide(
    profile: AgentProfile,
    obs: Observation,
    memory: AgentMemory,
    rng: Stream,
) -> Optional[GestureIntent]:
    """One decision step. Returns a new intent (replacing any queued one) or None."""
    onset = False
    if obs.attack_in_progress:
        if not memory.attack_seen:
            memory.attack_seen = True
            onset = True
    else:
        memory.attack_seen = False

    phase = obs.phase
    if isinstance(phase, (Terminal, InterLifeWait)):
        return None

    slot_busy = memory.pending_issue_tick > obs.tick

    if isinstance(phase, Training):
        return _decide_training(profile, obs, memory, rng, phase, onset, slot_busy)
    if isinstance(phase, Revive):
        if slot_busy:
            return None
        if phase.awaiting_zoom:
            return _schedule(profile, obs, memory, rng, Gesture.ZOOM, Direction.NEUTRAL)
        return _schedule(profile, obs, memory, rng, Gesture.ZOOM_SQUAT, Direction.NEUTRAL)
    if isinstance(phase, Gameplay):
        defense = _maybe_defend(profile, obs, memory, rng, onset)
        if defense is not None:
            return defense
        if slot_busy:
            return None
        return _attack(profile, obs, memory, rng)
    return None


def _decide_training(profile, obs, memory, rng, phase: Training, onset, slot_busy):
    if slot_busy:
        return None
    if phase.awaiting_zoom:
        return _schedule(profile, obs, memory, rng, Gesture.ZOOM, Direction.NEUTRAL)
    if phase.stage is Gesture.ZOOM_SQUAT:
        # Everyone follows the drill here, defense policy notwithstanding:
        # the warm-up cannot finish without two blocks.
        if onset:
            return _schedule(profile, obs, memory, rng, Gesture.ZOOM_SQUAT, Direction.NEUTRAL, defense=True)
        return None
    return _schedule(profile, obs, memory, rng, phase.stage, _aim(obs), defense=False)


def _maybe_defend(profile, obs, memory, rng, onset):
    policy = profile.defense_policy
    if policy is DefensePolicy.NO_DEFENSE:
        return None
    if policy is DefensePolicy.GULLIBLE:
        if onset:
            return _schedule(profile, obs, memory, rng, Gesture.ZOOM_SQUAT, Direction.NEUTRAL, defense=True)
        return None
    # Discerning: note the onset, hold judgement until past the feint window.
    if onset:
        memory.reveal_due_tick = obs.tick + _ticks(profile.reveal_wait, obs.tick_seconds)
        return None
    if memory.reveal_due_tick is not None and obs.tick >= memory.reveal_due_tick:
        memory.reveal_due_tick = None
        if obs.attack_in_progress:  # survived the feint window: it is real
            return _schedule(profile, obs, memory, rng, Gesture.ZOOM_SQUAT, Direction.NEUTRAL, defense=True)
    return None


def _attack(profile, obs, memory, rng):
    lat_min = _ticks(profile.reaction_latency_mean - profile.reaction_latency_jitter, obs.tick_seconds)
    for gesture in profile.attack_priority:
        if obs.cooldown_ticks.get(gesture, 0) <= lat_min:
            return _schedule(profile, obs, memory, rng, gesture, _aim(obs), defense=False)
    return None


def _aim(obs: Observation) -> Direction:
    if obs.monster_position < 0:
        return Direction.LEFT
    return Direction.RIGHT


def _schedule(profile, obs, memory, rng, gesture, direction, defense=False):
    """Sample latency + recognition and book the intent, or bail if the move
    cannot be ready by the time the reaction completes."""
    if defense and memory.pending_is_defense and memory.pending_issue_tick > obs.tick:
        return None  # a defense is already on its way
    tick_s = obs.tick_seconds
    lat_min = _ticks(profile.reaction_latency_mean - profile.reaction_latency_jitter, tick_s)
    cd = obs.cooldown_ticks.get(gesture, 0)
    if cd > lat_min:
        return None
    latency = rng.uniform(
        profile.reaction_latency_mean - profile.reaction_latency_jitter,
        profile.reaction_latency_mean + profile.reaction_latency_jitter,
    )
    issue_tick = max(
        obs.tick + 1,
        obs.tick + _ticks(latency, tick_s),
        memory.last_issue_tick + _ticks(profile.inter_gesture_gap, tick_s),
    )
    recognized = rng.random() < profile.recognition(gesture)
    memory.pending_issue_tick = issue_tick
    memory.pending_is_defense = defense
    memory.last_issue_tick = issue_tick
    return GestureIntent(
        gesture=gesture,
        direction=direction,
        issue_tick=issue_tick,
        issue_time=round_time(issue_tick * tick_s),
        recognized=recognized,
    )
