"""Deterministic fixed-tick combat engine.

One `advance()` call moves the session exactly one tick: countdowns step in
the kernel, due monster attacks resolve, the monster acts on its cadence, and
queued player gestures apply in order. All randomness flows through the
engine's seeded stream, so a (config, seed, input trace) triple always yields
the same event log.

Timing rules the rest of the package relies on:

* Player attacks resolve on the tick they are launched; monster real attacks
  resolve after `real_attack_windup`; feints abort silently at
  `false_attack_duration` and can never be blocked.
* The shield covers attack resolutions strictly inside its window; a block
  heals the player (capped at max HP) once per blocked attack.
* Miss is rolled before crit and a missed attack cannot crit; in the certain
  condition neither roll consumes a draw.
* During training, damage is virtual: progress counts it but nobody's HP
  moves, and no uncertainty rolls happen. The monster only acts (real
  attacks, no walking) during the shield-training stage.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

from ..config import GameConfig
from ..errors import AdvanceAfterTerminal
from ..events import (
    AttackLaunched,
    AttackResolved,
    GameEvent,
    GestureSubmitted,
    HealApplied,
    LifeLost,
    MonsterWalked,
    PhaseChanged,
    SessionEnded,
    ShieldActivated,
    ShieldExpired,
    round_time,
)
from ..rng import Stream, engine_stream
from ..types import (
    GESTURE_TO_MOVE,
    TRAINING_ORDER,
    TRAINING_PROGRESS_GOAL,
    Actor,
    Condition,
    Direction,
    GamePhase,
    Gameplay,
    Gesture,
    InterLifeWait,
    MoveId,
    MoveKind,
    Revive,
    Terminal,
    Training,
    phase_to_dict,
)
from . import kernel as K

#: Monster walking speed, meters per second; the lateral axis is discretized
#: into steps of walk_speed * tick so positions stay integral.
WALK_SPEED = 1.0

#: Half-width of the dead zone around the player where a directional melee
#: attack hits regardless of its direction, meters.
DEAD_ZONE = 0.25

MONSTER_MOVES = (MoveId.MONSTER_PUNCH, MoveId.MONSTER_SQUAT)

_COOLDOWN_SLOT = {
    MoveId.KICK: K.CD_KICK,
    MoveId.PUNCH: K.CD_PUNCH,
    MoveId.ZOOM_KICK: K.CD_ZOOM_KICK,
    MoveId.ZOOM_SQUAT: K.CD_ZOOM_SQUAT,
    MoveId.MONSTER_PUNCH: K.CD_MONSTER_PUNCH,
    MoveId.MONSTER_SQUAT: K.CD_MONSTER_SQUAT,
}


class StartMode(str, Enum):
    WITH_TRAINING = "with_training"
    GAMEPLAY_ONLY = "gameplay_only"


@dataclass(frozen=True)
class GestureInput:
    """One recognized-or-not gesture arriving at the engine."""

    gesture: Gesture
    direction: Direction = Direction.NEUTRAL
    recognized: bool = True


@dataclass(frozen=True)
class PendingAttack:
    move: MoveId
    is_false: bool
    total_ticks: int


# Monster policy decisions -------------------------------------------------


@dataclass(frozen=True)
class Walk:
    """Head to a new lateral offset (grid units from the spawn point)."""

    target_units: int


@dataclass(frozen=True)
class RealAttack:
    move: MoveId


@dataclass(frozen=True)
class FalseAttack:
    move: MoveId


MonsterDecision = Union[Walk, RealAttack, FalseAttack]


@dataclass(frozen=True)
class TickTable:
    """Config durations pre-converted to integer ticks."""

    period: int
    shield: int
    wait: int
    false_attack: int
    windup: int
    cooldowns: dict
    step_m: float
    range_units: int
    dead_zone_units: int

    @staticmethod
    def build(config: GameConfig) -> "TickTable":
        step = WALK_SPEED * config.tick
        return TickTable(
            period=config.ticks(config.monster_action_period),
            shield=config.ticks(config.shield_duration),
            wait=config.ticks(config.inter_life_wait),
            false_attack=config.ticks(config.false_attack_duration),
            windup=config.ticks(config.real_attack_windup),
            cooldowns={spec.id: config.ticks(spec.cooldown) for spec in config.move_table},
            step_m=step,
            range_units=round(config.monster_move_range / step),
            dead_zone_units=round(DEAD_ZONE / step),
        )


class GameState:
    """Full simulation state for one session. Not thread-safe; one owner."""

    def __init__(self, config: GameConfig, seed: int, start: StartMode):
        config.validate()
        self.config = config
        self.seed = seed
        self.start = start
        self.ticks = TickTable.build(config)
        self.tick_count = 0
        self.event_seq = 0
        self.rng: Stream = engine_stream(seed)
        self.player_hp = config.player_max_hp
        self.player_lives = config.lives_each
        self.monster_hp = config.monster_max_hp
        self.monster_lives = config.lives_each
        self.pending_attack: Optional[PendingAttack] = None
        self.shield_blocked_any = False
        self.buf = array("q", [0] * K.N_SLOTS)
        self.buf[K.CLOCK] = self.ticks.period
        self.phase: GamePhase
        if start is StartMode.WITH_TRAINING:
            self.phase = Training(stage=TRAINING_ORDER[0], progress=0, awaiting_zoom=False)
        else:
            self.phase = Gameplay()

    # -- read-only views ----------------------------------------------------

    @property
    def time(self) -> float:
        return round_time(self.tick_count * self.config.tick)

    @property
    def terminal(self) -> bool:
        return isinstance(self.phase, Terminal)

    @property
    def shield_active(self) -> bool:
        return self.buf[K.SHIELD] > 0

    @property
    def shield_remaining(self) -> float:
        return round_time(self.buf[K.SHIELD] * self.config.tick)

    @property
    def monster_position(self) -> float:
        return round_time(self.buf[K.POS] * self.ticks.step_m)

    @property
    def inter_life_remaining(self) -> float:
        return round_time(self.buf[K.WAIT] * self.config.tick)

    def cooldown_remaining(self, move: MoveId) -> float:
        return round_time(self.buf[_COOLDOWN_SLOT[move]] * self.config.tick)

    def pending_attack_elapsed(self) -> Optional[float]:
        """Seconds since the monster's pending attack was launched."""
        if self.pending_attack is None:
            return None
        done = self.pending_attack.total_ticks - self.buf[K.ATTACK]
        return round_time(done * self.config.tick)

    def fingerprint(self) -> dict:
        """Field-by-field snapshot used for equality and determinism checks."""
        return {
            "config": self.config.to_dict(),
            "seed": self.seed,
            "start": self.start.value,
            "tick_count": self.tick_count,
            "event_seq": self.event_seq,
            "rng_state": self.rng.getstate()[0],
            "phase": phase_to_dict(self.phase),
            "player_hp": self.player_hp,
            "player_lives": self.player_lives,
            "monster_hp": self.monster_hp,
            "monster_lives": self.monster_lives,
            "pending": None
            if self.pending_attack is None
            else [self.pending_attack.move.value, self.pending_attack.is_false, self.pending_attack.total_ticks],
            "shield_blocked_any": self.shield_blocked_any,
            "buf": list(self.buf),
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GameState):
            return NotImplemented
        return self.fingerprint() == other.fingerprint()

    # -- event plumbing -----------------------------------------------------

    def _next_seq(self) -> int:
        seq = self.event_seq
        self.event_seq += 1
        return seq

    def _emit(self, cls, **kw) -> GameEvent:
        return cls(seq=self._next_seq(), time=self.time, **kw)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def new_game(config: GameConfig, seed: int, start: StartMode = StartMode.WITH_TRAINING) -> GameState:
    """Validate the config and build the initial state (time zero, full HP)."""
    return GameState(config, seed, start)


def advance(state: GameState, inputs: Sequence[GestureInput] = ()) -> List[GameEvent]:
    """Step one tick; apply `inputs` in order; return the events that occurred."""
    if state.terminal:
        raise AdvanceAfterTerminal("session already ended")
    state.tick_count += 1
    events: List[GameEvent] = []

    flags = K.tick_timers(state.buf, _mode_bits(state))
    if flags & K.F_SHIELD_EXPIRED:
        events.append(state._emit(ShieldExpired, blocked_any=state.shield_blocked_any))
        state.shield_blocked_any = False
    if flags & K.F_ATTACK_DUE:
        events.extend(_resolve_monster_attack(state))
    if flags & K.F_ACTION_DUE and not state.terminal:
        events.extend(_monster_action(state))
    if flags & K.F_WAIT_DONE:
        events.extend(_finish_inter_life_wait(state))

    for inp in inputs:
        if state.terminal:
            break  # terminal is absorbing: late inputs in the same tick are dropped
        events.extend(submit_gesture(state, inp))
    return events


def submit_gesture(state: GameState, inp: GestureInput) -> List[GameEvent]:
    """Record a gesture and execute its effect if the rules currently allow it."""
    if state.terminal:
        return []
    action = _plan_gesture(state, inp)
    events: List[GameEvent] = [
        state._emit(
            GestureSubmitted,
            move=inp.gesture,
            direction=inp.direction,
            recognized=inp.recognized,
            executed=action is not None,
        )
    ]
    if action is not None:
        events.extend(action())
    return events


def monster_decide(available: Sequence[MoveId], config: GameConfig, rng: Stream) -> MonsterDecision:
    """Choose the monster's next action.

    With no attack available the monster walks without rolling intent. With an
    attack available: attack with probability p_attack_intent (an even pick if
    two skills are up), then in the uncertain condition the attack is a feint
    with probability p_false_attack.
    """
    range_units = round(config.monster_move_range / (WALK_SPEED * config.tick))
    if not available:
        return Walk(target_units=rng.randint(-range_units, range_units))
    if rng.random() >= config.p_attack_intent:
        return Walk(target_units=rng.randint(-range_units, range_units))
    if len(available) == 1:
        move = available[0]
    else:
        move = available[0] if rng.random() < 0.5 else available[1]
    if config.condition is Condition.UNCERTAIN and rng.random() < config.p_false_attack:
        return FalseAttack(move)
    return RealAttack(move)


def roll_attack_modifiers(config: GameConfig, rng: Stream) -> Tuple[bool, bool]:
    """Roll (missed, crit). Certain condition: (False, False) with zero draws.

    Miss is rolled first; a missed attack cannot crit, so at most one of the
    two is ever true.
    """
    if config.condition is not Condition.UNCERTAIN:
        return (False, False)
    missed = rng.random() < config.p_miss
    crit = False if missed else rng.random() < config.p_crit
    return (missed, crit)


def check_termination(state: GameState) -> Optional[Actor]:
    """Winner if the session has ended, else None."""
    if isinstance(state.phase, Terminal):
        return state.phase.winner
    return None


# ---------------------------------------------------------------------------
# Tick internals
# ---------------------------------------------------------------------------


def _mode_bits(state: GameState) -> int:
    phase = state.phase
    if isinstance(phase, Gameplay):
        return K.M_CLOCK | K.M_WALK
    if isinstance(phase, Training):
        # Only the shield-training stage has an active opponent, and it stops
        # attacking once both required blocks are in.
        if (
            phase.stage is Gesture.ZOOM_SQUAT
            and not phase.awaiting_zoom
            and phase.progress < TRAINING_PROGRESS_GOAL
        ):
            return K.M_CLOCK
        return 0
    if isinstance(phase, InterLifeWait):
        return K.M_WAIT
    return 0


def _round_half_away(value: float) -> int:
    return math.floor(value + 0.5)


def _scaled_damage(state: GameState, base: int, crit: bool) -> int:
    if not crit:
        return base
    return _round_half_away(base * state.config.crit_multiplier)


def _available_monster_moves(state: GameState) -> Tuple[MoveId, ...]:
    if state.pending_attack is not None:
        return ()
    return tuple(m for m in MONSTER_MOVES if state.buf[_COOLDOWN_SLOT[m]] == 0)


def _monster_action(state: GameState) -> List[GameEvent]:
    events: List[GameEvent] = []
    phase = state.phase
    if isinstance(phase, Gameplay):
        decision = monster_decide(_available_monster_moves(state), state.config, state.rng)
        events.extend(_apply_monster_decision(state, decision))
        state.buf[K.CLOCK] = state.ticks.period
    elif isinstance(phase, Training):
        # Scripted trainer: a real attack whenever a skill is up, otherwise idle.
        available = _available_monster_moves(state)
        if available:
            if len(available) == 1:
                move = available[0]
            else:
                move = available[0] if state.rng.random() < 0.5 else available[1]
            events.extend(_launch_monster_attack(state, move, is_false=False))
        state.buf[K.CLOCK] = state.ticks.period
    return events


def _apply_monster_decision(state: GameState, decision: MonsterDecision) -> List[GameEvent]:
    if isinstance(decision, Walk):
        state.buf[K.TARGET] = decision.target_units
        destination = round_time(decision.target_units * state.ticks.step_m)
        return [state._emit(MonsterWalked, new_position=destination)]
    if isinstance(decision, RealAttack):
        return _launch_monster_attack(state, decision.move, is_false=False)
    return _launch_monster_attack(state, decision.move, is_false=True)


def _launch_monster_attack(state: GameState, move: MoveId, is_false: bool) -> List[GameEvent]:
    total = state.ticks.false_attack if is_false else state.ticks.windup
    state.pending_attack = PendingAttack(move, is_false, total)
    state.buf[K.ATTACK] = total
    # A feint plays the same skill animation, so it occupies the same cooldown.
    state.buf[_COOLDOWN_SLOT[move]] = state.ticks.cooldowns[move]
    return [state._emit(AttackLaunched, actor=Actor.MONSTER, move=move, is_false=is_false)]


def _resolve_monster_attack(state: GameState) -> List[GameEvent]:
    pending = state.pending_attack
    state.pending_attack = None
    if pending is None:
        return []
    if pending.is_false:
        return []  # the feint just fizzles; there is nothing to block
    if isinstance(state.phase, Training):
        return _resolve_training_block(state, pending.move)
    if not isinstance(state.phase, Gameplay):
        return []
    events: List[GameEvent] = []
    spec = state.config.move(pending.move)
    missed, crit = roll_attack_modifiers(state.config, state.rng)
    if missed:
        events.append(
            state._emit(
                AttackResolved,
                actor=Actor.MONSTER, move=pending.move,
                missed=True, crit=False, damage_dealt=0, blocked=False,
            )
        )
        return events
    if state.shield_active:
        # The sphere absorbs the blow outright, crit or not, and the save
        # heals the player (never past max HP).
        state.shield_blocked_any = True
        events.append(
            state._emit(
                AttackResolved,
                actor=Actor.MONSTER, move=pending.move,
                missed=False, crit=False, damage_dealt=0, blocked=True,
            )
        )
        heal = min(state.config.shield_heal, state.config.player_max_hp - state.player_hp)
        state.player_hp += heal
        events.append(state._emit(HealApplied, amount=heal))
        return events
    damage = _scaled_damage(state, spec.damage, crit)
    events.append(
        state._emit(
            AttackResolved,
            actor=Actor.MONSTER, move=pending.move,
            missed=False, crit=crit, damage_dealt=damage, blocked=False,
        )
    )
    state.player_hp = max(0, state.player_hp - damage)
    if state.player_hp == 0:
        events.extend(_on_life_lost(state, Actor.PLAYER))
    return events


def _resolve_training_block(state: GameState, move: MoveId) -> List[GameEvent]:
    """Training attacks are harmless; a block counts toward stage progress."""
    blocked = state.shield_active
    events = [
        state._emit(
            AttackResolved,
            actor=Actor.MONSTER, move=move,
            missed=False, crit=False, damage_dealt=0, blocked=blocked,
        )
    ]
    if blocked:
        state.shield_blocked_any = True
        events.extend(_training_progress(state))
    return events


def _finish_inter_life_wait(state: GameState) -> List[GameEvent]:
    if not isinstance(state.phase, InterLifeWait):
        return []
    # The monster re-enters on a fresh life at its spawn point.
    state.buf[K.POS] = 0
    state.buf[K.TARGET] = 0
    state.buf[K.CLOCK] = state.ticks.period
    return _change_phase(state, Gameplay())


def _change_phase(state: GameState, new_phase: GamePhase) -> List[GameEvent]:
    old = phase_to_dict(state.phase)
    state.phase = new_phase
    return [state._emit(PhaseChanged, from_phase=old, to_phase=phase_to_dict(new_phase))]


def _on_life_lost(state: GameState, victim: Actor) -> List[GameEvent]:
    events: List[GameEvent] = [state._emit(LifeLost, actor=victim)]
    if victim is Actor.PLAYER:
        state.player_lives -= 1
        _abort_pending_attack(state)
        if state.shield_active:
            events.append(state._emit(ShieldExpired, blocked_any=state.shield_blocked_any))
            state.buf[K.SHIELD] = 0
            state.shield_blocked_any = False
        if state.player_lives == 0:
            events.extend(_enter_terminal(state, Actor.MONSTER))
        else:
            events.extend(_change_phase(state, Revive(defenses_done=0, awaiting_zoom=False)))
    else:
        state.monster_lives -= 1
        _abort_pending_attack(state)
        if state.monster_lives == 0:
            events.extend(_enter_terminal(state, Actor.PLAYER))
        else:
            state.monster_hp = state.config.monster_max_hp
            state.buf[K.WAIT] = state.ticks.wait
            events.extend(_change_phase(state, InterLifeWait()))
    return events


def _abort_pending_attack(state: GameState) -> None:
    state.pending_attack = None
    state.buf[K.ATTACK] = 0


def _enter_terminal(state: GameState, winner: Actor) -> List[GameEvent]:
    events = _change_phase(state, Terminal(winner=winner))
    events.append(state._emit(SessionEnded, winner=winner))
    return events


# ---------------------------------------------------------------------------
# Gesture handling
# ---------------------------------------------------------------------------


def _plan_gesture(state: GameState, inp: GestureInput):
    """Return a zero-arg closure executing the gesture, or None if it has no effect."""
    if not inp.recognized:
        return None
    phase = state.phase
    gesture = inp.gesture

    if isinstance(phase, Gameplay):
        move = GESTURE_TO_MOVE.get(gesture)
        if move is None:  # bare zoom has no gameplay effect
            return None
        if state.buf[_COOLDOWN_SLOT[move]] > 0:
            return None
        if move is MoveId.ZOOM_SQUAT:
            if state.shield_active:
                return None
            return lambda: _activate_shield(state)
        return lambda: _player_attack(state, move, inp.direction)

    if isinstance(phase, Training):
        if phase.awaiting_zoom:
            if gesture is Gesture.ZOOM:
                return lambda: _advance_training_stage(state)
            return None
        if gesture is not phase.stage:
            return None  # only the move being taught is live during training
        move = GESTURE_TO_MOVE[gesture]
        if state.buf[_COOLDOWN_SLOT[move]] > 0:
            return None
        if move is MoveId.ZOOM_SQUAT:
            if state.shield_active:
                return None
            return lambda: _activate_shield(state)
        return lambda: _training_attack(state, move, inp.direction)

    if isinstance(phase, Revive):
        if phase.awaiting_zoom:
            if gesture is Gesture.ZOOM:
                return lambda: _finish_revive(state)
            return None
        if gesture is Gesture.ZOOM_SQUAT and state.buf[K.CD_ZOOM_SQUAT] == 0:
            return lambda: _revive_squat(state)
        return None

    return None  # inter-life wait is a rest period; terminal handled upstream


def _activate_shield(state: GameState) -> List[GameEvent]:
    state.buf[K.CD_ZOOM_SQUAT] = state.ticks.cooldowns[MoveId.ZOOM_SQUAT]
    state.buf[K.SHIELD] = state.ticks.shield
    state.shield_blocked_any = False
    return [state._emit(ShieldActivated)]


def _player_attack(state: GameState, move: MoveId, direction: Direction) -> List[GameEvent]:
    spec = state.config.move(move)
    state.buf[_COOLDOWN_SLOT[move]] = state.ticks.cooldowns[move]
    events: List[GameEvent] = [
        state._emit(AttackLaunched, actor=Actor.PLAYER, move=move, is_false=False)
    ]
    if spec.kind is MoveKind.MELEE_ATTACK and not _melee_reaches(state, direction):
        # Swung the wrong way: the attack whiffs without any modifier rolls.
        events.append(
            state._emit(
                AttackResolved,
                actor=Actor.PLAYER, move=move,
                missed=False, crit=False, damage_dealt=0, blocked=False,
            )
        )
        return events
    missed, crit = roll_attack_modifiers(state.config, state.rng)
    if missed:
        events.append(
            state._emit(
                AttackResolved,
                actor=Actor.PLAYER, move=move,
                missed=True, crit=False, damage_dealt=0, blocked=False,
            )
        )
        return events
    damage = _scaled_damage(state, spec.damage, crit)
    events.append(
        state._emit(
            AttackResolved,
            actor=Actor.PLAYER, move=move,
            missed=False, crit=crit, damage_dealt=damage, blocked=False,
        )
    )
    state.monster_hp = max(0, state.monster_hp - damage)
    if state.monster_hp == 0:
        events.extend(_on_life_lost(state, Actor.MONSTER))
    return events


def _melee_reaches(state: GameState, direction: Direction) -> bool:
    pos = state.buf[K.POS]
    if abs(pos) <= state.ticks.dead_zone_units:
        return True
    if direction is Direction.RIGHT and pos > 0:
        return True
    if direction is Direction.LEFT and pos < 0:
        return True
    return False


def _training_attack(state: GameState, move: MoveId, direction: Direction) -> List[GameEvent]:
    spec = state.config.move(move)
    state.buf[_COOLDOWN_SLOT[move]] = state.ticks.cooldowns[move]
    events: List[GameEvent] = [
        state._emit(AttackLaunched, actor=Actor.PLAYER, move=move, is_false=False)
    ]
    reaches = spec.kind is not MoveKind.MELEE_ATTACK or _melee_reaches(state, direction)
    damage = spec.damage if reaches else 0
    events.append(
        state._emit(
            AttackResolved,
            actor=Actor.PLAYER, move=move,
            missed=False, crit=False, damage_dealt=damage, blocked=False,
        )
    )
    if damage > 0:
        events.extend(_training_progress(state))
    return events


def _training_progress(state: GameState) -> List[GameEvent]:
    phase = state.phase
    assert isinstance(phase, Training)
    progress = phase.progress + 1
    awaiting = progress >= TRAINING_PROGRESS_GOAL
    state.phase = Training(stage=phase.stage, progress=progress, awaiting_zoom=awaiting)
    return []


def _advance_training_stage(state: GameState) -> List[GameEvent]:
    phase = state.phase
    assert isinstance(phase, Training)
    index = TRAINING_ORDER.index(phase.stage)
    if index + 1 < len(TRAINING_ORDER):
        next_stage = TRAINING_ORDER[index + 1]
        events = _change_phase(state, Training(stage=next_stage, progress=0, awaiting_zoom=False))
        if next_stage is Gesture.ZOOM_SQUAT:
            state.buf[K.CLOCK] = state.ticks.period  # arm the trainer's cadence
        return events
    # Confirm-zoom after the last stage starts the real fight.
    state.buf[K.CLOCK] = state.ticks.period
    return _change_phase(state, Gameplay())


def _revive_squat(state: GameState) -> List[GameEvent]:
    phase = state.phase
    assert isinstance(phase, Revive)
    state.buf[K.CD_ZOOM_SQUAT] = state.ticks.cooldowns[MoveId.ZOOM_SQUAT]
    done = phase.defenses_done + 1
    awaiting = done >= state.config.revive_defense_count
    state.phase = Revive(defenses_done=done, awaiting_zoom=awaiting)
    return []


def _finish_revive(state: GameState) -> List[GameEvent]:
    state.player_hp = state.config.player_max_hp
    state.buf[K.CLOCK] = state.ticks.period
    return _change_phase(state, Gameplay())
