"""Shared enums and game-phase types.

Everything here is plain data: no behaviour beyond (de)serialization helpers,
so the engine, agents, harness, and wire protocol can share one vocabulary.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union


class Condition(str, Enum):
    """Rule variant: the uncertain condition adds feints, misses, and crits."""

    CERTAIN = "certain"
    UNCERTAIN = "uncertain"


class Actor(str, Enum):
    PLAYER = "player"
    MONSTER = "monster"


class Gesture(str, Enum):
    """Player input vocabulary. ZOOM is a confirm gesture, not a combat move."""

    KICK = "kick"
    PUNCH = "punch"
    ZOOM_KICK = "zoom_kick"
    ZOOM_SQUAT = "zoom_squat"
    ZOOM = "zoom"


class MoveId(str, Enum):
    KICK = "kick"
    PUNCH = "punch"
    ZOOM_KICK = "zoom_kick"
    ZOOM_SQUAT = "zoom_squat"
    MONSTER_PUNCH = "monster_punch"
    MONSTER_SQUAT = "monster_squat"


class MoveKind(str, Enum):
    MELEE_ATTACK = "melee_attack"
    RANGED_ATTACK = "ranged_attack"
    DEFENSE = "defense"


class Direction(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    NEUTRAL = "neutral"


#: Gestures that map directly onto a player combat move.
GESTURE_TO_MOVE = {
    Gesture.KICK: MoveId.KICK,
    Gesture.PUNCH: MoveId.PUNCH,
    Gesture.ZOOM_KICK: MoveId.ZOOM_KICK,
    Gesture.ZOOM_SQUAT: MoveId.ZOOM_SQUAT,
}

#: Gestures that count as attacks for metrics purposes.
ATTACK_GESTURES = (Gesture.KICK, Gesture.PUNCH, Gesture.ZOOM_KICK)

#: Order in which moves are taught during the warm-up.
TRAINING_ORDER = (Gesture.KICK, Gesture.PUNCH, Gesture.ZOOM_KICK, Gesture.ZOOM_SQUAT)

#: Hits (attack stages) or successful blocks (defense stage) needed per stage.
TRAINING_PROGRESS_GOAL = 2


# --------------------------------------------------------------------------
# Game phases
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Training:
    """Warm-up: each move is rehearsed in TRAINING_ORDER; a zoom confirms it."""

    stage: Gesture = Gesture.KICK
    progress: int = 0
    awaiting_zoom: bool = False

    name = "training"


@dataclass(frozen=True)
class Gameplay:
    name = "gameplay"


@dataclass(frozen=True)
class Revive:
    """Player is at 0 HP: squat five times, then zoom to rejoin the fight."""

    defenses_done: int = 0
    awaiting_zoom: bool = False

    name = "revive"


@dataclass(frozen=True)
class InterLifeWait:
    """Rest period after the monster loses a (non-final) life."""

    name = "inter_life_wait"


@dataclass(frozen=True)
class Terminal:
    winner: Actor = Actor.PLAYER

    name = "terminal"


GamePhase = Union[Training, Gameplay, Revive, InterLifeWait, Terminal]


def phase_to_dict(phase: GamePhase, remaining: Optional[float] = None) -> dict:
    """Serialize a phase; `remaining` enriches InterLifeWait snapshots."""
    if isinstance(phase, Training):
        return {
            "name": phase.name,
            "stage": phase.stage.value,
            "progress": phase.progress,
            "awaiting_zoom": phase.awaiting_zoom,
        }
    if isinstance(phase, Gameplay):
        return {"name": phase.name}
    if isinstance(phase, Revive):
        return {
            "name": phase.name,
            "defenses_done": phase.defenses_done,
            "awaiting_zoom": phase.awaiting_zoom,
        }
    if isinstance(phase, InterLifeWait):
        out: dict = {"name": phase.name}
        if remaining is not None:
            out["remaining"] = remaining
        return out
    if isinstance(phase, Terminal):
        return {"name": phase.name, "winner": phase.winner.value}
    raise TypeError(f"not a phase: {phase!r}")


def phase_from_dict(data: dict) -> GamePhase:
    name = data["name"]
    if name == "training":
        return Training(
            stage=Gesture(data["stage"]),
            progress=data["progress"],
            awaiting_zoom=data["awaiting_zoom"],
        )
    if name == "gameplay":
        return Gameplay()
    if name == "revive":
        return Revive(
            defenses_done=data["defenses_done"],
            awaiting_zoom=data["awaiting_zoom"],
        )
    if name == "inter_life_wait":
        return InterLifeWait()
    if name == "terminal":
        return Terminal(winner=Actor(data["winner"]))
    raise ValueError(f"unknown phase name: {name!r}")
