"""Wire protocol for live play and replay streaming (schema "gf/1").

Text frames, one JSON object each, with "type" as the first field. Clients
send hello/start/gesture/pause/resume; the server answers with welcome,
10 Hz state snapshots, the exact event stream, a final ended frame, and
protocol_error frames for anything it cannot accept (the connection stays
open). decode(encode(m)) == m for every variant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

from ..engine.core import GameState
from ..types import Condition, Direction, Gesture, InterLifeWait, MoveId, phase_to_dict


class ProtocolDecodeError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


# -- client -> server ----------------------------------------------------------


@dataclass(frozen=True)
class Hello:
    client_version: str = ""

    type = "hello"

    def payload(self) -> dict:
        return {"client_version": self.client_version}


@dataclass(frozen=True)
class Start:
    condition: Condition = Condition.UNCERTAIN
    with_training: bool = False
    seed: Optional[int] = None

    type = "start"

    def payload(self) -> dict:
        return {"condition": self.condition.value, "with_training": self.with_training, "seed": self.seed}


@dataclass(frozen=True)
class GestureMsg:
    gesture: Gesture
    direction: Direction = Direction.NEUTRAL

    type = "gesture"

    def payload(self) -> dict:
        return {"gesture": self.gesture.value, "direction": self.direction.value}


@dataclass(frozen=True)
class Pause:
    type = "pause"

    def payload(self) -> dict:
        return {}


@dataclass(frozen=True)
class Resume:
    type = "resume"

    def payload(self) -> dict:
        return {}


# -- server -> client ----------------------------------------------------------


@dataclass(frozen=True)
class Welcome:
    schema_version: str
    config: dict

    type = "welcome"

    def payload(self) -> dict:
        return {"schema_version": self.schema_version, "config": self.config}


@dataclass(frozen=True)
class Snapshot:
    time: float
    phase: dict
    player: dict
    monster: dict
    shield: dict

    type = "snapshot"

    def payload(self) -> dict:
        return {
            "time": self.time,
            "phase": self.phase,
            "player": self.player,
            "monster": self.monster,
            "shield": self.shield,
        }


@dataclass(frozen=True)
class EventMsg:
    event: dict

    type = "event"

    def payload(self) -> dict:
        return {"event": self.event}


@dataclass(frozen=True)
class Ended:
    winner: str
    metrics: dict

    type = "ended"

    def payload(self) -> dict:
        return {"winner": self.winner, "metrics": self.metrics}


@dataclass(frozen=True)
class ProtocolError:
    code: str
    message: str = ""

    type = "protocol_error"

    def payload(self) -> dict:
        return {"code": self.code, "message": self.message}


ProtocolMessage = Union[
    Hello, Start, GestureMsg, Pause, Resume,
    Welcome, Snapshot, EventMsg, Ended, ProtocolError,
]

_CLASSES = {cls.type: cls for cls in (
    Hello, Start, GestureMsg, Pause, Resume,
    Welcome, Snapshot, EventMsg, Ended, ProtocolError,
)}


def encode(message: ProtocolMessage) -> str:
    frame = {"type": message.type}
    frame.update(message.payload())
    return json.dumps(frame, separators=(",", ":"))


def decode(text: str) -> ProtocolMessage:
    try:
        frame = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProtocolDecodeError("bad-message", f"frame is not valid JSON: {exc}") from exc
    if not isinstance(frame, dict) or "type" not in frame:
        raise ProtocolDecodeError("bad-message", "frame must be an object with a 'type' field")
    kind = frame["type"]
    cls = _CLASSES.get(kind)
    if cls is None:
        raise ProtocolDecodeError("unknown-type", f"unknown message type {kind!r}")
    try:
        if cls is Hello:
            return Hello(frame.get("client_version", ""))
        if cls is Start:
            return Start(
                condition=Condition(frame.get("condition", "uncertain")),
                with_training=bool(frame.get("with_training", False)),
                seed=frame.get("seed"),
            )
        if cls is GestureMsg:
            return GestureMsg(Gesture(frame["gesture"]), Direction(frame.get("direction", "neutral")))
        if cls is Pause:
            return Pause()
        if cls is Resume:
            return Resume()
        if cls is Welcome:
            return Welcome(frame["schema_version"], frame["config"])
        if cls is Snapshot:
            return Snapshot(frame["time"], frame["phase"], frame["player"], frame["monster"], frame["shield"])
        if cls is EventMsg:
            return EventMsg(frame["event"])
        if cls is Ended:
            return Ended(frame["winner"], frame["metrics"])
        if cls is ProtocolError:
            return ProtocolError(frame["code"], frame.get("message", ""))
    except (KeyError, ValueError, TypeError) as exc:
        raise ProtocolDecodeError("bad-message", f"bad {kind} frame: {exc}") from exc
    raise ProtocolDecodeError("unknown-type", f"unknown message type {kind!r}")


def snapshot_of(state: GameState) -> Snapshot:
    """Project the HUD-relevant state. Never reveals whether a pending attack
    is a feint; the indicator looks identical until resolution."""
    remaining = state.inter_life_remaining if isinstance(state.phase, InterLifeWait) else None
    return Snapshot(
        time=state.time,
        phase=phase_to_dict(state.phase, remaining=remaining),
        player={
            "hp": state.player_hp,
            "lives": state.player_lives,
            "cooldowns": {
                move.value: state.cooldown_remaining(move)
                for move in (MoveId.KICK, MoveId.PUNCH, MoveId.ZOOM_KICK, MoveId.ZOOM_SQUAT)
            },
        },
        monster={
            "hp": state.monster_hp,
            "lives": state.monster_lives,
            "position": state.monster_position,
            "attack_in_progress": state.pending_attack is not None,
            "attack_elapsed": state.pending_attack_elapsed(),
        },
        shield={"active": state.shield_active, "remaining": state.shield_remaining},
    )
