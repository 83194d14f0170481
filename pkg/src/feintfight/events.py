"""Typed game events and their newline-delimited JSON codec.

The event log is the only substrate for metrics, replay, and the wire
protocol, so records serialize with a fixed key order and tick-derived
timestamps; two runs of the same session produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import MalformedLogError
from .types import Actor, Direction, Gesture, MoveId, phase_from_dict

SCHEMA_VERSION = "gf/1"


def round_time(seconds: float) -> float:
    """Collapse float noise from tick arithmetic (0.05 * 3 -> 0.15)."""
    return round(seconds, 9)


@dataclass(frozen=True)
class GameEvent:
    seq: int
    time: float


@dataclass(frozen=True)
class GestureSubmitted(GameEvent):
    # `executed` marks submissions that actually triggered their effect
    # (launch, shield, revive count, zoom confirm); `direction` is retained
    # so a live session's input trace can be replayed from the log alone.
    move: Gesture
    direction: Direction
    recognized: bool
    executed: bool

    kind = "gesture_submitted"

    def payload(self) -> dict:
        return {
            "move": self.move.value,
            "direction": self.direction.value,
            "recognized": self.recognized,
            "executed": self.executed,
        }


@dataclass(frozen=True)
class AttackLaunched(GameEvent):
    actor: Actor
    move: MoveId
    is_false: bool

    kind = "attack_launched"

    def payload(self) -> dict:
        return {"actor": self.actor.value, "move": self.move.value, "is_false": self.is_false}


@dataclass(frozen=True)
class AttackResolved(GameEvent):
    # damage_dealt is the nominal damage of the blow; HP clamps at zero in
    # state, so a killing blow may report more than the defender had left.
    actor: Actor
    move: MoveId
    missed: bool
    crit: bool
    damage_dealt: int
    blocked: bool

    kind = "attack_resolved"

    def payload(self) -> dict:
        return {
            "actor": self.actor.value,
            "move": self.move.value,
            "missed": self.missed,
            "crit": self.crit,
            "damage_dealt": self.damage_dealt,
            "blocked": self.blocked,
        }


@dataclass(frozen=True)
class ShieldActivated(GameEvent):
    kind = "shield_activated"

    def payload(self) -> dict:
        return {}


@dataclass(frozen=True)
class ShieldExpired(GameEvent):
    blocked_any: bool

    kind = "shield_expired"

    def payload(self) -> dict:
        return {"blocked_any": self.blocked_any}


@dataclass(frozen=True)
class HealApplied(GameEvent):
    amount: int

    kind = "heal_applied"

    def payload(self) -> dict:
        return {"amount": self.amount}


@dataclass(frozen=True)
class LifeLost(GameEvent):
    actor: Actor

    kind = "life_lost"

    def payload(self) -> dict:
        return {"actor": self.actor.value}


@dataclass(frozen=True)
class PhaseChanged(GameEvent):
    from_phase: dict
    to_phase: dict

    kind = "phase_changed"

    def payload(self) -> dict:
        return {"from": self.from_phase, "to": self.to_phase}


@dataclass(frozen=True)
class MonsterWalked(GameEvent):
    #: Destination offset (meters from spawn); the walk itself takes time.
    new_position: float

    kind = "monster_walked"

    def payload(self) -> dict:
        return {"new_position": self.new_position}


@dataclass(frozen=True)
class SessionEnded(GameEvent):
    winner: Actor

    kind = "session_ended"

    def payload(self) -> dict:
        return {"winner": self.winner.value}


_EVENT_CLASSES = {
    cls.kind: cls  # type: ignore[attr-defined]
    for cls in (
        GestureSubmitted,
        AttackLaunched,
        AttackResolved,
        ShieldActivated,
        ShieldExpired,
        HealApplied,
        LifeLost,
        PhaseChanged,
        MonsterWalked,
        SessionEnded,
    )
}


def event_to_record(event: GameEvent) -> dict:
    record = {"seq": event.seq, "time": event.time, "kind": event.kind}  # type: ignore[attr-defined]
    record.update(event.payload())  # type: ignore[attr-defined]
    return record


def event_to_line(event: GameEvent) -> str:
    return json.dumps(event_to_record(event), separators=(",", ":"))


def event_from_record(record: dict) -> GameEvent:
    try:
        kind = record["kind"]
        cls = _EVENT_CLASSES[kind]
        seq, time = record["seq"], record["time"]
        if cls is GestureSubmitted:
            return GestureSubmitted(
                seq, time,
                move=Gesture(record["move"]),
                direction=Direction(record["direction"]),
                recognized=record["recognized"],
                executed=record["executed"],
            )
        if cls is AttackLaunched:
            return AttackLaunched(seq, time, Actor(record["actor"]), MoveId(record["move"]), record["is_false"])
        if cls is AttackResolved:
            return AttackResolved(
                seq, time,
                Actor(record["actor"]), MoveId(record["move"]),
                record["missed"], record["crit"], record["damage_dealt"], record["blocked"],
            )
        if cls is ShieldActivated:
            return ShieldActivated(seq, time)
        if cls is ShieldExpired:
            return ShieldExpired(seq, time, record["blocked_any"])
        if cls is HealApplied:
            return HealApplied(seq, time, record["amount"])
        if cls is LifeLost:
            return LifeLost(seq, time, Actor(record["actor"]))
        if cls is PhaseChanged:
            phase_from_dict(record["from"])  # validate shape
            phase_from_dict(record["to"])
            return PhaseChanged(seq, time, record["from"], record["to"])
        if cls is MonsterWalked:
            return MonsterWalked(seq, time, record["new_position"])
        if cls is SessionEnded:
            return SessionEnded(seq, time, Actor(record["winner"]))
    except MalformedLogError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise MalformedLogError(f"bad event record: {exc}") from exc
    raise MalformedLogError(f"unknown event kind {record.get('kind')!r}")


def event_from_line(line: str) -> GameEvent:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedLogError(f"not JSON: {exc}") from exc
    if not isinstance(record, dict):
        raise MalformedLogError("event record must be an object")
    return event_from_record(record)
