"""Session runner and the event-log file format.

A SessionLog is the complete record of one session: a header (config, seeds,
profile, start mode) plus every event. Logs serialize to newline-delimited
JSON with deterministic field ordering, so determinism checks can compare
files byte-for-byte, and a log alone is enough to replay the session.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..agents.policy import AgentMemory, GestureIntent, decide, observe
from ..agents.profiles import AgentProfile
from ..config import GameConfig
from ..engine.core import GestureInput, StartMode, advance, new_game
from ..errors import MalformedLogError
from ..events import (
    SCHEMA_VERSION,
    GameEvent,
    GestureSubmitted,
    event_from_line,
    event_to_line,
)
from ..rng import agent_stream
import json

#: Sessions are abandoned (flagged, not failed) after this much simulated time.
DEFAULT_TIME_CAP = 30.0 * 60.0


@dataclass
class SessionLog:
    config: GameConfig
    seed: int
    agent_seed: Optional[int]
    profile_name: Optional[str]
    start: StartMode
    capped: bool
    events: List[GameEvent] = field(default_factory=list)

    @property
    def duration(self) -> float:
        return self.events[-1].time if self.events else 0.0

    def header_line(self) -> str:
        header = {
            "schema_version": SCHEMA_VERSION,
            "config": self.config.to_dict(),
            "seed": self.seed,
            "agent_seed": self.agent_seed,
            "profile": self.profile_name,
            "start": self.start.value,
            "capped": self.capped,
        }
        return json.dumps(header, separators=(",", ":"))

    def to_text(self) -> str:
        out = io.StringIO()
        out.write(self.header_line())
        out.write("\n")
        for event in self.events:
            out.write(event_to_line(event))
            out.write("\n")
        return out.getvalue()

    def write(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(self.to_text())

    @staticmethod
    def from_text(text: str) -> "SessionLog":
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines:
            raise MalformedLogError("empty log")
        try:
            header = json.loads(lines[0])
        except json.JSONDecodeError as exc:
            raise MalformedLogError(f"bad header: {exc}") from exc
        if not isinstance(header, dict) or "config" not in header:
            raise MalformedLogError("first record must be the log header")
        if header.get("schema_version") != SCHEMA_VERSION:
            raise MalformedLogError(f"unsupported schema {header.get('schema_version')!r}")
        log = SessionLog(
            config=GameConfig.from_dict(header["config"]),
            seed=header["seed"],
            agent_seed=header.get("agent_seed"),
            profile_name=header.get("profile"),
            start=StartMode(header.get("start", StartMode.GAMEPLAY_ONLY.value)),
            capped=header.get("capped", False),
            events=[event_from_line(line) for line in lines[1:]],
        )
        _check_log_shape(log.events)
        return log

    @staticmethod
    def read(path: str) -> "SessionLog":
        with open(path, "r", encoding="utf-8") as handle:
            return SessionLog.from_text(handle.read())


def _check_log_shape(events: List[GameEvent]) -> None:
    last_seq, last_time = -1, 0.0
    for event in events:
        if event.seq <= last_seq:
            raise MalformedLogError(f"seq not strictly increasing at {event.seq}")
        if event.time < last_time:
            raise MalformedLogError(f"time went backwards at seq {event.seq}")
        last_seq, last_time = event.seq, event.time


def run_session(
    config: GameConfig,
    profile: AgentProfile,
    seed_pair: Tuple[int, int],
    start: StartMode = StartMode.GAMEPLAY_ONLY,
    time_cap: float = DEFAULT_TIME_CAP,
) -> SessionLog:
    """Drive one agent session to termination (or the simulated-time cap).

    The loop each tick: observe -> decide -> deliver the intent due this tick
    -> advance. A freshly returned intent replaces the queued one, which lets
    a reactive defense preempt a not-yet-issued attack.
    """
    engine_seed, agent_seed = seed_pair
    profile.validate(config)
    state = new_game(config, engine_seed, start)
    memory = AgentMemory()
    rng = agent_stream(agent_seed)
    events: List[GameEvent] = []
    pending: Optional[GestureIntent] = None
    cap_ticks = max(1, round(time_cap / config.tick))

    for tick in range(1, cap_ticks + 1):
        obs = observe(state)
        intent = decide(profile, obs, memory, rng)
        if intent is not None:
            pending = intent
        inputs: List[GestureInput] = []
        if pending is not None and pending.issue_tick <= tick:
            inputs.append(pending.to_input())
            pending = None
        events.extend(advance(state, inputs))
        if state.terminal:
            break

    return SessionLog(
        config=config,
        seed=engine_seed,
        agent_seed=agent_seed,
        profile_name=profile.name,
        start=start,
        capped=not state.terminal,
        events=events,
    )


def replay_session(log: SessionLog, time_cap: float = DEFAULT_TIME_CAP) -> SessionLog:
    """Re-simulate a session from its logged input trace alone.

    Every GestureSubmitted record doubles as the input trace (move, direction,
    recognized flag, tick timestamp), so a fresh engine fed those inputs must
    reproduce the original event stream exactly.
    """
    config = log.config
    schedule: Dict[int, List[GestureInput]] = {}
    for event in log.events:
        if isinstance(event, GestureSubmitted):
            tick = round(event.time / config.tick)
            schedule.setdefault(tick, []).append(
                GestureInput(event.move, event.direction, event.recognized)
            )
    state = new_game(config, log.seed, log.start)
    events: List[GameEvent] = []
    cap_ticks = max(1, round(time_cap / config.tick))
    for tick in range(1, cap_ticks + 1):
        events.extend(advance(state, schedule.get(tick, [])))
        if state.terminal:
            break
    return SessionLog(
        config=config,
        seed=log.seed,
        agent_seed=log.agent_seed,
        profile_name=log.profile_name,
        start=log.start,
        capped=not state.terminal,
        events=events,
    )
