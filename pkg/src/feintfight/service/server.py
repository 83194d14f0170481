"""WebSocket play service and log replay streaming.

One session per connection. The engine is advanced on wall-clock-paced ticks;
inbound gestures are queued and applied at the next tick boundary with
recognized=true (direct play bypasses the recognition model), which is
exactly what the log records, so a live session replays bit-identically
headless. Pacing can be scaled (or zeroed) for tests without changing any
simulated outcome.
"""

from __future__ import annotations

import asyncio
import os
import secrets
from typing import Iterator, List, Optional, Tuple

from ..agents.profiles import AgentProfile, DefensePolicy, builtin_profile
from ..config import GameConfig
from ..engine.core import GestureInput, StartMode, advance, new_game
from ..events import SCHEMA_VERSION, event_to_record
from ..harness.metrics import compute_metrics
from ..harness.session import SessionLog
from ..types import Gesture
from .protocol import (
    Ended,
    EventMsg,
    GestureMsg,
    Hello,
    Pause,
    ProtocolDecodeError,
    ProtocolError,
    Resume,
    Start,
    Welcome,
    decode,
    encode,
    snapshot_of,
)

#: Reference profile for metrics on live (human) sessions: only its age feeds
#: the exertion proxy.
LIVE_PROFILE = AgentProfile(
    name="live",
    reaction_latency_mean=0.0,
    reaction_latency_jitter=0.0,
    recognition_prob={g: 1.0 for g in Gesture},
    defense_policy=DefensePolicy.NO_DEFENSE,
    age=30.0,
)

DEFAULT_PORT = 7777


def _snapshot_every(config: GameConfig) -> int:
    # Fixed cadence of 10 snapshots per simulated second.
    return max(1, round(0.1 / config.tick))


class LiveSession:
    """Owns one GameState; applies queued gestures at tick boundaries."""

    def __init__(self, config: GameConfig, seed: int, start: StartMode, tick_scale: float):
        self.config = config
        self.seed = seed
        self.start = start
        self.tick_scale = tick_scale
        self.state = new_game(config, seed, start)
        self.queue: List[GestureInput] = []
        self.paused = False
        self.events = []
        self.done = False

    def log(self) -> SessionLog:
        return SessionLog(
            config=self.config,
            seed=self.seed,
            agent_seed=None,
            profile_name=None,
            start=self.start,
            capped=not self.state.terminal,
            events=list(self.events),
        )

    async def run(self, send) -> None:
        await send(encode(snapshot_of(self.state)))
        every = _snapshot_every(self.config)
        loop = asyncio.get_running_loop()
        period = self.config.tick * self.tick_scale
        next_at = loop.time()
        while not self.state.terminal:
            if period > 0:
                next_at += period
                delay = next_at - loop.time()
                if delay > 0:
                    await asyncio.sleep(delay)
            if self.paused:
                next_at = loop.time()  # do not rush after resume
                await asyncio.sleep(period if period > 0 else 0.01)
                continue
            inputs, self.queue = self.queue, []
            events = advance(self.state, inputs)
            self.events.extend(events)
            for event in events:
                await send(encode(EventMsg(event_to_record(event))))
            if self.state.tick_count % every == 0:
                await send(encode(snapshot_of(self.state)))
            if period == 0:
                await asyncio.sleep(0)  # yield so inbound gestures interleave
        metrics = compute_metrics(self.log(), LIVE_PROFILE)
        winner = self.state.phase.winner.value  # type: ignore[union-attr]
        await send(encode(Ended(winner=winner, metrics=_metric_dict(metrics))))
        self.done = True


def _metric_dict(metrics) -> dict:
    return {k: v for k, v in metrics.values().items()}


class GameService:
    """Accepts connections; each owns at most one live session at a time."""

    def __init__(
        self,
        defaults: GameConfig = GameConfig(),
        log_dir: Optional[str] = None,
        tick_scale: float = 1.0,
    ):
        defaults.validate()
        self.defaults = defaults
        self.log_dir = log_dir
        self.tick_scale = tick_scale
        self.sessions: List[LiveSession] = []

    async def handle(self, ws) -> None:
        session: Optional[LiveSession] = None
        task: Optional[asyncio.Task] = None

        async def send(frame: str) -> None:
            await ws.send(frame)

        try:
            async for raw in ws:
                try:
                    message = decode(raw)
                except ProtocolDecodeError as exc:
                    await send(encode(ProtocolError(exc.code, str(exc))))
                    continue
                if isinstance(message, Hello):
                    await send(encode(Welcome(SCHEMA_VERSION, self.defaults.to_dict())))
                elif isinstance(message, Start):
                    if session is not None and not session.done:
                        await send(encode(ProtocolError("already-running", "session in progress")))
                        continue
                    config = self.defaults.override({"condition": message.condition.value})
                    seed = message.seed if message.seed is not None else secrets.randbits(48)
                    start = StartMode.WITH_TRAINING if message.with_training else StartMode.GAMEPLAY_ONLY
                    session = LiveSession(config, seed, start, self.tick_scale)
                    self.sessions.append(session)
                    task = asyncio.create_task(self._run_session(session, send))
                elif isinstance(message, GestureMsg):
                    if session is None or session.done:
                        await send(encode(ProtocolError("no-session", "start a session first")))
                        continue
                    session.queue.append(GestureInput(message.gesture, message.direction, True))
                elif isinstance(message, (Pause, Resume)):
                    if session is None or session.done:
                        await send(encode(ProtocolError("no-session", "start a session first")))
                        continue
                    session.paused = isinstance(message, Pause)
                    await send(encode(snapshot_of(session.state)))
        finally:
            if task is not None:
                task.cancel()

    async def _run_session(self, session: LiveSession, send) -> None:
        try:
            await session.run(send)
        except Exception:
            session.done = True
            raise
        finally:
            if self.log_dir is not None and session.events:
                path = os.path.join(self.log_dir, f"session-{session.seed}.jsonl")
                session.log().write(path)


async def serve_async(
    host: str = "127.0.0.1",
    port: int = DEFAULT_PORT,
    defaults: GameConfig = GameConfig(),
    log_dir: Optional[str] = None,
    tick_scale: float = 1.0,
):
    """Bind the WebSocket service; returns the running server object."""
    from websockets.asyncio.server import serve

    service = GameService(defaults, log_dir, tick_scale)
    server = await serve(service.handle, host, port)
    server.service = service  # type: ignore[attr-defined]
    return server


def run_server(
    host: str = "127.0.0.1",
    port: int = DEFAULT_PORT,
    defaults: GameConfig = GameConfig(),
    log_dir: Optional[str] = None,
) -> None:
    """Blocking entry point used by the CLI."""

    async def main() -> None:
        server = await serve_async(host, port, defaults, log_dir)
        await server.serve_forever()

    asyncio.run(main())


def replay_stream(log: SessionLog, speed: float = float("inf")) -> Iterator[Tuple[float, object]]:
    """Yield (emit_at_seconds, message) pairs reconstructing a session stream.

    The engine is re-run from the log's header and gesture trace, so the
    snapshots are exact. Timestamps are scaled by 1/speed; an infinite speed
    means batch mode (emit everything at 0). The final Ended message carries
    metrics recomputed from the log itself.
    """
    from ..events import GestureSubmitted

    config = log.config
    schedule = {}
    for event in log.events:
        if isinstance(event, GestureSubmitted):
            tick = round(event.time / config.tick)
            schedule.setdefault(tick, []).append(GestureInput(event.move, event.direction, event.recognized))
    state = new_game(config, log.seed, log.start)
    every = _snapshot_every(config)

    def emit_at(sim_time: float) -> float:
        return 0.0 if speed == float("inf") else sim_time / speed

    yield (0.0, snapshot_of(state))
    last_tick = max([round(e.time / config.tick) for e in log.events], default=0)
    while not state.terminal and state.tick_count < max(last_tick, 1):
        events = advance(state, schedule.get(state.tick_count + 1, []))
        for event in events:
            yield (emit_at(event.time), EventMsg(event_to_record(event)))
        if state.tick_count % every == 0:
            yield (emit_at(state.time), snapshot_of(state))

    profile = LIVE_PROFILE
    if log.profile_name is not None:
        try:
            profile = builtin_profile(log.profile_name)
        except Exception:
            profile = LIVE_PROFILE
    metrics = compute_metrics(log, profile)
    winner = metrics.winner.value if metrics.winner is not None else None
    yield (emit_at(state.time), Ended(winner=winner, metrics=_metric_dict(metrics)))
