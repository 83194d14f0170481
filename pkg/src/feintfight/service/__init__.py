"""Live play service (WebSocket, schema gf/1) and replay streaming."""

from .protocol import (
    Ended,
    EventMsg,
    GestureMsg,
    Hello,
    Pause,
    ProtocolDecodeError,
    ProtocolError,
    Resume,
    Snapshot,
    Start,
    Welcome,
    decode,
    encode,
    snapshot_of,
)
from .server import DEFAULT_PORT, GameService, LiveSession, replay_stream, run_server, serve_async

__all__ = [
    "DEFAULT_PORT",
    "Ended",
    "EventMsg",
    "GameService",
    "GestureMsg",
    "Hello",
    "LiveSession",
    "Pause",
    "ProtocolDecodeError",
    "ProtocolError",
    "Resume",
    "Snapshot",
    "Start",
    "Welcome",
    "decode",
    "encode",
    "replay_stream",
    "run_server",
    "serve_async",
    "snapshot_of",
]
