"""Regenerate session_frames.jsonl: an authentic server frame sequence.

Drives a short scripted session through the Python engine and records the
exact frames the service would stream (welcome, snapshots at 10 Hz, the
event stream, ended). Deterministic: rerunning this script reproduces the
file byte-for-byte. Requires the feintfight package to be installed.
"""

import math
import pathlib

from feintfight.config import GameConfig
from feintfight.engine.core import GestureInput, StartMode, advance, new_game
from feintfight.events import SCHEMA_VERSION
from feintfight.harness import SessionLog
from feintfight.service.protocol import Welcome, encode
from feintfight.service.server import replay_stream
from feintfight.types import Condition, Direction, Gesture

CONFIG = GameConfig(
    condition=Condition.UNCERTAIN,
    monster_max_hp=60,
    player_max_hp=50,
    lives_each=1,
)

#: (tick, gesture, direction): shield early, then two ranged attacks.
SCRIPT = [
    (10, Gesture.ZOOM_SQUAT, Direction.NEUTRAL),
    (20, Gesture.ZOOM_KICK, Direction.NEUTRAL),
    (122, Gesture.ZOOM_KICK, Direction.NEUTRAL),
    (224, Gesture.ZOOM_KICK, Direction.NEUTRAL),
]

SEED = 18


def scripted_log(seed: int) -> SessionLog:
    state = new_game(CONFIG, seed, StartMode.GAMEPLAY_ONLY)
    schedule = {tick: [GestureInput(g, d, True)] for tick, g, d in SCRIPT}
    events = []
    for tick in range(1, 400):
        events.extend(advance(state, schedule.get(tick, [])))
        if state.terminal:
            break
    return SessionLog(
        config=CONFIG, seed=seed, agent_seed=None, profile_name=None,
        start=StartMode.GAMEPLAY_ONLY, capped=not state.terminal, events=events,
    )


def main() -> None:
    log = scripted_log(SEED)
    assert not log.capped, "scripted session must finish"
    kinds = {e.kind for e in log.events}
    assert "session_ended" in kinds
    frames = [encode(Welcome(SCHEMA_VERSION, CONFIG.to_dict()))]
    frames += [encode(message) for _, message in replay_stream(log, math.inf)]
    out = pathlib.Path(__file__).with_name("session_frames.jsonl")
    out.write_text("\n".join(frames) + "\n", encoding="utf-8")
    print(f"wrote {len(frames)} frames to {out}")
    print("event kinds:", sorted(kinds))
    tail = [f for f in frames[-12:]]
    for f in tail:
        print(" ", f[:150])


if __name__ == "__main__":
    main()
