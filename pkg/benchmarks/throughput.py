"""Session-throughput benchmark: compiled tick kernel vs pure-Python fallback.

The kernel is chosen at import time, so each measurement runs in a fresh
subprocess (FEINTFIGHT_PURE_PYTHON=1 forces the fallback). Both must produce
byte-identical logs; the benchmark verifies that on one probe session before
timing anything.

Usage: python benchmarks/throughput.py [--sessions 60] [--profile young_gullible]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

_WORKER = """
import json, sys, time
from feintfight.config import GameConfig
from feintfight.agents import builtin_profile
from feintfight.harness import run_session
from feintfight.engine import KERNEL_IMPL
from feintfight.types import Condition

sessions, profile_name, emit_log = int(sys.argv[1]), sys.argv[2], sys.argv[3] == "1"
profile = builtin_profile(profile_name)
config = GameConfig(condition=Condition.UNCERTAIN)

if emit_log:
    print(json.dumps({"probe": run_session(config, profile, (424242, 424242)).to_text(),
                      "kernel": KERNEL_IMPL}))
    sys.exit(0)

# Warm-up, then timed agent sessions (observe/decide in the loop).
run_session(config, profile, (0, 0))
ticks = 0
started = time.perf_counter()
for seed in range(1, sessions + 1):
    log = run_session(config, profile, (seed, seed))
    ticks += round(log.duration / config.tick)
agent_elapsed = time.perf_counter() - started

# Raw engine ticks: gameplay with the monster acting but no agent overhead.
# Pinning the player's HP keeps the session in the gameplay phase for the
# whole measurement (an unattended player would otherwise die and idle).
from feintfight.engine.core import StartMode, advance, new_game
raw_ticks = 0
ticks_per_run = 4000
started = time.perf_counter()
for seed in range(1, sessions + 1):
    state = new_game(config, seed, StartMode.GAMEPLAY_ONLY)
    for _ in range(ticks_per_run):
        advance(state, [])
        state.player_hp = config.player_max_hp
    raw_ticks += ticks_per_run
raw_elapsed = time.perf_counter() - started

print(json.dumps({
    "kernel": KERNEL_IMPL,
    "sessions": sessions,
    "seconds": agent_elapsed,
    "sessions_per_s": sessions / agent_elapsed,
    "ticks": ticks,
    "us_per_tick": agent_elapsed / ticks * 1e6,
    "raw_ticks_per_s": raw_ticks / raw_elapsed,
    "raw_us_per_tick": raw_elapsed / raw_ticks * 1e6,
}))
"""


def run_worker(sessions: int, profile: str, pure: bool, probe: bool = False) -> dict:
    env = dict(os.environ)
    env.pop("FEINTFIGHT_PURE_PYTHON", None)
    if pure:
        env["FEINTFIGHT_PURE_PYTHON"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", _WORKER, str(sessions), profile, "1" if probe else "0"],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sessions", type=int, default=60)
    parser.add_argument("--profile", default="young_gullible")
    args = parser.parse_args()

    probe_fast = run_worker(0, args.profile, pure=False, probe=True)
    probe_pure = run_worker(0, args.profile, pure=True, probe=True)
    if probe_fast["probe"] != probe_pure["probe"]:
        print("FATAL: kernels disagree on a probe session", file=sys.stderr)
        sys.exit(1)
    print(f"probe session identical across kernels "
          f"({probe_fast['kernel']} vs {probe_pure['kernel']})")

    results = {}
    for pure in (True, False):
        r = run_worker(args.sessions, args.profile, pure=pure)
        results[r["kernel"]] = r
        print(f"{r['kernel']:>8}: agent sessions {r['sessions_per_s']:7.1f}/s "
              f"({r['us_per_tick']:.2f} us/tick)   "
              f"raw engine {r['raw_ticks_per_s'] / 1000:7.1f}k ticks/s "
              f"({r['raw_us_per_tick']:.2f} us/tick)")

    if "cython" in results and "python" in results:
        fast, pure = results["cython"], results["python"]
        print(f"speedup: {fast['sessions_per_s'] / pure['sessions_per_s']:.2f}x agent sessions, "
              f"{fast['raw_ticks_per_s'] / pure['raw_ticks_per_s']:.2f}x raw engine ticks")
    else:
        print("compiled kernel not built; only the pure-Python path was measured")


if __name__ == "__main__":
    main()
