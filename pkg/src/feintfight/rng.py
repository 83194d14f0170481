"""Seeded pseudo-random streams with portable, bit-stable output.

The simulator promises byte-identical logs for the same seed on any platform,
so draws come from a SplitMix64 stream implemented with plain 64-bit integer
arithmetic rather than from interpreter-version-dependent library generators.

Two independent streams are derived from the session seeds: one for engine
rolls (monster policy, miss/crit), one for agent decisions. Changing an agent
never perturbs the engine's draw order.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

# Domain tags keep streams decorrelated even when both are given the same seed.
ENGINE_STREAM = "engine"
AGENT_STREAM = "agent"


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


def _fnv1a(text: str) -> int:
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = (h ^ byte) * 0x100000001B3 & _MASK
    return h


def derive_seed(seed: int, *tags: "int | str") -> int:
    """Deterministically fold tags into a seed to name a sub-stream."""
    acc = seed & _MASK
    for tag in tags:
        part = _fnv1a(tag) if isinstance(tag, str) else tag & _MASK
        acc = _mix(acc ^ part)
    return acc


class Stream:
    """SplitMix64 generator. State advances by one step per draw."""

    __slots__ = ("_state", "draws")

    def __init__(self, seed: int):
        self._state = _mix(seed & _MASK)
        self.draws = 0

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        self.draws += 1
        return _mix(self._state)

    def random(self) -> float:
        """Uniform in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in [low, high], inclusive on both ends."""
        if high < low:
            raise ValueError("empty range")
        span = high - low + 1
        return low + self.next_u64() % span

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.random()

    def getstate(self) -> tuple:
        return (self._state, self.draws)

    def setstate(self, state: tuple) -> None:
        self._state, self.draws = state

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Stream):
            return NotImplemented
        return self._state == other._state

    def __repr__(self) -> str:
        return f"Stream(state=0x{self._state:016x}, draws={self.draws})"


def engine_stream(seed: int) -> Stream:
    return Stream(derive_seed(seed, ENGINE_STREAM))


def agent_stream(seed: int) -> Stream:
    return Stream(derive_seed(seed, AGENT_STREAM))
