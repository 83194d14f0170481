"""Simulated-player profiles.

A profile bundles everything that makes an agent play like a person: how fast
it reacts, how reliably each gesture is recognized, how it handles incoming
attacks, and its age (which only feeds the exertion model's max-HR formula).

Recognition defaults for the built-in young/middle profiles follow observed
per-move success rates from motion-tracked play; they are a documented,
overridable choice, not a claim of fidelity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Optional, Tuple

from ..config import GameConfig
from ..errors import ProfileFormatError, UnknownProfileError
from ..types import ATTACK_GESTURES, Gesture


class DefensePolicy(str, Enum):
    #: Shield on any attack onset; feints bait this policy.
    GULLIBLE = "gullible"
    #: Wait `reveal_wait` seconds; shield only if the attack is still going.
    DISCERNING = "discerning"
    #: Never shield (used to isolate the damage race).
    NO_DEFENSE = "no_defense"


DEFAULT_ATTACK_PRIORITY = (Gesture.ZOOM_KICK, Gesture.KICK, Gesture.PUNCH)


@dataclass(frozen=True)
class AgentProfile:
    name: str
    reaction_latency_mean: float
    reaction_latency_jitter: float
    recognition_prob: Dict[Gesture, float]
    defense_policy: DefensePolicy
    reveal_wait: float = 1.0
    attack_priority: Tuple[Gesture, ...] = DEFAULT_ATTACK_PRIORITY
    inter_gesture_gap: float = 0.35
    age: float = 30.0

    def recognition(self, gesture: Gesture) -> float:
        # Gestures without an explicit rate (notably the bare zoom) always land.
        return self.recognition_prob.get(gesture, 1.0)

    def validate(self, config: Optional[GameConfig] = None) -> None:
        for gesture, prob in self.recognition_prob.items():
            if not 0.0 <= prob <= 1.0:
                raise ProfileFormatError(f"recognition_prob[{gesture.value}] outside [0, 1]")
        if self.reaction_latency_mean < 0 or self.reaction_latency_jitter < 0:
            raise ProfileFormatError("reaction latency must be >= 0")
        if self.reaction_latency_jitter > self.reaction_latency_mean:
            raise ProfileFormatError("latency jitter larger than mean would allow negative latency")
        if self.inter_gesture_gap < 0:
            raise ProfileFormatError("inter_gesture_gap must be >= 0")
        if not self.attack_priority:
            raise ProfileFormatError("attack_priority must not be empty")
        for gesture in self.attack_priority:
            if gesture not in ATTACK_GESTURES:
                raise ProfileFormatError(f"{gesture.value} is not an attack gesture")
        if self.age <= 0:
            raise ProfileFormatError("age must be positive")
        if (
            config is not None
            and self.defense_policy is DefensePolicy.DISCERNING
            and self.reveal_wait < config.false_attack_duration
        ):
            raise ProfileFormatError(
                "a discerning agent must wait at least the feint duration before defending"
            )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "reaction_latency_mean": self.reaction_latency_mean,
            "reaction_latency_jitter": self.reaction_latency_jitter,
            "recognition_prob": {g.value: p for g, p in self.recognition_prob.items()},
            "defense_policy": self.defense_policy.value,
            "reveal_wait": self.reveal_wait,
            "attack_priority": [g.value for g in self.attack_priority],
            "inter_gesture_gap": self.inter_gesture_gap,
            "age": self.age,
        }

    @staticmethod
    def from_dict(data: dict) -> "AgentProfile":
        known = {
            "name",
            "reaction_latency_mean",
            "reaction_latency_jitter",
            "recognition_prob",
            "defense_policy",
            "reveal_wait",
            "attack_priority",
            "inter_gesture_gap",
            "age",
        }
        unknown = set(data) - known
        if unknown:
            raise ProfileFormatError(f"unknown profile field {sorted(unknown)[0]!r}")
        try:
            profile = AgentProfile(
                name=data["name"],
                reaction_latency_mean=data["reaction_latency_mean"],
                reaction_latency_jitter=data["reaction_latency_jitter"],
                recognition_prob={Gesture(g): p for g, p in data["recognition_prob"].items()},
                defense_policy=DefensePolicy(data["defense_policy"]),
                reveal_wait=data.get("reveal_wait", 1.0),
                attack_priority=tuple(Gesture(g) for g in data.get("attack_priority", DEFAULT_ATTACK_PRIORITY)),
                inter_gesture_gap=data.get("inter_gesture_gap", 0.35),
                age=data.get("age", 30.0),
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise ProfileFormatError(f"bad profile data: {exc}") from exc
        profile.validate()
        return profile


def _young_recognition() -> Dict[Gesture, float]:
    return {
        Gesture.KICK: 0.82,
        Gesture.PUNCH: 0.55,
        Gesture.ZOOM_KICK: 0.97,
        Gesture.ZOOM_SQUAT: 0.90,
    }


def _middle_recognition() -> Dict[Gesture, float]:
    return {
        Gesture.KICK: 0.78,
        Gesture.PUNCH: 0.55,
        Gesture.ZOOM_KICK: 0.97,
        Gesture.ZOOM_SQUAT: 0.85,
    }


_BUILTINS: Dict[str, AgentProfile] = {}


def _register(profile: AgentProfile) -> AgentProfile:
    profile.validate()
    _BUILTINS[profile.name] = profile
    return profile


YOUNG_GULLIBLE = _register(
    AgentProfile(
        name="young_gullible",
        reaction_latency_mean=0.25,
        reaction_latency_jitter=0.05,
        recognition_prob=_young_recognition(),
        defense_policy=DefensePolicy.GULLIBLE,
        inter_gesture_gap=0.35,
        age=21.0,
    )
)

MIDDLE_GULLIBLE = _register(
    AgentProfile(
        name="middle_gullible",
        reaction_latency_mean=0.45,
        reaction_latency_jitter=0.10,
        recognition_prob=_middle_recognition(),
        defense_policy=DefensePolicy.GULLIBLE,
        inter_gesture_gap=0.60,
        age=48.0,
    )
)

YOUNG_DISCERNING = _register(
    replace(YOUNG_GULLIBLE, name="young_discerning", defense_policy=DefensePolicy.DISCERNING, reveal_wait=1.0)
)

MIDDLE_DISCERNING = _register(
    replace(MIDDLE_GULLIBLE, name="middle_discerning", defense_policy=DefensePolicy.DISCERNING, reveal_wait=1.0)
)

RELENTLESS = _register(
    AgentProfile(
        name="relentless",
        reaction_latency_mean=0.0,
        reaction_latency_jitter=0.0,
        recognition_prob={g: 1.0 for g in Gesture},
        defense_policy=DefensePolicy.NO_DEFENSE,
        inter_gesture_gap=0.0,
        age=30.0,
    )
)


def builtin_profile_names() -> Tuple[str, ...]:
    return tuple(sorted(_BUILTINS))


def builtin_profile(name: str) -> AgentProfile:
    try:
        return _BUILTINS[name]
    except KeyError:
        raise UnknownProfileError(
            f"unknown profile {name!r}; available: {', '.join(builtin_profile_names())}"
        ) from None


def load_profile(path: str) -> AgentProfile:
    """Read a profile from a JSON file (the event-log header object syntax)."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ProfileFormatError(f"cannot read profile file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ProfileFormatError("profile file must contain a JSON object")
    return AgentProfile.from_dict(data)


def resolve_profile(name_or_path: str) -> AgentProfile:
    """Builtin name, or a path to a profile file if it looks like one."""
    if name_or_path in _BUILTINS:
        return _BUILTINS[name_or_path]
    if name_or_path.endswith(".json") or "/" in name_or_path:
        return load_profile(name_or_path)
    raise UnknownProfileError(
        f"unknown profile {name_or_path!r}; available: {', '.join(builtin_profile_names())}"
    )
