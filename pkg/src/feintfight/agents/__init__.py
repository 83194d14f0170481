"""Simulated players: profiles plus the per-tick decision policy."""

from .policy import AgentMemory, GestureIntent, Observation, decide, observe
from .profiles import (
    AgentProfile,
    DefensePolicy,
    builtin_profile,
    builtin_profile_names,
    load_profile,
    resolve_profile,
)

__all__ = [
    "AgentMemory",
    "AgentProfile",
    "DefensePolicy",
    "GestureIntent",
    "Observation",
    "builtin_profile",
    "builtin_profile_names",
    "decide",
    "load_profile",
    "observe",
    "resolve_profile",
]
