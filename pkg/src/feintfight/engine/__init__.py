"""Deterministic fixed-tick game engine."""

from .core import (
    FalseAttack,
    GameState,
    GestureInput,
    MonsterDecision,
    PendingAttack,
    RealAttack,
    StartMode,
    Walk,
    advance,
    check_termination,
    monster_decide,
    new_game,
    roll_attack_modifiers,
    submit_gesture,
)
from .kernel import KERNEL_IMPL

__all__ = [
    "FalseAttack",
    "GameState",
    "GestureInput",
    "KERNEL_IMPL",
    "MonsterDecision",
    "PendingAttack",
    "RealAttack",
    "StartMode",
    "Walk",
    "advance",
    "check_termination",
    "monster_decide",
    "new_game",
    "roll_attack_modifiers",
    "submit_gesture",
]
