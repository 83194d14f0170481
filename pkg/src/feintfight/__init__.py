"""FeintFight: deterministic simulator for a motion-gesture combat exergame.

The game pits a player against a 500 HP monster over three lives each. In the
uncertain rule variant the monster throws feints and both sides' attacks can
miss or crit; the certain variant strips all randomness from combat outcomes.
The package provides the tick engine, simulated players, a Monte Carlo
experiment harness, a WebSocket play service, and a CLI.
"""

__version__ = "0.1.0"

from .config import GameConfig, MoveSpec, default_move_table
from .engine import GameState, GestureInput, StartMode, advance, new_game, submit_gesture
from .types import Actor, Condition, Direction, Gesture, MoveId

__all__ = [
    "Actor",
    "Condition",
    "Direction",
    "GameConfig",
    "GameState",
    "Gesture",
    "GestureInput",
    "MoveId",
    "MoveSpec",
    "StartMode",
    "advance",
    "default_move_table",
    "new_game",
    "submit_gesture",
    "__version__",
]
