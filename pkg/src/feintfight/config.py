"""Rule constants: the move table and the session configuration.

GameConfig is the single source of truth for every tunable in the rules:
move damage/cooldowns, uncertainty probabilities, monster cadence, and the
fixed simulation tick. All durations must be integer multiples of the tick so
the engine can count time in whole ticks and stay bit-exact everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional

from .errors import ConfigError
from .types import Actor, Condition, MoveId, MoveKind


@dataclass(frozen=True)
class MoveSpec:
    id: MoveId
    actor: Actor
    kind: MoveKind
    damage: int
    cooldown: float
    range: Optional[float] = None
    energy_cost: float = 1.0

    def to_dict(self) -> dict:
        return {
            "id": self.id.value,
            "actor": self.actor.value,
            "kind": self.kind.value,
            "damage": self.damage,
            "cooldown": self.cooldown,
            "range": self.range,
            "energy_cost": self.energy_cost,
        }

    @staticmethod
    def from_dict(data: dict) -> "MoveSpec":
        return MoveSpec(
            id=MoveId(data["id"]),
            actor=Actor(data["actor"]),
            kind=MoveKind(data["kind"]),
            damage=data["damage"],
            cooldown=data["cooldown"],
            range=data.get("range"),
            energy_cost=data.get("energy_cost", 1.0),
        )


def default_move_table() -> List[MoveSpec]:
    """Stock move set: three player attacks, a player shield, two monster attacks.

    Energy costs are arbitrary exertion units used only by the exertion proxy;
    they are config-overridable and never asserted numerically.
    """
    return [
        MoveSpec(MoveId.KICK, Actor.PLAYER, MoveKind.MELEE_ATTACK, 10, 3.0, energy_cost=1.0),
        MoveSpec(MoveId.PUNCH, Actor.PLAYER, MoveKind.MELEE_ATTACK, 10, 3.0, energy_cost=0.8),
        MoveSpec(MoveId.ZOOM_KICK, Actor.PLAYER, MoveKind.RANGED_ATTACK, 30, 5.0, range=1.0, energy_cost=1.5),
        MoveSpec(MoveId.ZOOM_SQUAT, Actor.PLAYER, MoveKind.DEFENSE, 0, 3.0, energy_cost=1.8),
        MoveSpec(MoveId.MONSTER_PUNCH, Actor.MONSTER, MoveKind.MELEE_ATTACK, 10, 3.0),
        MoveSpec(MoveId.MONSTER_SQUAT, Actor.MONSTER, MoveKind.RANGED_ATTACK, 30, 5.0),
    ]


#: Exertion cost of the bare confirm gesture (zoom), same arbitrary units.
ZOOM_ENERGY_COST = 0.3

_CONFIG_FIELDS = (
    "condition",
    "p_false_attack",
    "p_miss",
    "p_crit",
    "crit_multiplier",
    "monster_action_period",
    "p_attack_intent",
    "player_max_hp",
    "monster_max_hp",
    "lives_each",
    "shield_duration",
    "shield_heal",
    "inter_life_wait",
    "revive_defense_count",
    "monster_move_range",
    "false_attack_duration",
    "real_attack_windup",
    "tick",
)


@dataclass(frozen=True)
class GameConfig:
    condition: Condition = Condition.CERTAIN
    p_false_attack: float = 0.20
    p_miss: float = 0.10
    p_crit: float = 0.10
    crit_multiplier: float = 1.5
    monster_action_period: float = 2.0
    p_attack_intent: float = 0.80
    player_max_hp: int = 100
    monster_max_hp: int = 500
    lives_each: int = 3
    shield_duration: float = 2.0
    shield_heal: int = 20
    inter_life_wait: float = 5.0
    revive_defense_count: int = 5
    monster_move_range: float = 2.0
    false_attack_duration: float = 0.8
    # The feint animation aborts at false_attack_duration; a real attack lands
    # after this strictly longer windup, so a patient defender can tell them apart.
    real_attack_windup: float = 1.2
    tick: float = 0.05
    move_table: List[MoveSpec] = field(default_factory=default_move_table)

    # -- validation --------------------------------------------------------

    def validate(self) -> None:
        """Raise ConfigError naming the first offending field."""
        for name in ("p_false_attack", "p_miss", "p_crit", "p_attack_intent"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(name, f"probability {value} outside [0, 1]")
        if self.crit_multiplier < 1.0:
            raise ConfigError("crit_multiplier", "must be >= 1")
        if self.tick <= 0:
            raise ConfigError("tick", "must be positive")
        for name in (
            "monster_action_period",
            "shield_duration",
            "inter_life_wait",
            "false_attack_duration",
            "real_attack_windup",
        ):
            self._require_tick_multiple(name, getattr(self, name))
        for name in ("player_max_hp", "monster_max_hp", "lives_each", "revive_defense_count"):
            if getattr(self, name) <= 0:
                raise ConfigError(name, "must be positive")
        if self.shield_heal < 0:
            raise ConfigError("shield_heal", "must be >= 0")
        if self.monster_move_range <= 0:
            raise ConfigError("monster_move_range", "must be positive")
        seen = set()
        for move in self.move_table:
            if move.damage < 0:
                raise ConfigError(f"move_table[{move.id.value}].damage", "must be >= 0")
            self._require_tick_multiple(f"move_table[{move.id.value}].cooldown", move.cooldown)
            if move.id in seen:
                raise ConfigError("move_table", f"duplicate move id {move.id.value}")
            seen.add(move.id)
        for required in MoveId:
            if required not in seen:
                raise ConfigError("move_table", f"missing move {required.value}")

    def _require_tick_multiple(self, name: str, seconds: float) -> None:
        if seconds <= 0:
            raise ConfigError(name, "must be positive")
        ratio = seconds / self.tick
        if abs(ratio - round(ratio)) > 1e-9:
            raise ConfigError(name, f"{seconds} is not a multiple of tick={self.tick}")

    # -- derived views -----------------------------------------------------

    def ticks(self, seconds: float) -> int:
        return round(seconds / self.tick)

    def move(self, move_id: MoveId) -> MoveSpec:
        for spec in self.move_table:
            if spec.id == move_id:
                return spec
        raise KeyError(move_id)

    def effective_p_false_attack(self) -> float:
        return self.p_false_attack if self.condition is Condition.UNCERTAIN else 0.0

    def effective_p_miss(self) -> float:
        return self.p_miss if self.condition is Condition.UNCERTAIN else 0.0

    def effective_p_crit(self) -> float:
        return self.p_crit if self.condition is Condition.UNCERTAIN else 0.0

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        out: dict = {}
        for name in _CONFIG_FIELDS:
            value = getattr(self, name)
            out[name] = value.value if isinstance(value, Condition) else value
        out["move_table"] = [m.to_dict() for m in self.move_table]
        return out

    @staticmethod
    def from_dict(data: dict) -> "GameConfig":
        kwargs: dict = {}
        for name in _CONFIG_FIELDS:
            if name in data:
                kwargs[name] = Condition(data[name]) if name == "condition" else data[name]
        if "move_table" in data:
            kwargs["move_table"] = [MoveSpec.from_dict(m) for m in data["move_table"]]
        unknown = set(data) - set(_CONFIG_FIELDS) - {"move_table"}
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown config field")
        return GameConfig(**kwargs)

    def override(self, patch: dict) -> "GameConfig":
        """Return a copy with fields from `patch` replaced (validated)."""
        kwargs: dict = {}
        for name, value in patch.items():
            if name == "move_table":
                kwargs["move_table"] = [MoveSpec.from_dict(m) for m in value]
            elif name in _CONFIG_FIELDS:
                kwargs[name] = Condition(value) if name == "condition" else value
            else:
                raise ConfigError(name, "unknown config field")
        cfg = replace(self, **kwargs)
        cfg.validate()
        return cfg


def energy_cost_table(config: GameConfig) -> Dict[str, float]:
    """Per-gesture exertion units, including the bare zoom."""
    costs = {spec.id.value: spec.energy_cost for spec in config.move_table if spec.actor is Actor.PLAYER}
    costs["zoom"] = ZOOM_ENERGY_COST
    return costs
