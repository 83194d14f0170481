"""Tick-kernel selection: compiled extension if built, pure Python otherwise.

Set FEINTFIGHT_PURE_PYTHON=1 to force the fallback (used by the benchmark to
compare both). The active implementation is reported as KERNEL_IMPL.
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("FEINTFIGHT_PURE_PYTHON"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

KERNEL_IMPL: str = _impl.IMPL
tick_timers = _impl.tick_timers

# Slot indices, mode bits, and flag bits (identical in both implementations).
CD_KICK = _kernel_py.CD_KICK
CD_PUNCH = _kernel_py.CD_PUNCH
CD_ZOOM_KICK = _kernel_py.CD_ZOOM_KICK
CD_ZOOM_SQUAT = _kernel_py.CD_ZOOM_SQUAT
CD_MONSTER_PUNCH = _kernel_py.CD_MONSTER_PUNCH
CD_MONSTER_SQUAT = _kernel_py.CD_MONSTER_SQUAT
SHIELD = _kernel_py.SHIELD
ATTACK = _kernel_py.ATTACK
CLOCK = _kernel_py.CLOCK
WAIT = _kernel_py.WAIT
POS = _kernel_py.POS
TARGET = _kernel_py.TARGET
N_SLOTS = _kernel_py.N_SLOTS

M_CLOCK = _kernel_py.M_CLOCK
M_WAIT = _kernel_py.M_WAIT
M_WALK = _kernel_py.M_WALK

F_SHIELD_EXPIRED = _kernel_py.F_SHIELD_EXPIRED
F_ATTACK_DUE = _kernel_py.F_ATTACK_DUE
F_ACTION_DUE = _kernel_py.F_ACTION_DUE
F_WAIT_DONE = _kernel_py.F_WAIT_DONE
F_WALK_ARRIVED = _kernel_py.F_WALK_ARRIVED
