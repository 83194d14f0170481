"""Pure-Python tick kernel: the per-tick countdown arithmetic.

This is the reference implementation; `_kernel_c.pyx` is a line-for-line
translation operating on the same int64 buffer, so both produce identical
results (all state is integer ticks / grid units).

Buffer slots (signed 64-bit, allocated by the engine):

    0..3   player cooldowns (kick, punch, zoom_kick, zoom_squat), ticks
    4..5   monster cooldowns (punch, squat), ticks
    6      shield ticks remaining (0 = inactive)
    7      monster pending-attack countdown (0 = none)
    8      monster action clock, ticks until the next action
    9      inter-life wait countdown
    10     monster lateral position, grid units of one tick-step
    11     monster walk destination, same units

Mode bits select which timers run this tick (phase-dependent); flag bits
report which countdowns just hit zero so the rule layer can react.
"""

# Slot indices.
CD_KICK = 0
CD_PUNCH = 1
CD_ZOOM_KICK = 2
CD_ZOOM_SQUAT = 3
CD_MONSTER_PUNCH = 4
CD_MONSTER_SQUAT = 5
SHIELD = 6
ATTACK = 7
CLOCK = 8
WAIT = 9
POS = 10
TARGET = 11
N_SLOTS = 12

# Mode bits.
M_CLOCK = 1
M_WAIT = 2
M_WALK = 4

# Flag bits.
F_SHIELD_EXPIRED = 1
F_ATTACK_DUE = 2
F_ACTION_DUE = 4
F_WAIT_DONE = 8
F_WALK_ARRIVED = 16

IMPL = "python"


def tick_timers(buf, mode):
    """Advance every active countdown by one tick; return fired-flag bits.

    The shield decrements before the pending attack, so an attack resolving
    exactly when the shield window ends is not blocked (half-open window).
    """
    flags = 0
    for i in range(6):
        if buf[i] > 0:
            buf[i] -= 1
    if buf[SHIELD] > 0:
        buf[SHIELD] -= 1
        if buf[SHIELD] == 0:
            flags |= F_SHIELD_EXPIRED
    if buf[ATTACK] > 0:
        buf[ATTACK] -= 1
        if buf[ATTACK] == 0:
            flags |= F_ATTACK_DUE
    if mode & M_CLOCK and buf[CLOCK] > 0:
        buf[CLOCK] -= 1
        if buf[CLOCK] == 0:
            flags |= F_ACTION_DUE
    if mode & M_WAIT and buf[WAIT] > 0:
        buf[WAIT] -= 1
        if buf[WAIT] == 0:
            flags |= F_WAIT_DONE
    if mode & M_WALK and buf[POS] != buf[TARGET]:
        buf[POS] += 1 if buf[TARGET] > buf[POS] else -1
        if buf[POS] == buf[TARGET]:
            flags |= F_WALK_ARRIVED
    return flags
