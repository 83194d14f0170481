# cython: boundscheck=False, wraparound=False
"""Compiled tick kernel; must stay semantically identical to _kernel_py.

All quantities are integer ticks / grid units, so the two implementations
agree bit-for-bit (verified by tests/test_kernel.py).
"""

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

M_CLOCK = 1
M_WAIT = 2
M_WALK = 4

F_SHIELD_EXPIRED = 1
F_ATTACK_DUE = 2
F_ACTION_DUE = 4
F_WAIT_DONE = 8
F_WALK_ARRIVED = 16

IMPL = "cython"

cdef enum:
    S_SHIELD = 6
    S_ATTACK = 7
    S_CLOCK = 8
    S_WAIT = 9
    S_POS = 10
    S_TARGET = 11

cdef enum:
    MODE_CLOCK = 1
    MODE_WAIT = 2
    MODE_WALK = 4

cdef enum:
    FLAG_SHIELD_EXPIRED = 1
    FLAG_ATTACK_DUE = 2
    FLAG_ACTION_DUE = 4
    FLAG_WAIT_DONE = 8
    FLAG_WALK_ARRIVED = 16


def tick_timers(long long[::1] buf, int mode):
    cdef int flags = 0
    cdef int i
    for i in range(6):
        if buf[i] > 0:
            buf[i] -= 1
    if buf[S_SHIELD] > 0:
        buf[S_SHIELD] -= 1
        if buf[S_SHIELD] == 0:
            flags |= FLAG_SHIELD_EXPIRED
    if buf[S_ATTACK] > 0:
        buf[S_ATTACK] -= 1
        if buf[S_ATTACK] == 0:
            flags |= FLAG_ATTACK_DUE
    if mode & MODE_CLOCK and buf[S_CLOCK] > 0:
        buf[S_CLOCK] -= 1
        if buf[S_CLOCK] == 0:
            flags |= FLAG_ACTION_DUE
    if mode & MODE_WAIT and buf[S_WAIT] > 0:
        buf[S_WAIT] -= 1
        if buf[S_WAIT] == 0:
            flags |= FLAG_WAIT_DONE
    if mode & MODE_WALK and buf[S_POS] != buf[S_TARGET]:
        buf[S_POS] += 1 if buf[S_TARGET] > buf[S_POS] else -1
        if buf[S_POS] == buf[S_TARGET]:
            flags |= FLAG_WALK_ARRIVED
    return flags
