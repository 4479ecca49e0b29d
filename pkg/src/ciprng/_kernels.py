"""Compiled bulk loops for the strategies and the iteration step.

Each kernel mutates its ``state`` array in place so that the Python objects
owning the state stay in sync with word-at-a-time stepping. All 32-bit lane
arithmetic is done in uint64 and masked; mixing signed and unsigned integers
in numba silently promotes to float64.
"""

import numba as nb
import numpy as np

_M32 = np.uint64(0xFFFFFFFF)
_U = np.uint64


@nb.njit(cache=True)
def lfsr113_fill(state, out):
    z1 = _U(state[0])
    z2 = _U(state[1])
    z3 = _U(state[2])
    z4 = _U(state[3])
    for i in range(out.shape[0]):
        b = (((z1 << _U(6)) & _M32) ^ z1) >> _U(13)
        z1 = (((z1 & _U(4294967294)) << _U(18)) & _M32) ^ b
        b = (((z2 << _U(2)) & _M32) ^ z2) >> _U(27)
        z2 = (((z2 & _U(4294967288)) << _U(2)) & _M32) ^ b
        b = (((z3 << _U(13)) & _M32) ^ z3) >> _U(21)
        z3 = (((z3 & _U(4294967280)) << _U(7)) & _M32) ^ b
        b = (((z4 << _U(3)) & _M32) ^ z4) >> _U(12)
        z4 = (((z4 & _U(4294967168)) << _U(13)) & _M32) ^ b
        out[i] = np.uint32(z1 ^ z2 ^ z3 ^ z4)
    state[0] = z1
    state[1] = z2
    state[2] = z3
    state[3] = z4


@nb.njit(cache=True)
def taus88_fill(state, out):
    z1 = _U(state[0])
    z2 = _U(state[1])
    z3 = _U(state[2])
    for i in range(out.shape[0]):
        b = (((z1 << _U(13)) & _M32) ^ z1) >> _U(19)
        z1 = (((z1 & _U(4294967294)) << _U(12)) & _M32) ^ b
        b = (((z2 << _U(2)) & _M32) ^ z2) >> _U(25)
        z2 = (((z2 & _U(4294967288)) << _U(4)) & _M32) ^ b
        b = (((z3 << _U(3)) & _M32) ^ z3) >> _U(11)
        z3 = (((z3 & _U(4294967280)) << _U(17)) & _M32) ^ b
        out[i] = np.uint32(z1 ^ z2 ^ z3)
    state[0] = z1
    state[1] = z2
    state[2] = z3


@nb.njit(cache=True)
def xorshift128p_fill(state, out):
    s0 = state[0]
    s1 = state[1]
    for i in range(out.shape[0]):
        a = s0
        c = s1
        s0 = c
        a ^= a << _U(23)
        s1 = a ^ c ^ (a >> _U(17)) ^ (c >> _U(26))
        out[i] = np.uint32((s1 + c) & _M32)
    state[0] = s0
    state[1] = s1


@nb.njit(cache=True)
def xorshift128_fill(state, out):
    x = _U(state[0])
    y = _U(state[1])
    z = _U(state[2])
    w = _U(state[3])
    for i in range(out.shape[0]):
        t = x ^ ((x << _U(11)) & _M32)
        x = y
        y = z
        z = w
        w = w ^ (w >> _U(19)) ^ (t ^ (t >> _U(8)))
        out[i] = np.uint32(w)
    state[0] = x
    state[1] = y
    state[2] = z
    state[3] = w


@nb.njit(cache=True)
def ci_fill(x0, strategy_words, table, out):
    """Run the blockwise iteration over a strategy stream; returns the final state."""
    x = np.uint32(x0)
    for i in range(strategy_words.shape[0]):
        s = strategy_words[i]
        y = np.uint32(0)
        for k in range(4):
            sh = np.uint32(8 * k)
            xb = (x >> sh) & np.uint32(0xFF)
            sb = (s >> sh) & np.uint32(0xFF)
            fb = np.uint32(table[xb])
            yb = (fb & sb) | (xb & ~sb & np.uint32(0xFF))
            y |= yb << sh
        x = y
        out[i] = x
    return x
