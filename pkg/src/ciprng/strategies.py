"""Embedded strategy generators.

Every step of the chaotic generator consumes one 32-bit word from a
strategy; its four bytes are the update masks of the four blocks.

Seed material is expanded by XOR-folding the bytes into a zeroed lane
buffer (``buf[i % len(buf)] ^= material[i]``) and reading the lanes as
little-endian words. Lanes that would make a generator degenerate are then
fixed up:

* LFSR113: lanes below (2, 8, 16, 128) are OR-ed with that bound.
* Taus88: lanes below (2, 8, 16) are OR-ed with that bound.
* xorshift128+: an all-zero pair becomes ``XORSHIFT128P_ZERO_FIXUP``.
* xorshift128: an all-zero state becomes Marsaglia's published seeds.
"""

from __future__ import annotations

import numpy as np

from . import _kernels

__all__ = [
    "StrategyGen",
    "Lfsr113",
    "Taus88",
    "Xorshift128Plus",
    "Xorshift128",
    "ConstantStrategy",
    "STRATEGIES",
    "seed",
    "next_strategy",
    "fold_material",
    "XORSHIFT128P_ZERO_FIXUP",
]

M32 = 0xFFFFFFFF
M64 = 0xFFFFFFFFFFFFFFFF

XORSHIFT128P_ZERO_FIXUP = (0x9E3779B97F4A7C15, 0xBF58476D1CE4E5B9)
XORSHIFT128_ZERO_FIXUP = (123456789, 362436069, 521288629, 88675123)


def fold_material(material: bytes, n_bytes: int) -> bytes:
    if not material:
        raise ValueError("seed material must be non-empty")
    buf = bytearray(n_bytes)
    for i, byte in enumerate(material):
        buf[i % n_bytes] ^= byte
    return bytes(buf)


def _lanes(buf: bytes, width: int) -> list[int]:
    return [int.from_bytes(buf[i : i + width], "little") for i in range(0, len(buf), width)]


class StrategyGen:
    """Base class: a sequential 32-bit generator with a copyable state."""

    kind = "abstract"
    _state_bytes = 0
    _lane_width = 4
    _kernel = None

    def __init__(self, *lanes: int) -> None:
        self._state = np.array(self._fixup([int(v) for v in lanes]), dtype=np.uint64)

    @classmethod
    def from_material(cls, material: bytes) -> StrategyGen:
        return cls(*_lanes(fold_material(bytes(material), cls._state_bytes), cls._lane_width))

    @staticmethod
    def _fixup(lanes: list[int]) -> list[int]:
        return lanes

    @property
    def state(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self._state)

    def copy(self) -> StrategyGen:
        return type(self)(*self.state)

    def next32(self) -> int:
        raise NotImplementedError

    def fill(self, n: int) -> np.ndarray:
        """Return the next ``n`` outputs as uint32, advancing the state."""
        out = np.empty(n, dtype=np.uint32)
        if self._kernel is not None:
            type(self)._kernel(self._state, out)
        else:
            for i in range(n):
                out[i] = self.next32()
        return out

    def __repr__(self) -> str:
        lanes = ", ".join(hex(v) for v in self.state)
        return f"{type(self).__name__}({lanes})"


class Lfsr113(StrategyGen):
    """L'Ecuyer's four-component combined Tausworthe generator."""

    kind = "lfsr113"
    _state_bytes = 16
    _kernel = _kernels.lfsr113_fill
    BOUNDS = (2, 8, 16, 128)

    @staticmethod
    def _fixup(lanes):
        if len(lanes) != 4:
            raise ValueError("lfsr113 needs four 32-bit lanes")
        return [(z & M32) | b if (z & M32) < b else z & M32 for z, b in zip(lanes, Lfsr113.BOUNDS)]

    def next32(self) -> int:
        z1, z2, z3, z4 = self.state
        b = (((z1 << 6) ^ z1) & M32) >> 13
        z1 = (((z1 & 4294967294) << 18) & M32) ^ b
        b = (((z2 << 2) ^ z2) & M32) >> 27
        z2 = (((z2 & 4294967288) << 2) & M32) ^ b
        b = (((z3 << 13) ^ z3) & M32) >> 21
        z3 = (((z3 & 4294967280) << 7) & M32) ^ b
        b = (((z4 << 3) ^ z4) & M32) >> 12
        z4 = (((z4 & 4294967168) << 13) & M32) ^ b
        self._state[:] = (z1, z2, z3, z4)
        return z1 ^ z2 ^ z3 ^ z4


class Taus88(StrategyGen):
    """L'Ecuyer's three-component combined Tausworthe generator."""

    kind = "taus88"
    _state_bytes = 12
    _kernel = _kernels.taus88_fill
    BOUNDS = (2, 8, 16)

    @staticmethod
    def _fixup(lanes):
        if len(lanes) != 3:
            raise ValueError("taus88 needs three 32-bit lanes")
        return [(z & M32) | b if (z & M32) < b else z & M32 for z, b in zip(lanes, Taus88.BOUNDS)]

    def next32(self) -> int:
        z1, z2, z3 = self.state
        b = (((z1 << 13) ^ z1) & M32) >> 19
        z1 = (((z1 & 4294967294) << 12) & M32) ^ b
        b = (((z2 << 2) ^ z2) & M32) >> 25
        z2 = (((z2 & 4294967288) << 4) & M32) ^ b
        b = (((z3 << 3) ^ z3) & M32) >> 11
        z3 = (((z3 & 4294967280) << 17) & M32) ^ b
        self._state[:] = (z1, z2, z3)
        return z1 ^ z2 ^ z3


class Xorshift128Plus(StrategyGen):
    """Vigna's xorshift128+ with shift triple (23, 17, 26).

    The 64-bit sum is truncated to its low 32 bits.
    """

    kind = "xorshift128p"
    _state_bytes = 16
    _lane_width = 8
    _kernel = _kernels.xorshift128p_fill

    @staticmethod
    def _fixup(lanes):
        if len(lanes) != 2:
            raise ValueError("xorshift128+ needs two 64-bit lanes")
        lanes = [v & M64 for v in lanes]
        if lanes == [0, 0]:
            return list(XORSHIFT128P_ZERO_FIXUP)
        return lanes

    def next32(self) -> int:
        s1, s0 = self.state
        new0 = s0
        s1 ^= (s1 << 23) & M64
        new1 = s1 ^ s0 ^ (s1 >> 17) ^ (s0 >> 26)
        self._state[:] = (new0, new1)
        return (new1 + s0) & M32


class Xorshift128(StrategyGen):
    """Marsaglia's 32-bit xorshift128, offered for comparison with the "+" variant."""

    kind = "xorshift128"
    _state_bytes = 16
    _kernel = _kernels.xorshift128_fill

    @staticmethod
    def _fixup(lanes):
        if len(lanes) != 4:
            raise ValueError("xorshift128 needs four 32-bit lanes")
        lanes = [v & M32 for v in lanes]
        if not any(lanes):
            return list(XORSHIFT128_ZERO_FIXUP)
        return lanes

    def next32(self) -> int:
        x, y, z, w = self.state
        t = x ^ ((x << 11) & M32)
        w_new = w ^ (w >> 19) ^ (t ^ (t >> 8))
        self._state[:] = (y, z, w, w_new)
        return w_new


class ConstantStrategy(StrategyGen):
    """Emits the same word forever. A test stub, not a generator.

    Seed material is read as a big-endian word (zero-padded to 4 bytes).
    """

    kind = "constant"

    def __init__(self, value: int = 0) -> None:
        self._state = np.array([value & M32], dtype=np.uint64)

    @classmethod
    def from_material(cls, material: bytes) -> ConstantStrategy:
        if not material:
            raise ValueError("seed material must be non-empty")
        return cls(int.from_bytes(bytes(material)[:4].ljust(4, b"\0"), "big"))

    def next32(self) -> int:
        return int(self._state[0])

    def fill(self, n: int) -> np.ndarray:
        return np.full(n, self._state[0], dtype=np.uint32)


STRATEGIES: dict[str, type[StrategyGen]] = {
    cls.kind: cls for cls in (Lfsr113, Taus88, Xorshift128Plus, Xorshift128, ConstantStrategy)
}


def seed(kind: str, seed_material: bytes) -> StrategyGen:
    try:
        cls = STRATEGIES[kind.lower()]
    except KeyError:
        raise ValueError(f"unknown strategy {kind!r}; expected one of {sorted(STRATEGIES)}") from None
    return cls.from_material(seed_material)


def next_strategy(g: StrategyGen) -> int:
    return g.next32()
