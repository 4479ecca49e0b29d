"""Chaotic-iteration generator pipeline.

The 32-bit internal state is four 8-bit blocks, x_A in the most significant
byte down to x_D in the least. Each step draws one strategy word, updates
every block under its own byte of that word, and emits a bijective
xorshift-multiply-xorshift scramble of the new state. The scrambled word is
never fed back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels
from .functions import BooleanFunc, get_function
from .strategies import StrategyGen, seed as seed_strategy

__all__ = [
    "M32",
    "DEFAULT_B",
    "DEFAULT_SEED",
    "PermParams",
    "GeneratorConfig",
    "Generator",
    "pack",
    "unpack",
    "ci_step_block",
    "ci_step",
    "permute",
    "unpermute",
    "permute_array",
    "unpermute_array",
    "stage1",
    "stage1_inverse",
    "stage2",
    "stage2_inverse",
    "stage3",
    "stage3_inverse",
    "parse_seed",
]

M32 = 0xFFFFFFFF

DEFAULT_B = {"neg": 95, "f1": 811, "identity": 95}

# 4 bytes of initial state followed by 16 bytes of strategy material.
DEFAULT_SEED = bytes.fromhex("0123456789abcdeffedcba98765432100f1e2d3c")


def pack(blocks: tuple[int, int, int, int]) -> int:
    a, b, c, d = blocks
    return (a << 24) | (b << 16) | (c << 8) | d


def unpack(word: int) -> tuple[int, int, int, int]:
    return ((word >> 24) & 0xFF, (word >> 16) & 0xFF, (word >> 8) & 0xFF, word & 0xFF)


def ci_step_block(x: int, s: int, f: BooleanFunc) -> int:
    """Update the bits of block ``x`` selected by mask ``s`` with those of f(x).

    Bit i-1 of ``s`` selects component i; component 1 is the least
    significant bit. An empty mask leaves ``x`` unchanged.
    """
    return (f.table[x] & s) | (x & ~s & 0xFF)


def ci_step(x: int, s: int, f: BooleanFunc) -> int:
    return pack(tuple(ci_step_block(xb, sb, f) for xb, sb in zip(unpack(x), unpack(s))))


@dataclass(frozen=True)
class PermParams:
    b: int
    top_shift_base: int = 4
    top_select_shift: int = 28
    final_shift: int = 22

    def __post_init__(self) -> None:
        if not 0 < self.b <= M32:
            raise ValueError(f"multiplier b must be a positive 32-bit integer, got {self.b}")
        if self.b % 2 == 0:
            raise ValueError(f"multiplier b must be odd, got {self.b}")
        if (self.top_shift_base, self.top_select_shift, self.final_shift) != (4, 28, 22):
            raise ValueError("shift constants are fixed at (4, 28, 22)")

    @property
    def b_inverse(self) -> int:
        return pow(self.b, -1, 1 << 32)


def _as_params(p: PermParams | int) -> PermParams:
    return p if isinstance(p, PermParams) else PermParams(p)


def stage1(w: int) -> int:
    return (w >> ((w >> 28) + 4)) ^ w


def stage1_inverse(w: int) -> int:
    # The top four bits survive stage 1 untouched, so they give back the shift.
    shift = (w >> 28) + 4
    x = w
    for _ in range(32 // shift + 1):
        x = w ^ (x >> shift)
    return x


def stage2(w: int, b: int) -> int:
    return (w * b) & M32


def stage2_inverse(w: int, b: int) -> int:
    return (w * pow(b, -1, 1 << 32)) & M32


def stage3(w: int) -> int:
    return (w >> 22) ^ w


def stage3_inverse(w: int) -> int:
    return w ^ (w >> 22)


def permute(in32: int, p: PermParams | int) -> int:
    p = _as_params(p)
    return stage3(stage2(stage1(in32 & M32), p.b))


def unpermute(out32: int, p: PermParams | int) -> int:
    """Inverse of :func:`permute`. Raises ``ValueError`` for an even ``b``."""
    p = _as_params(p)
    return stage1_inverse(stage2_inverse(stage3_inverse(out32 & M32), p.b))


def permute_array(words: np.ndarray, p: PermParams | int) -> np.ndarray:
    p = _as_params(p)
    w = np.asarray(words, dtype=np.uint32)
    w1 = (w >> ((w >> np.uint32(28)) + np.uint32(4))) ^ w
    w2 = w1 * np.uint32(p.b)
    return (w2 >> np.uint32(22)) ^ w2


def unpermute_array(words: np.ndarray, p: PermParams | int) -> np.ndarray:
    p = _as_params(p)
    w = np.asarray(words, dtype=np.uint32)
    w = w ^ (w >> np.uint32(22))
    w = w * np.uint32(p.b_inverse)
    shift = (w >> np.uint32(28)) + np.uint32(4)
    x = w.copy()
    # shift >= 4, so eight rounds recover all 32 bits.
    for _ in range(8):
        x = w ^ (x >> shift)
    return x


def parse_seed(seed: bytes | str) -> tuple[int, bytes]:
    """Split seed material into (x0, strategy material).

    The first four bytes are x0 (big-endian, so byte 0 is block A); the rest
    seeds the strategy and must be non-empty.
    """
    if isinstance(seed, str):
        try:
            seed = bytes.fromhex(seed)
        except ValueError:
            raise ValueError(f"seed is not valid hex: {seed!r}") from None
    if len(seed) < 5:
        raise ValueError(f"seed needs at least 5 bytes (4 for x0, 1+ for the strategy), got {len(seed)}")
    return int.from_bytes(seed[:4], "big"), bytes(seed[4:])


@dataclass(frozen=True)
class GeneratorConfig:
    func: str = "neg"
    strategy: str = "xorshift128p"
    strategy_seed: bytes = DEFAULT_SEED[4:]
    x0: int = int.from_bytes(DEFAULT_SEED[:4], "big")
    perm: PermParams | None = None

    def __post_init__(self) -> None:
        get_function(self.func)
        if not 0 <= self.x0 <= M32:
            raise ValueError(f"x0 must be a 32-bit word, got {self.x0}")
        if self.perm is None:
            object.__setattr__(self, "perm", PermParams(DEFAULT_B[self.func.lower()]))
        elif isinstance(self.perm, int):
            object.__setattr__(self, "perm", PermParams(self.perm))
        # Validates kind and material.
        seed_strategy(self.strategy, self.strategy_seed)

    @classmethod
    def from_seed(cls, func: str, strategy: str, seed: bytes | str, b: int | None = None) -> GeneratorConfig:
        x0, material = parse_seed(seed)
        return cls(func=func, strategy=strategy, strategy_seed=material, x0=x0,
                   perm=PermParams(b) if b is not None else None)


class Generator:
    """Sequential generator; one 32-bit output per :meth:`next`.

    :meth:`next` is the word-at-a-time reference path, :meth:`words` the
    compiled bulk path. Both advance the same state and may be interleaved.
    """

    def __init__(self, config: GeneratorConfig, strategy: StrategyGen | None = None) -> None:
        self.config = config
        self.func = get_function(config.func)
        self.perm = config.perm
        self.strategy = strategy if strategy is not None else seed_strategy(config.strategy, config.strategy_seed)
        self.state = config.x0
        self._table = np.frombuffer(self.func.table, dtype=np.uint8)

    @classmethod
    def from_seed(cls, func: str = "neg", strategy: str = "xorshift128p",
                  seed: bytes | str = DEFAULT_SEED, b: int | None = None) -> Generator:
        return cls(GeneratorConfig.from_seed(func, strategy, seed, b))

    def next(self) -> int:
        s = self.strategy.next32()
        self.state = ci_step(self.state, s, self.func)
        return permute(self.state, self.perm)

    __next__ = next

    def __iter__(self) -> Iterator[int]:
        return self

    def states(self, n: int) -> np.ndarray:
        """Advance ``n`` steps and return the internal states (unpermuted)."""
        out = np.empty(n, dtype=np.uint32)
        if n:
            s = self.strategy.fill(n)
            self.state = int(_kernels.ci_fill(np.uint32(self.state), s, self._table, out))
        return out

    def words(self, n: int) -> np.ndarray:
        return permute_array(self.states(n), self.perm)

    def chunks(self, n: int, chunk: int = 1 << 20) -> Iterator[np.ndarray]:
        while n > 0:
            k = min(n, chunk)
            yield self.words(k)
            n -= k

    def to_bytes(self, n: int) -> bytes:
        """``n`` outputs as little-endian bytes, the raw-stream layout."""
        return self.words(n).astype("<u4").tobytes()

