"""Iterated Boolean functions on 8-bit blocks and their iteration graphs.

A function f: B^8 -> B^8 is stored as a 256-entry byte table. The graph of
generalized iterations links x to every y reachable in one step by updating
any non-empty subset of x's bits with the corresponding bits of f(x).
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass

__all__ = [
    "BooleanFunc",
    "IterationGraph",
    "NEG",
    "F1",
    "IDENTITY",
    "F1_SHA256",
    "FUNCTIONS",
    "get_function",
    "lookup",
    "build_iteration_graph",
    "is_strongly_connected",
]


@dataclass(frozen=True)
class BooleanFunc:
    name: str
    table: bytes

    def __post_init__(self) -> None:
        if len(self.table) != 256:
            raise ValueError(f"{self.name}: table must have 256 entries, got {len(self.table)}")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def is_bijection(self) -> bool:
        return sorted(self.table) == list(range(256))

    def checksum(self) -> str:
        return hashlib.sha256(self.table).hexdigest()


# fmt: off
_F1_TABLE = bytes([
    223, 190, 249, 236, 243, 234, 241, 252, 183, 244, 229, 245, 179, 178, 225, 248,
    237, 254, 173, 232, 171, 202, 201, 200, 247, 198, 228, 230, 195, 242, 233, 160,
    215, 220, 205, 216, 218, 154, 221, 208, 213, 210, 212, 148, 147, 211, 217, 209,
    239, 238, 141, 140, 235, 203, 193, 204, 135, 134, 199, 197, 131, 226, 129, 224,
     63, 174, 253, 184, 251, 250, 189, 176, 191, 246, 180, 182,  51,  50, 185, 240,
     47,  46, 175, 188, 139,  42, 161, 172, 231, 164, 181, 165, 227, 130,  33,  32,
     31, 222, 153, 158, 219,  26,  25, 156, 159, 214, 151, 149, 146,  18, 144, 152,
    207, 206, 157, 136, 138, 170, 169,   8, 133,   6,   5, 196,   3, 194, 137, 192,
    255, 110, 109, 120, 107, 126, 125, 112, 103, 114, 116, 118, 123,  98, 121,  96,
     79,  78, 111, 124,  75, 122,  97, 108,  71, 100, 117, 101, 115,  66, 113,  64,
    127,  90,  89,  94,  83,  91,  81,  92,  95,  84,  87,  85,  82,  86,  80,  88,
     77,  76,  93,  72,  74, 106, 105, 104,  69, 102,  68,  70,  99,  67,  73,  65,
     55,  58,  57,  44, 187, 186,  49,  60, 119,  52,  37,  53,  35,  54, 177,  56,
     45,  62,  61,  40,  59,  10,   9, 168, 167, 166,  36,  38, 163, 162,  41,  48,
     23,  28,  13,  24, 155,  30,  29,  16,  21, 150,  20,  22,  27,  19, 145,  17,
    143, 142,  15,  14,  43,  11,   1,  12,  39,   4,   7, 132,   2,  34,   0, 128,
])
# fmt: on

# Guards the transcription above.
F1_SHA256 = "5da84c38492d8893a5a22e938558f31a5e8d72dff5c187d7bad152db1c70cca3"

NEG = BooleanFunc("neg", bytes(255 - x for x in range(256)))
F1 = BooleanFunc("f1", _F1_TABLE)
# Not chaotic; kept for exercising the failing branch of the connectivity check.
IDENTITY = BooleanFunc("identity", bytes(range(256)))

FUNCTIONS = {f.name: f for f in (NEG, F1, IDENTITY)}


def get_function(name: str) -> BooleanFunc:
    try:
        return FUNCTIONS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown function {name!r}; expected one of {sorted(FUNCTIONS)}") from None


def lookup(f: BooleanFunc, x: int) -> int:
    return f.table[x]


@dataclass(frozen=True)
class IterationGraph:
    """Directed graph on the 256 states of B^8.

    ``successors[x]`` is the set of states reachable from ``x`` in one
    generalized iteration with a non-empty update mask.
    """

    func_name: str
    successors: tuple[frozenset[int], ...]

    @property
    def n_nodes(self) -> int:
        return len(self.successors)

    @property
    def n_edges(self) -> int:
        return sum(len(s) for s in self.successors)


def build_iteration_graph(f: BooleanFunc) -> IterationGraph:
    succ = []
    for x in range(256):
        fx = f.table[x]
        succ.append(frozenset((fx & s) | (x & ~s & 0xFF) for s in range(1, 256)))
    return IterationGraph(f.name, tuple(succ))


def _reach_all(adj: list[list[int]] | tuple[frozenset[int], ...], start: int, n: int) -> bool:
    seen = [False] * n
    seen[start] = True
    count = 1
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                queue.append(v)
    return count == n


def is_strongly_connected(g: IterationGraph) -> bool:
    """Forward and backward BFS from node 0 must both reach every node."""
    n = g.n_nodes
    if n == 0:
        return True
    if not _reach_all(g.successors, 0, n):
        return False
    reverse: list[list[int]] = [[] for _ in range(n)]
    for u, vs in enumerate(g.successors):
        for v in vs:
            reverse[v].append(u)
    return _reach_all(reverse, 0, n)
