"""Desk-scale statistical checks over generator output.

These are quick proxies, not replacements for NIST SP 800-22 or TestU01.
Bits are taken most significant bit first from each 32-bit word, so the
byte-level tests see each word as four big-endian bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special, stats

from .core import Generator, GeneratorConfig

__all__ = [
    "NIST_ALPHA",
    "TESTU01_BAND",
    "StreamTooShortError",
    "BitStream",
    "TestReport",
    "monobit",
    "runs",
    "byte_chi_square",
    "serial_correlation",
    "run_battery",
    "materialize",
    "format_table",
    "format_lines",
]

NIST_ALPHA = 0.0001
TESTU01_BAND = (0.001, 0.999)
MIN_BITS = 100


class StreamTooShortError(ValueError):
    pass


def erfc_p(z: float) -> float:
    return float(special.erfc(z))


def chi2_sf(x: float, dof: int) -> float:
    return float(stats.chi2.sf(x, dof))


class BitStream:
    """An immutable sequence of bits backed by a uint8 array of 0/1 values."""

    def __init__(self, bits: np.ndarray) -> None:
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 1:
            raise ValueError("bits must be one-dimensional")
        bits.setflags(write=False)
        self.bits = bits

    @classmethod
    def from_words(cls, words: np.ndarray, n_bits: int | None = None) -> BitStream:
        raw = np.asarray(words, dtype=">u4").view(np.uint8)
        bits = np.unpackbits(raw)
        return cls(bits if n_bits is None else bits[:n_bits])

    @classmethod
    def from_bytes(cls, data: bytes | np.ndarray) -> BitStream:
        return cls(np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8)))

    @classmethod
    def from_string(cls, s: str) -> BitStream:
        return cls(np.frombuffer(s.encode(), dtype=np.uint8) - ord("0"))

    def __len__(self) -> int:
        return len(self.bits)

    @property
    def length(self) -> int:
        return len(self.bits)

    def as_bytes(self) -> np.ndarray:
        """Whole bytes only; a trailing partial byte is dropped."""
        n = len(self.bits) // 8 * 8
        return np.packbits(self.bits[:n])


@dataclass(frozen=True)
class TestReport:
    __test__ = False

    test_name: str
    statistic: float
    p_value: float
    applicable: bool = True
    note: str = ""

    def __post_init__(self) -> None:
        p = self.p_value
        if math.isnan(p):
            p = 0.0
        object.__setattr__(self, "p_value", min(1.0, max(0.0, float(p))))

    @property
    def verdict_nist(self) -> bool:
        return self.applicable and self.p_value > NIST_ALPHA

    @property
    def verdict_testu01_style(self) -> bool:
        lo, hi = TESTU01_BAND
        return self.applicable and lo <= self.p_value <= hi

    @property
    def passed(self) -> bool:
        return self.verdict_nist and self.verdict_testu01_style


def _require(s: BitStream, n_bits: int, what: str) -> None:
    if len(s) < n_bits:
        raise StreamTooShortError(f"{what} needs at least {n_bits} bits, got {len(s)}")


def monobit(s: BitStream) -> TestReport:
    _require(s, MIN_BITS, "monobit")
    n = len(s)
    ones = int(np.count_nonzero(s.bits))
    stat = abs(2 * ones - n) / math.sqrt(n)
    return TestReport("monobit", stat, erfc_p(stat / math.sqrt(2)))


def runs(s: BitStream) -> TestReport:
    """NIST runs test.

    When the ones proportion fails the frequency prerequisite the report is
    marked not applicable with p = 0, as the NIST procedure prescribes.
    """
    _require(s, MIN_BITS, "runs")
    n = len(s)
    pi = np.count_nonzero(s.bits) / n
    if abs(pi - 0.5) >= 2 / math.sqrt(n):
        return TestReport("runs", math.nan, 0.0, applicable=False,
                          note=f"not applicable: ones proportion {pi:.4f} fails frequency prerequisite")
    v_obs = 1 + int(np.count_nonzero(s.bits[1:] != s.bits[:-1]))
    spread = 2 * math.sqrt(2 * n) * pi * (1 - pi)
    stat = abs(v_obs - 2 * n * pi * (1 - pi)) / spread
    return TestReport("runs", float(v_obs), erfc_p(stat))


def byte_chi_square(s: BitStream) -> TestReport:
    data = s.as_bytes()
    if len(data) < 256 * 5:
        raise StreamTooShortError(f"byte_chi_square needs at least 1280 bytes, got {len(data)}")
    counts = np.bincount(data, minlength=256)
    expected = len(data) / 256
    stat = float(((counts - expected) ** 2).sum() / expected)
    return TestReport("byte_chi_square", stat, chi2_sf(stat, 255))


def serial_correlation(s: BitStream) -> TestReport:
    """Lag-1 Pearson correlation of consecutive bytes.

    Under independence r * sqrt(n - 1) is approximately standard normal; the
    p-value is two-sided. A zero-variance stream is a degenerate failure.
    """
    data = s.as_bytes()
    if len(data) < 1000:
        raise StreamTooShortError(f"serial_correlation needs at least 1000 bytes, got {len(data)}")
    x = data[:-1].astype(np.float64)
    y = data[1:].astype(np.float64)
    x -= x.mean()
    y -= y.mean()
    denom = math.sqrt(float(x @ x) * float(y @ y))
    if denom == 0:
        return TestReport("serial_correlation", math.nan, 0.0, applicable=False,
                          note="degenerate: zero variance")
    r = float(x @ y) / denom
    z = abs(r) * math.sqrt(len(x))
    return TestReport("serial_correlation", r, erfc_p(z / math.sqrt(2)))


TESTS = (monobit, runs, byte_chi_square, serial_correlation)


def materialize(config: GeneratorConfig | Generator, n_bits: int) -> BitStream:
    gen = config if isinstance(config, Generator) else Generator(config)
    return BitStream.from_words(gen.words(-(-n_bits // 32)), n_bits)


def run_battery(config: GeneratorConfig | Generator, n_bits: int, *, min_bits: int = 10**6) -> list[TestReport]:
    """Materialize ``n_bits`` once and run every test on it.

    A test that raises is recorded as a not-applicable failure; the battery
    itself never aborts.
    """
    if n_bits < min_bits:
        raise StreamTooShortError(f"battery needs at least {min_bits} bits, got {n_bits}")
    stream = materialize(config, n_bits)
    reports = []
    for test in TESTS:
        try:
            reports.append(test(stream))
        except ValueError as exc:
            reports.append(TestReport(test.__name__, math.nan, 0.0, applicable=False, note=str(exc)))
    return reports


def _verdict(ok: bool) -> str:
    return "pass" if ok else "FAIL"


def format_table(reports: list[TestReport]) -> str:
    lines = [f"{'test':<20} {'statistic':>14} {'p-value':>10}  {'NIST':<5} {'TestU01':<7}"]
    for r in reports:
        stat = "n/a" if math.isnan(r.statistic) else f"{r.statistic:.6g}"
        line = f"{r.test_name:<20} {stat:>14} {r.p_value:>10.6f}  {_verdict(r.verdict_nist):<5} {_verdict(r.verdict_testu01_style):<7}"
        if r.note:
            line += f"  ({r.note})"
        lines.append(line)
    return "\n".join(lines)


def format_lines(reports: list[TestReport]) -> str:
    """One ``name<TAB>statistic<TAB>p<TAB>verdicts`` line per report."""
    return "\n".join(
        f"{r.test_name}\t{r.statistic!r}\t{r.p_value!r}\t"
        f"nist={_verdict(r.verdict_nist).lower()},testu01={_verdict(r.verdict_testu01_style).lower()}"
        for r in reports
    )
