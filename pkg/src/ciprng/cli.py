"""Command-line front end.

Exit codes: 0 success, 1 a verification or statistical check failed,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys
import time
from typing import IO, Iterator

import numpy as np

from . import __version__
from .core import (
    DEFAULT_B,
    DEFAULT_SEED,
    Generator,
    GeneratorConfig,
    PermParams,
    permute,
    permute_array,
    unpermute,
    unpermute_array,
)
from .functions import F1, F1_SHA256, NEG, build_iteration_graph, get_function, is_strongly_connected
from .statqual import format_lines, format_table, run_battery
from .strategies import seed as seed_strategy

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

FUNCTION_CHOICES = ["neg", "f1", "identity"]
STRATEGY_CHOICES = ["lfsr113", "taus88", "xorshift128p", "xorshift128", "constant"]

GOLDEN_COUNT = 64


class UsageError(Exception):
    pass


def _u32(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value <= 0xFFFFFFFF:
        raise argparse.ArgumentTypeError(f"{text} is not a 32-bit unsigned integer")
    return value


def _count(text: str) -> int:
    value = int(float(text)) if "e" in text.lower() else int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("count must be non-negative")
    return value


def _add_generator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--function", default="neg", choices=FUNCTION_CHOICES, metavar="{neg,f1}",
                   help="iterated Boolean function (default: neg)")
    p.add_argument("--strategy", default="xorshift128p", choices=STRATEGY_CHOICES,
                   metavar="{lfsr113,taus88,xorshift128p,xorshift128}",
                   help="embedded strategy generator (default: xorshift128p)")
    p.add_argument("--seed", default=None,
                   help="hex seed: 4 bytes of initial state (big-endian) then strategy material; "
                        "falls back to $CIPRNG_SEED, then a built-in default")
    p.add_argument("--b", type=_u32, default=None,
                   help="odd permutation multiplier (default: 95 for neg, 811 for f1)")


def build_config(args: argparse.Namespace) -> GeneratorConfig:
    seed = args.seed or os.environ.get("CIPRNG_SEED") or DEFAULT_SEED.hex()
    try:
        return GeneratorConfig.from_seed(args.function, args.strategy, seed, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


@contextlib.contextmanager
def _open_out(path: str, binary: bool) -> Iterator[IO]:
    if path == "-":
        yield sys.stdout.buffer if binary else sys.stdout
        return
    try:
        fh = open(path, "wb" if binary else "w")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc
    with fh:
        yield fh


def emit(gen: Generator, count: int, out: IO, fmt: str, chunk: int = 1 << 20) -> None:
    """Write ``count`` words; raw is little-endian per word, hex one word per line."""
    for words in gen.chunks(count, chunk):
        if fmt == "raw":
            out.write(words.astype("<u4").tobytes())
        else:
            out.write("".join(f"{int(w):08x}\n" for w in words))


def cmd_gen(args: argparse.Namespace) -> int:
    gen = Generator(build_config(args))
    with _open_out(args.out, args.format == "raw") as out:
        emit(gen, args.count, out, args.format)
        out.flush()
    return EXIT_OK


def verify_checks(function: str, b: int | None, samples: int = 10**6, seed: int = 0) -> list[tuple[str, bool, str]]:
    f = get_function(function)
    checks = []

    checks.append(("f1-table-size", len(F1.table) == 256, f"{len(F1.table)} entries"))
    checks.append(("f1-checksum", F1.checksum() == F1_SHA256, F1.checksum()[:16]))
    checks.append(("f1-bijective", F1.is_bijection(), "permutation of 0..255"))
    checks.append(("neg-complement", all(NEG.table[x] == 255 - x for x in range(256)), "table[x] == 255 - x"))

    g = build_iteration_graph(f)
    checks.append((f"scc-{f.name}", is_strongly_connected(g), f"{g.n_nodes} nodes, {g.n_edges} edges"))

    try:
        p = PermParams(b if b is not None else DEFAULT_B[f.name])
    except ValueError as exc:
        checks.append(("permutation-roundtrip", False, str(exc)))
        return checks
    rng = np.random.default_rng(seed)
    words = rng.integers(0, 1 << 32, size=samples, dtype=np.uint32)
    ok = bool(np.array_equal(unpermute_array(permute_array(words, p), p), words))
    edges = [0, 1, 1 << 31, 0xFFFFFFFF]
    ok = ok and all(unpermute(permute(w, p), p) == w for w in edges)
    checks.append(("permutation-roundtrip", ok, f"b={p.b}, {samples} random words + boundaries"))
    return checks


def cmd_verify(args: argparse.Namespace) -> int:
    checks = verify_checks(args.function, args.b, args.samples)
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name:<24} {detail}")
    failed = [name for name, ok, _ in checks if not ok]
    if failed:
        print(f"failed: {', '.join(failed)}")
        return EXIT_FAIL
    return EXIT_OK


def cmd_test(args: argparse.Namespace) -> int:
    config = build_config(args)
    if args.bits < 10**6:
        raise UsageError("--bits must be at least 1000000")
    reports = run_battery(config, args.bits)
    print(format_lines(reports) if args.tsv else format_table(reports))
    return EXIT_OK if all(r.verdict_nist for r in reports) else EXIT_FAIL


def bench(config: GeneratorConfig, count: int, chunk: int = 1 << 22) -> dict[str, float]:
    """Words per second for the strategy alone, strategy + iteration, and the full pipeline."""
    # Warm-up triggers compilation and page faults outside the timed region.
    Generator(config).words(1 << 12)

    rates = {}
    strat = seed_strategy(config.strategy, config.strategy_seed)
    t0 = time.perf_counter()
    for k in _spans(count, chunk):
        strat.fill(k)
    rates["strategy"] = count / (time.perf_counter() - t0)

    gen = Generator(config)
    t0 = time.perf_counter()
    for k in _spans(count, chunk):
        gen.states(k)
    rates["strategy+ci"] = count / (time.perf_counter() - t0)

    gen = Generator(config)
    t0 = time.perf_counter()
    for k in _spans(count, chunk):
        gen.words(k)
    rates["full"] = count / (time.perf_counter() - t0)
    return rates


def _spans(count: int, chunk: int) -> Iterator[int]:
    while count > 0:
        yield min(count, chunk)
        count -= chunk


def cmd_bench(args: argparse.Namespace) -> int:
    config = build_config(args)
    if args.count == 0:
        raise UsageError("--count must be positive")
    rates = bench(config, args.count)
    print(f"{'stage':<14} {'words/s':>14} {'bytes/s':>14}  ({args.count} words, {config.func}+{config.strategy})")
    for stage, rate in rates.items():
        print(f"{stage:<14} {rate:>14.4g} {4 * rate:>14.4g}")
    return EXIT_OK


def cmd_export_f1(args: argparse.Namespace) -> int:
    with _open_out(args.out, False) as out:
        out.write("".join(f"{v:02x}\n" for v in F1.table))
    return EXIT_OK


def read_golden(path: str) -> list[int]:
    with open(path) as fh:
        return [int(line, 16) for line in fh if line.strip()]


def cmd_golden(args: argparse.Namespace) -> int:
    gen = Generator(build_config(args))
    words = [int(w) for w in gen.words(args.count)]
    if args.check:
        try:
            expected = read_golden(args.check)
        except OSError as exc:
            raise UsageError(f"cannot read {args.check}: {exc.strerror}") from exc
        if expected != words:
            bad = next((i for i, (a, b) in enumerate(zip(expected, words)) if a != b), min(len(expected), len(words)))
            print(f"FAIL  golden mismatch at word {bad}")
            return EXIT_FAIL
        print(f"PASS  {len(words)} words match {args.check}")
        return EXIT_OK
    with _open_out(args.out, False) as out:
        out.write("".join(f"{w:08x}\n" for w in words))
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ciprng",
        description="Chaotic-iteration PRNG: stream generation, precondition checks and a mini battery.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit generator output",
                       description="Emit --count 32-bit words. raw: 4 little-endian bytes per word "
                                   "(the layout TestU01/PractRand stdin adapters expect); "
                                   "hex: one lowercase 8-digit word per line.")
    _add_generator_flags(p)
    p.add_argument("--count", type=_count, default=16)
    p.add_argument("--out", default="-", help="output path, or - for stdout")
    p.add_argument("--format", choices=["raw", "hex"], default="raw")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("verify", help="check chaos preconditions and permutation bijectivity")
    p.add_argument("--function", default="f1", choices=FUNCTION_CHOICES, metavar="{neg,f1}")
    p.add_argument("--b", type=_u32, default=None)
    p.add_argument("--samples", type=_count, default=10**6, help="random words in the round-trip check")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("test", help="run the desk-scale statistical battery")
    _add_generator_flags(p)
    p.add_argument("--bits", type=_count, default=10**7)
    p.add_argument("--tsv", action="store_true", help="machine-readable tab-separated lines")
    p.set_defaults(handler=cmd_test)

    p = sub.add_parser("bench", help="measure software throughput of each pipeline stage")
    _add_generator_flags(p)
    p.add_argument("--count", type=_count, default=10**8)
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("export-f1", help="write the F1 table, one 2-digit hex byte per line")
    p.add_argument("--out", default="-")
    p.set_defaults(handler=cmd_export_f1)

    p = sub.add_parser("golden", help="print or check a golden vector (hex, one word per line)")
    _add_generator_flags(p)
    p.add_argument("--count", type=_count, default=GOLDEN_COUNT)
    p.add_argument("--out", default="-")
    p.add_argument("--check", metavar="PATH", help="compare against a committed fixture instead of printing")
    p.set_defaults(handler=cmd_golden)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"ciprng: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # Downstream consumers such as `head` close the pipe early.
        sys.stderr.close()
        return EXIT_OK
