import io
import subprocess
import sys

import numpy as np
import pytest

from ciprng.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, bench, emit, main
from ciprng.core import Generator, GeneratorConfig
from ciprng.functions import F1

from conftest import DOC_SEED, FIXTURES, GOLDEN_CONFIGS, read_words


def run_cli(capsysbinary, *argv):
    code = main(list(argv))
    out, err = capsysbinary.readouterr()
    return code, out, err.decode()


@pytest.mark.parametrize("func, strategy, b, fixture", GOLDEN_CONFIGS)
def test_gen_raw_matches_golden(capsysbinary, func, strategy, b, fixture):
    code, out, _ = run_cli(capsysbinary, "gen", "--function", func, "--strategy", strategy,
                           "--b", str(b), "--seed", DOC_SEED, "--count", "16")
    assert code == EXIT_OK
    expected = read_words(FIXTURES / fixture)[:16]
    assert len(out) == 64
    assert np.frombuffer(out, dtype="<u4").tolist() == expected


def test_gen_hex_format(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "gen", "--seed", DOC_SEED, "--count", "4", "--format", "hex")
    assert code == EXIT_OK
    assert out.decode().splitlines() == [f"{w:08x}" for w in read_words(FIXTURES / GOLDEN_CONFIGS[0][3])[:4]]


def test_gen_count_zero(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "gen", "--count", "0")
    assert code == EXIT_OK
    assert out == b""


def test_gen_even_b_rejected(capsysbinary):
    code, out, err = run_cli(capsysbinary, "gen", "--b", "96")
    assert code == EXIT_USAGE
    assert out == b""
    assert "odd" in err


@pytest.mark.parametrize("seed", ["0102", "not-hex", "00"])
def test_gen_bad_seed(capsysbinary, seed):
    code, _, err = run_cli(capsysbinary, "gen", "--seed", seed, "--count", "1")
    assert code == EXIT_USAGE
    assert "seed" in err


def test_gen_unwritable_path(capsysbinary, tmp_path):
    code, _, err = run_cli(capsysbinary, "gen", "--out", str(tmp_path / "missing" / "x.bin"))
    assert code == EXIT_USAGE
    assert "cannot write" in err


def test_gen_to_file(capsysbinary, tmp_path):
    path = tmp_path / "s.bin"
    assert main(["gen", "--count", "1000", "--out", str(path)]) == EXIT_OK
    assert path.read_bytes() == Generator(GeneratorConfig()).to_bytes(1000)


def test_env_seed_fallback(capsysbinary, monkeypatch):
    other = "deadbeef00112233445566778899aabbccddeeff"
    monkeypatch.setenv("CIPRNG_SEED", other)
    _, from_env, _ = run_cli(capsysbinary, "gen", "--count", "8")
    _, explicit, _ = run_cli(capsysbinary, "gen", "--count", "8", "--seed", other)
    _, flag_wins, _ = run_cli(capsysbinary, "gen", "--count", "8", "--seed", DOC_SEED)
    assert from_env == explicit
    assert flag_wins != from_env


def test_usage_errors_exit_2(capsysbinary):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--function", "rot13"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_USAGE


@pytest.mark.parametrize("chunk", [1, 7, 1000, 1 << 20])
def test_emission_independent_of_chunking(chunk):
    cfg = GeneratorConfig.from_seed("f1", "taus88", DOC_SEED)
    buf = io.BytesIO()
    emit(Generator(cfg), 3000, buf, "raw", chunk=chunk)
    gen = Generator(cfg)
    word_at_a_time = b"".join(gen.next().to_bytes(4, "little") for _ in range(3000))
    assert buf.getvalue() == word_at_a_time


def test_verify_f1_passes(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "verify", "--function", "f1", "--samples", "10000")
    assert code == EXIT_OK
    lines = out.decode().splitlines()
    assert all(line.startswith("PASS") for line in lines)
    assert any("scc-f1" in line for line in lines)


def test_verify_identity_fails(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "verify", "--function", "identity", "--samples", "1000")
    assert code == EXIT_FAIL
    assert "FAIL  scc-identity" in out.decode()


def test_verify_neg_roundtrip(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "verify", "--function", "neg", "--b", "95")
    assert code == EXIT_OK
    assert "PASS  permutation-roundtrip" in out.decode()


def test_verify_even_b_names_failing_check(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "verify", "--function", "neg", "--b", "94")
    assert code == EXIT_FAIL
    assert "FAIL  permutation-roundtrip" in out.decode()


def test_test_command_passes(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "test", "--function", "f1", "--strategy", "lfsr113",
                           "--seed", DOC_SEED, "--bits", "1000000", "--tsv")
    assert code == EXIT_OK
    lines = out.decode().splitlines()
    assert [l.split("\t")[0] for l in lines] == ["monobit", "runs", "byte_chi_square", "serial_correlation"]
    assert all(len(l.split("\t")) == 4 for l in lines)


def test_test_command_constant_strategy_fails(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "test", "--strategy", "constant", "--bits", "1000000")
    assert code == EXIT_FAIL
    assert "FAIL" in out.decode()


def test_test_command_rejects_small_bits(capsysbinary):
    code, _, err = run_cli(capsysbinary, "test", "--bits", "1000")
    assert code == EXIT_USAGE


def test_export_f1(capsysbinary, tmp_path):
    path = tmp_path / "f1.txt"
    assert main(["export-f1", "--out", str(path)]) == EXIT_OK
    lines = path.read_text().splitlines()
    assert len(lines) == 256
    assert bytes(int(l, 16) for l in lines) == F1.table
    assert lines[:2] == ["df", "be"]


@pytest.mark.parametrize("func, strategy, b, fixture", GOLDEN_CONFIGS)
def test_golden_check(capsysbinary, func, strategy, b, fixture):
    code, out, _ = run_cli(capsysbinary, "golden", "--function", func, "--strategy", strategy,
                           "--b", str(b), "--seed", DOC_SEED, "--check", str(FIXTURES / fixture))
    assert code == EXIT_OK, out


def test_golden_output_format(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "golden", "--seed", DOC_SEED)
    assert code == EXIT_OK
    text = out.decode()
    assert text.endswith("\n")
    assert text == (FIXTURES / GOLDEN_CONFIGS[0][3]).read_text()


def test_golden_check_mismatch(capsysbinary, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("00000000\n")
    code, out, _ = run_cli(capsysbinary, "golden", "--check", str(bad))
    assert code == EXIT_FAIL
    assert "mismatch at word 0" in out.decode()


def test_bench_small(capsysbinary):
    rates = bench(GeneratorConfig(), 200_000, chunk=50_000)
    assert set(rates) == {"strategy", "strategy+ci", "full"}
    assert all(r > 0 for r in rates.values())
    code, out, _ = run_cli(capsysbinary, "bench", "--count", "100000")
    assert code == EXIT_OK
    text = out.decode()
    for stage in ("strategy", "strategy+ci", "full"):
        assert f"\n{stage} " in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ciprng", "gen", "--count", "2", "--format", "hex",
                           "--seed", DOC_SEED], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.split() == [f"{w:08x}" for w in read_words(FIXTURES / GOLDEN_CONFIGS[0][3])[:2]]
