import shutil
import subprocess
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"
ORACLES = Path(__file__).parent / "oracles"

DOC_SEED = "0123456789abcdeffedcba98765432100f1e2d3c"
DOC_MATERIAL = bytes.fromhex(DOC_SEED)[4:]

GOLDEN_CONFIGS = [
    ("neg", "xorshift128p", 95, "golden_neg_xorshift128p_b95.txt"),
    ("f1", "lfsr113", 811, "golden_f1_lfsr113_b811.txt"),
]


def read_words(path):
    return [int(line, 16) for line in Path(path).read_text().split()]


@pytest.fixture(scope="session")
def c_oracle(tmp_path_factory):
    """Compiled straight-line C reference, or skip when no compiler is present."""
    cc = shutil.which("cc") or shutil.which("gcc")
    if cc is None:
        pytest.skip("no C compiler")
    exe = tmp_path_factory.mktemp("oracle") / "ciprng_ref"
    subprocess.run([cc, "-O2", "-o", str(exe), str(ORACLES / "ciprng_ref.c")], check=True, capture_output=True)

    def run(*args):
        out = subprocess.run([str(exe), *map(str, args)], check=True, capture_output=True, text=True).stdout
        return [int(line, 16) for line in out.split()]

    return run
