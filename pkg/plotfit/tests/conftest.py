import math
import os
import shutil
import subprocess
from pathlib import Path

import pytest

HEADER = "n,r,matrix_seed,init_seed,error,wall_time,outer_iters"
DESK_CSV_ENV = "CHEBRANK_BENCH_CSV"
DEFAULT_DESK_CSV = Path(__file__).resolve().parents[2] / "artifacts" / "bench_desk.csv"
DESK_ARGS = [
    "bench", "--sizes", "10:200:10", "--matrices", "3", "--inits", "5",
    "--seed", "20260809",
]


def write_bench_csv(path, sizes, error_fn, time_fn, matrices=1, inits=1):
    lines = [HEADER]
    for n in sizes:
        r = max(1, round(math.sqrt(n)))
        for mi in range(matrices):
            for ii in range(inits):
                lines.append(
                    f"{n},{r},{mi + 1},{ii + 1},{error_fn(n):.17g},{time_fn(n):.17g},5"
                )
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")
    return Path(path)


@pytest.fixture
def synth_csv(tmp_path):
    def build(error_fn, time_fn=lambda n: 1e-8 * n**3.5, sizes=range(10, 201, 10), **kw):
        return write_bench_csv(tmp_path / "bench.csv", sizes, error_fn, time_fn, **kw)

    return build


@pytest.fixture(scope="session")
def desk_csv(tmp_path_factory):
    """The desk-scale bench CSV: reuse the artifact if present, else run
    the approximation CLI (the producing tool's public interface)."""
    override = os.environ.get(DESK_CSV_ENV)
    if override and Path(override).exists():
        return Path(override)
    if DEFAULT_DESK_CSV.exists():
        return DEFAULT_DESK_CSV
    exe = shutil.which("chebrank")
    if exe is None:
        pytest.skip("no bench CSV artifact and the chebrank CLI is not installed")
    out = tmp_path_factory.mktemp("bench") / "bench_desk.csv"
    subprocess.run([exe, *DESK_ARGS, "--out", str(out)], check=True,
                   capture_output=True, text=True, timeout=3600)
    return out
