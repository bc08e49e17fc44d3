import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parents[1]
DATASETS = ROOT / "datasets"


def gaussian_instance(seed: int, n: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n), rng.standard_normal((n, k))


def well_conditioned(rng: np.random.Generator, k: int, max_cond: float = 100.0) -> np.ndarray:
    while True:
        g = rng.standard_normal((k, k))
        if np.linalg.cond(g) <= max_cond:
            return g


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from acceptance_registry import ACCEPTANCE

    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    def order(cid: str) -> tuple[int, int, str]:
        major, _, minor = cid.partition(".")
        return int(major.rstrip("ab")), int(minor) if minor.isdigit() else 0, cid

    for cid in sorted(ACCEPTANCE, key=order):
        ok, desc, detail = ACCEPTANCE[cid]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {cid:>4}  {desc}: {detail}")
