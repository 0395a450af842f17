"""Acceptance criteria 1-11, each printed as a single pass/fail line."""

from __future__ import annotations

import os
import subprocess
import sys
import time

import pytest

from tregular.checks import CRITERIA, CheckConfig, run_criterion

# wall-clock budgets in seconds
LIMITS = {1: 1, 2: 5, 3: 10, 4: 60, 5: 5, 6: 30, 7: 10, 8: 30, 9: 180, 10: 20}
CONFIG = CheckConfig(seed=42, samples=200_000, sigmas=4.0)


def announce(capsys, number: int, ok: bool, text: str) -> None:
    with capsys.disabled():
        print(f"\ncriterion {number:>2} {'PASS' if ok else 'FAIL'}: {text}")


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    start = time.perf_counter()
    cases = run_criterion(number, CONFIG)
    elapsed = time.perf_counter() - start
    failed = [c for c in cases if c.status == "fail"]
    in_time = elapsed < LIMITS[number]
    label = CRITERIA[number][0]
    summary = f"{label}, {len(cases) - len(failed)}/{len(cases)} cases in {elapsed:.2f}s (limit {LIMITS[number]}s)"
    announce(capsys, number, not failed and in_time, summary)
    assert cases
    assert not failed, "\n".join(f"{c.name}: {c.detail}" for c in failed)
    assert in_time, summary


def test_criterion_11_determinism(capsys, tmp_path):
    env = dict(os.environ)
    outputs = []
    for _ in range(2):
        proc = subprocess.run(
            [sys.executable, "-m", "tregular", "verify", "all", "--seed", "42"],
            capture_output=True,
            env=env,
            check=False,
        )
        assert proc.returncode == 0, proc.stderr.decode()
        outputs.append(proc.stdout)
    same = outputs[0] == outputs[1]
    announce(capsys, 11, same, f"verify all --seed 42 twice, {len(outputs[0])} bytes each, identical={same}")
    assert same
