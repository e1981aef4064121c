"""Shared fixtures and brute-force oracles."""

from __future__ import annotations

import itertools
import os
import random

import pytest
from hypothesis import HealthCheck, settings

from acirank import FieldSpec, matrix
from acirank import linalg
from acirank.aci import complete

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = os.path.join(os.path.dirname(__file__), "data")

Q = FieldSpec.rational()
GF2, GF3, GF5, GF7 = (FieldSpec.gf(p) for p in (2, 3, 5, 7))

M5_ROWS = [
    ["1", "x1", "y1", "z1", "1"],
    ["0", "0", "y2", "z2", "t1"],
    ["0", "0", "0", "z3", "t2"],
    ["0", "0", "0", "0", "t3"],
    ["0", "0", "0", "0", "1"],
]
ONES_ROWS = [["1", "1", "1", "1"], ["1", "1", "1", "x"], ["1", "1", "1", "y"]]
SWEEP_ROWS = [["x+2", "1", "z"], ["x+1", "8y", "3z-5"], ["x", "4y", "z-2"], ["1", "4y", "2z-3"]]
TWIN_TALL_ROWS = [["1", "0", "x"], ["0", "1", "y"], ["0", "0", "1"], ["0", "0", "1"]]
TWIN_SQUARE_ROWS = [["1", "0", "x"], ["0", "1", "y"], ["0", "0", "1"]]


def data_path(name: str) -> str:
    return os.path.join(DATA, name)


@pytest.fixture
def m5():
    return matrix(M5_ROWS)


@pytest.fixture
def ones():
    return matrix(ONES_ROWS)


@pytest.fixture
def sweep_example():
    return matrix(SWEEP_ROWS)


def exhaustive_ranks(M):
    """Every completion rank, computed without the library's evaluator."""
    f = M.field
    ids = M.active_ids()
    base = {ind.id: 0 for ind in M.registry}
    out = set()
    for values in itertools.product(list(f.elements()), repeat=len(ids)):
        out.add(linalg.rank(f, complete(M, {**base, **dict(zip(ids, values))}), M.n))
    return out or {0}


def exhaustive_max(M) -> int:
    return max(exhaustive_ranks(M))


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


def aci_matrices(fields=(GF2, GF3), max_m=4, max_n=4, min_dim=0, max_vars=4):
    """Hypothesis strategy: sparse random ACI-matrices built from a drawn seed."""
    from hypothesis import strategies as st
    from acirank.generators import random_aci

    return st.builds(
        lambda seed, f, m, n: random_aci(rng_for(seed), f, m, n, max_vars=max_vars),
        st.integers(0, 2**32 - 1), st.sampled_from(list(fields)),
        st.integers(min_dim, max_m), st.integers(min_dim, max_n),
    )


ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        num = int(report.nodeid.rsplit("_", 1)[1])
        ACCEPTANCE[num] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        outcome = ACCEPTANCE.get(num, "not run")
        mark = "PASS" if outcome == "passed" else "FAIL" if outcome == "failed" else outcome.upper()
        terminalreporter.write_line(f"criterion {num:2d}: {mark}  {CRITERIA[num]}")
