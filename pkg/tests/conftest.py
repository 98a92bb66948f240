import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from shiftlattice.exactlin import Matrix, unit
from shiftlattice.shifts import ShiftSpec
from shiftlattice.weights import WeightFamily

ACCEPTANCE = {}


def record(number: int, passed: bool, detail: str = ""):
    # a parametrized criterion passes only if every instance does
    if number in ACCEPTANCE and not ACCEPTANCE[number][0]:
        return
    ACCEPTANCE[number] = (passed, detail)


@contextmanager
def criterion(number: int, title: str):
    """Record PASS if the block finishes, FAIL (and re-raise) otherwise."""
    start = time.perf_counter()
    info = {}
    try:
        yield info
    except BaseException as exc:
        record(number, False, f"{title} [{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}]")
        raise
    elapsed = info.get("elapsed", time.perf_counter() - start)
    record(number, True, f"{title} ({elapsed:.2f} s)")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if passed else 'FAIL'}  {detail}")


def rand_fraction(rng, zero_prob=0.3, num=6, den=4):
    if rng.random() < zero_prob:
        return Fraction(0)
    return Fraction(int(rng.integers(-num, num + 1)), int(rng.integers(1, den + 1)))


def rand_matrix(rng, rows, cols, zero_prob=0.3):
    return Matrix.from_rows([[rand_fraction(rng, zero_prob) for _ in range(cols)] for _ in range(rows)], cols)


def rand_low_rank(rng, rows, cols, r):
    """Product of rows x r and r x cols random matrices (rank <= r)."""
    a = rand_matrix(rng, rows, r, 0.2)
    b = rand_matrix(rng, r, cols, 0.2)
    return a @ b


def e(N, i):
    return unit(N, i)


@pytest.fixture
def ones():
    return WeightFamily("constant", (1,))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def spec_of(name, N, direction="backward"):
    from shiftlattice.weights import parse_family

    return ShiftSpec(parse_family(name), N, direction)
