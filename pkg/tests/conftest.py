import dataclasses
from fractions import Fraction

import pytest

from tek.simple_lie import build_type_a


@pytest.fixture
def corrupted_sl2():
    """``sl_2`` with ``[e, f] = 2h`` (and ``[f, e] = -2h``) while the form is left alone."""
    alg = build_type_a(1)
    structure = dict(alg.structure)
    structure[(0, 2)] = {1: Fraction(2)}
    structure[(2, 0)] = {1: Fraction(-2)}
    return dataclasses.replace(alg, structure=structure)


CRITERIA = {}


@pytest.fixture
def criterion():
    """Record ``(number, passed, detail)`` for the acceptance summary."""

    def record(number: int, passed: bool, detail: str = "") -> bool:
        CRITERIA[number] = (passed, detail)
        print(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        passed, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
