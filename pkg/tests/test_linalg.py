from fractions import Fraction as F

import pytest

from tek.linalg import EchelonBasis, InconsistentSystem, SingularSystem, fmt, frac, matmul, nullspace, solve


def test_frac_and_fmt():
    assert frac("3/6") == F(1, 2)
    assert frac(2) == F(2)
    assert fmt(F(4, 2)) == "2"
    assert fmt(F(-1, 3)) == "-1/3"


def test_solve_exact():
    assert solve([[1, 1], [1, -1]], [3, 1]) == [F(2), F(1)]
    assert solve([[F(1, 2), 0], [0, 3]], [1, 1]) == [F(2), F(1, 3)]


def test_solve_inconsistent_and_underdetermined():
    with pytest.raises(InconsistentSystem):
        solve([[1, 1], [2, 2]], [1, 3])
    with pytest.raises(SingularSystem):
        solve([[1, 1], [2, 2]], [1, 2])


def test_nullspace():
    ker = nullspace([[1, 2, 3], [2, 4, 6]])
    assert len(ker) == 2
    for v in ker:
        assert sum(a * b for a, b in zip([1, 2, 3], v)) == 0


def test_echelon_coordinates():
    basis = EchelonBasis()
    assert basis.add({0: F(1), 1: F(1)})
    assert basis.add({1: F(1)})
    assert not basis.add({0: F(2), 1: F(5)})
    assert len(basis) == 2


def test_matmul():
    assert matmul([[1, 2], [3, 4]], [[0, 1], [1, 0]]) == [[2, 1], [4, 3]]
