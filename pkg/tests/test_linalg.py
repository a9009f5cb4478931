from fractions import Fraction

import pytest

from plcq.linalg import (dot, frac, frac_str, nullspace, primitive,
                         primitive_signed, rank, rref, solve, vec)


def test_frac_parsing_and_printing():
    assert frac("3/4") == Fraction(3, 4)
    assert frac(2) == Fraction(2)
    assert frac_str(Fraction(-5, 3)) == "-5/3"
    assert frac_str(Fraction(4)) == "4"
    with pytest.raises(TypeError):
        frac(0.5)


def test_primitive_scaling():
    assert primitive(vec("2/3", "-4/3")) == vec(1, -2)
    assert primitive(vec(0, 0)) == vec(0, 0)
    assert primitive_signed(vec("-2/5", "4/5")) == vec(1, -2)


def test_rref_and_rank():
    rows = [vec(1, 2, 3), vec(2, 4, 6), vec(0, 1, 1)]
    red, piv = rref(rows)
    assert piv == [0, 1]
    assert rank(rows) == 2


def test_nullspace_orthogonal():
    rows = [vec(1, 1, 0), vec(0, 1, 1)]
    basis = nullspace(rows, 3)
    assert len(basis) == 1
    for r in rows:
        assert dot(r, basis[0]) == 0


def test_nullspace_canonical_under_row_ops():
    a = [vec(1, 2, -1), vec(0, 1, 3)]
    b = [vec(2, 5, 1), vec(1, 3, 2), vec(1, 2, -1)]  # same row space
    assert nullspace(a, 3) == nullspace(b, 3)


def test_solve():
    x = solve([vec(2, 0), vec(0, 4)], [Fraction(1), Fraction(2)])
    assert x == vec("1/2", "1/2")
    assert solve([vec(1, 1), vec(1, 1)], [Fraction(0), Fraction(1)]) is None
