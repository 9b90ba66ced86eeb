import pytest

from prinparts.exact import GF, QQ
from prinparts.jets import Side, oracle_transition
from prinparts.laurent import LaurentMatrix, LaurentPoly, lp_unit_part
from prinparts.transition import check_cocycle, det_degree, transition, transition_left, transition_right


def mono(c, e):
    return LaurentPoly.monomial(c, e)


Z = LaurentPoly.zero()
ONE = LaurentPoly.constant(1)


def test_left_examples():
    assert transition_left(1, -1).matrix == LaurentMatrix([[mono(1, -1), Z], [mono(-1, -2), mono(-1, -3)]])
    assert transition_left(1, 1).matrix == LaurentMatrix([[mono(1, 1), Z], [ONE, mono(-1, -1)]])
    assert transition_left(1, 0).matrix == LaurentMatrix([[ONE, Z], [Z, mono(-1, -2)]])


def test_right_examples():
    for n in (-3, 0, 4):
        assert transition_right(1, n).matrix == LaurentMatrix([[mono(1, n), Z], [Z, mono(-1, n - 2)]])
    assert transition_right(2, 0).matrix == LaurentMatrix(
        [[ONE, Z, Z], [Z, mono(-1, -2), Z], [Z, mono(1, -3), mono(1, -4)]])
    assert transition_right(3, 5).matrix.column(0) == [mono(1, 5), Z, Z, Z]


def test_order_must_be_positive():
    with pytest.raises(IndexError):
        transition_left(0, 2)
    with pytest.raises(IndexError):
        transition_right(0, 2)


def test_left3_truncates_at_row_n():
    # 0 <= n < k, p <= n: rows above n vanish (the power of u is a polynomial)
    m = transition_left(4, 1).matrix
    assert m[2, 0].is_zero() and m[2, 1].is_zero()
    assert m[1, 0] == ONE


@pytest.mark.parametrize("k", range(1, 7))
def test_boundary_n_equals_k_matches_oracle(k):
    assert transition_left(k, k).matrix == oracle_transition(k, k, Side.LEFT)
    assert transition_left(k, k - 1).matrix == oracle_transition(k, k - 1, Side.LEFT)


@pytest.mark.parametrize("side", list(Side))
@pytest.mark.parametrize("k", range(1, 7))
def test_formula_equals_oracle_grid(side, k):
    for n in range(-8, 9):
        assert transition(k, n, side).matrix == oracle_transition(k, n, side), (k, n, side)


@pytest.mark.parametrize("k,n,side,exp", [(1, -1, "left", -4), (3, 2, "right", -4), (1, 0, "left", -2)])
def test_cocycle_examples(k, n, side, exp):
    r = check_cocycle(k, n, side)
    assert r.passed and r.det_exponent == exp == det_degree(k, n)
    e, _ = lp_unit_part(transition(k, n, side).matrix.det())
    assert e == exp


def test_cocycle_over_prime_field():
    for k in range(1, 4):
        for n in range(-3, 4):
            for side in Side:
                assert check_cocycle(k, n, side, GF(2)).passed


def test_triangular_and_det_degree_grid():
    for side in Side:
        for k in range(1, 7):
            for n in range(-8, 9):
                m = transition(k, n, side).matrix
                assert all(m[j, p].is_zero() for p in range(k + 1) for j in range(p))
                e, c = lp_unit_part(m.det())
                assert e == det_degree(k, n) and c in (QQ(1), QQ(-1))
