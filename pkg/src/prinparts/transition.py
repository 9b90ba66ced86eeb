"""Closed-form transition matrices of Pr^k(O(n)) and their consistency checks."""

from __future__ import annotations

from dataclasses import dataclass

from .exact import QQ, Ring, binom
from .jets import Side, oracle_transition, oracle_transition_swapped
from .laurent import LaurentMatrix, LaurentPoly, NotMonomial, lp_unit_part


@dataclass(frozen=True)
class TransitionMatrix:
    k: int
    n: int
    side: Side
    matrix: LaurentMatrix

    @property
    def ring(self) -> Ring:
        return self.matrix.ring


def det_degree(k: int, n: int) -> int:
    """Degree of the determinant line bundle of Pr^k(O(n))."""
    return (k + 1) * n - k * (k + 1)


def _check_order(k: int):
    if k < 1:
        raise IndexError(f"order k must be >= 1, got {k}")


def _left_entry(k: int, n: int, j: int, p: int) -> tuple[int, int]:
    """(coefficient, exponent) of row j, column p of L^k_n."""
    if j < p:
        return 0, 0
    exp = n - p - j
    if n < 0 or (n < k and p > n):
        return (-1) ** j * binom(j - n - 1, p - n - 1), exp
    if n >= k:
        return (-1) ** p * binom(n - p, j - p), exp
    # 0 <= n < k and p <= n: the expansion of u**(n-p) stops at dt**n
    if j > n:
        return 0, 0
    return (-1) ** p * binom(n - p, j - p), exp


def _right_entry(n: int, j: int, p: int) -> tuple[int, int]:
    if p == 0:
        return (1, n) if j == 0 else (0, 0)
    if j < p:
        return 0, 0
    return (-1) ** j * binom(j - 1, p - 1), n - p - j


def transition_left(k: int, n: int, ring: Ring = QQ) -> TransitionMatrix:
    _check_order(k)
    rows = [[LaurentPoly.monomial(*_left_entry(k, n, j, p), ring) for p in range(k + 1)] for j in range(k + 1)]
    return TransitionMatrix(k, n, Side.LEFT, LaurentMatrix(rows, ring, "t"))


def transition_right(k: int, n: int, ring: Ring = QQ) -> TransitionMatrix:
    _check_order(k)
    rows = [[LaurentPoly.monomial(*_right_entry(n, j, p), ring) for p in range(k + 1)] for j in range(k + 1)]
    return TransitionMatrix(k, n, Side.RIGHT, LaurentMatrix(rows, ring, "u"))


def transition(k: int, n: int, side: Side | str, ring: Ring = QQ) -> TransitionMatrix:
    side = Side(side)
    return transition_left(k, n, ring) if side is Side.LEFT else transition_right(k, n, ring)


@dataclass(frozen=True)
class CocycleReport:
    k: int
    n: int
    side: Side
    matches_oracle: bool
    inverse_ok: bool
    det_ok: bool
    det_exponent: int | None
    det_coeff: object

    @property
    def passed(self) -> bool:
        return self.matches_oracle and self.inverse_ok and self.det_ok

    def to_json(self) -> dict:
        return {
            "matches_oracle": self.matches_oracle,
            "inverse_ok": self.inverse_ok,
            "det_ok": self.det_ok,
            "det_exponent": self.det_exponent,
            "det_coeff": None if self.det_coeff is None else str(self.det_coeff),
        }


def check_cocycle(k: int, n: int, side: Side | str, ring: Ring = QQ) -> CocycleReport:
    """Closed form vs. jet oracle, ``T * Tbar = I``, and the determinant degree."""
    side = Side(side)
    t = transition(k, n, side, ring).matrix
    matches = t == oracle_transition(k, n, side, ring)
    back = oracle_transition_swapped(k, n, side, ring).invert_var(t.var)
    inverse_ok = (t @ back) == LaurentMatrix.identity(k + 1, ring)
    try:
        exp, coeff = lp_unit_part(t.det())
    except NotMonomial:
        exp, coeff = None, None
    unit_coeffs = {ring(1), ring(-1)}
    det_ok = exp == det_degree(k, n) and coeff in unit_coeffs
    return CocycleReport(k, n, side, matches, inverse_ok, det_ok, exp, coeff)
