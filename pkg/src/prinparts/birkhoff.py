"""Birkhoff factorization of invertible Laurent polynomial matrices over a field.

Every ``M`` in ``GL_r(F[t, 1/t])`` factors as ``A * diag(t**a_i) * B`` with
``A`` in ``GL_r(F[t])`` and ``B`` in ``GL_r(F[1/t])``; the multiset of
exponents is the splitting type of the vector bundle glued by ``M``.

The factorization is found by unimodular row reduction over ``F[t]``: write
``M = A N`` and keep clearing the leading (top ``t``-degree) coefficient
matrix of ``N`` until it is invertible.  Then the rows of ``N`` have degrees
``a_i`` and ``B = diag(t**-a_i) N`` is polynomial in ``1/t`` with ``B(oo)``
invertible.  Each step lowers the sum of row degrees, which is bounded
below by the degree of ``det M``, so the loop terminates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import Ring
from .laurent import LaurentMatrix, LaurentPoly, NotMonomial, lp_unit_part
from .linalg import ExactMatrix, solve_affine

# twist of a summand from its Birkhoff exponent; fixed by the diagonal
# transition matrices of Pr^1 (right side: diag(u**n, -u**(n-2)) is O(n) + O(n-2))
TWIST_SIGN = 1


class NotAUnit(ValueError):
    pass


@dataclass(frozen=True)
class BirkhoffFactorization:
    A: LaurentMatrix
    exponents: tuple
    B: LaurentMatrix

    @property
    def middle(self) -> LaurentMatrix:
        return LaurentMatrix.monomial_diagonal(self.exponents, self.A.ring, self.A.var)

    def product(self) -> LaurentMatrix:
        return self.A @ self.middle @ self.B

    def check(self, m: LaurentMatrix) -> bool:
        """Exact re-multiplication plus the shape conditions on ``A`` and ``B``."""
        if self.product() != m:
            return False
        if not self.A.is_polynomial():
            return False
        if not self.B.invert_var().is_polynomial():
            return False
        for f in (self.A.det(), self.B.det()):
            try:
                e, c = lp_unit_part(f)
            except NotMonomial:
                return False
            if e != 0:
                return False
        return True


def _row_degree(row) -> int:
    return max(x.max_exp for x in row if not x.is_zero())


def _left_kernel_vector(lead: list[list], ring: Ring):
    n = len(lead)
    transposed = ExactMatrix.from_rows([[lead[i][j] for i in range(n)] for j in range(n)], ring)
    sol = solve_affine(transposed, [0] * n)
    return sol.nullspace_basis[0] if sol.nullspace_basis else None


def birkhoff_factor(m: LaurentMatrix, max_steps: int = 100_000) -> BirkhoffFactorization:
    """Factor ``m = A diag(t**a) B`` with exponents sorted in descending order."""
    ring = m.ring
    try:
        lp_unit_part(m.det())
    except NotMonomial as exc:
        raise NotAUnit(f"determinant is not a unit: {exc}") from None

    n = m.dim
    rows = [list(r) for r in m.entries]
    a_cols = [list(c) for c in LaurentMatrix.identity(n, ring).entries]  # columns of A (identity is symmetric)

    for _ in range(max_steps):
        degs = [_row_degree(r) for r in rows]
        lead = [[x.coeff(d) for x in r] for r, d in zip(rows, degs)]
        v = _left_kernel_vector(lead, ring)
        if v is None:
            break
        i0 = max((i for i in range(n) if v[i] != 0), key=lambda i: (degs[i], -i))
        d0 = degs[i0]
        # row i0 <- sum_i v_i t^(d0 - d_i) row_i ; drops the degree of row i0
        new = [LaurentPoly.zero(ring) for _ in range(n)]
        for i in range(n):
            if v[i] == 0:
                continue
            for j in range(n):
                new[j] = new[j] + rows[i][j].shift(d0 - degs[i]).scale(v[i])
        rows[i0] = new
        # A <- A E^{-1}: column j += w_j * column i0, then column i0 /= v_i0
        inv0 = ring.inv(v[i0])
        old = a_cols[i0]
        for j in range(n):
            if j == i0 or v[j] == 0:
                continue
            w = LaurentPoly.monomial(ring(-v[j] * inv0), d0 - degs[j], ring)
            a_cols[j] = [x + w * y for x, y in zip(a_cols[j], old)]
        a_cols[i0] = [y.scale(inv0) for y in old]
    else:
        raise RuntimeError("Birkhoff reduction did not terminate")

    degs = [_row_degree(r) for r in rows]
    order = sorted(range(n), key=lambda i: (-degs[i], i))
    exps = tuple(degs[i] for i in order)
    b_rows = [[x.shift(-degs[i]) for x in rows[i]] for i in order]
    a = LaurentMatrix.from_columns([a_cols[i] for i in order], ring, m.var)
    return BirkhoffFactorization(a, exps, LaurentMatrix(b_rows, ring, m.var))


def splitting_type_birkhoff(m: LaurentMatrix) -> tuple:
    """Twists of the line bundle summands glued by ``m``, descending."""
    fac = birkhoff_factor(m)
    return tuple(sorted((TWIST_SIGN * e for e in fac.exponents), reverse=True))
