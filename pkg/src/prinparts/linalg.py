"""Dense exact linear algebra over QQ and GF(p)."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .exact import QQ, Ring


class NonSquareError(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class UnitNotFound(LookupError):
    """No member of the solution set has units at the requested positions."""


class UnitSearchInconclusive(UnitNotFound):
    """Bounded random search over QQ gave up; the set may still contain one."""


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple
    ring: Ring = QQ

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ring: Ring = QQ) -> "ExactMatrix":
        rows = tuple(tuple(ring(x) for x in row) for row in rows)
        if len({len(r) for r in rows}) > 1:
            raise DimensionMismatch("ragged rows")
        return cls(rows, ring)

    @classmethod
    def identity(cls, n: int, ring: Ring = QQ) -> "ExactMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], ring)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def entries(self) -> list:
        return [x for row in self.rows for x in row]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"vector length {len(vec)} != {self.ncols} columns")
        return [self.ring(sum(a * x for a, x in zip(row, vec))) for row in self.rows]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]


def det_exact(m: ExactMatrix):
    """Determinant by Bareiss fraction-free elimination."""
    n = m.nrows
    if n != m.ncols:
        raise NonSquareError(f"{m.nrows}x{m.ncols} matrix has no determinant")
    ring = m.ring
    if n == 0:
        return ring.one
    a = [list(r) for r in m.rows]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = ring.div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return ring(sign * a[n - 1][n - 1])


@dataclass(frozen=True)
class SolutionSet:
    """Affine solution set ``particular + span(nullspace_basis)``; kind is
    ``"unique"``, ``"parametrized"`` or ``"empty"``."""

    kind: str
    particular: tuple | None
    nullspace_basis: tuple = ()
    ring: Ring = field(default=QQ, compare=False)

    @property
    def nullity(self) -> int:
        return len(self.nullspace_basis)


def _rref(a: list[list], ring: Ring) -> list[int]:
    """In-place reduced row echelon form; returns pivot columns."""
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = ring.inv(a[r][c])
        a[r] = [ring(x * inv) for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [ring(x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return pivots


def solve_affine(a: ExactMatrix, b: Sequence) -> SolutionSet:
    """All solutions of ``a x = b`` by exact Gauss-Jordan elimination."""
    if a.nrows != len(b):
        raise DimensionMismatch(f"{a.nrows} equations but rhs has length {len(b)}")
    ring = a.ring
    n = a.ncols
    aug = [list(row) + [ring(bi)] for row, bi in zip(a.rows, b)]
    pivots = _rref(aug, ring)
    if n in pivots:
        return SolutionSet("empty", None, (), ring)
    particular = [ring.zero] * n
    for r, c in enumerate(pivots):
        particular[c] = aug[r][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ring.zero] * n
        v[f] = ring.one
        for r, c in enumerate(pivots):
            v[c] = ring(-aug[r][f])
        basis.append(tuple(v))
    kind = "parametrized" if basis else "unique"
    return SolutionSet(kind, tuple(particular), tuple(basis), ring)


def _combine(s: SolutionSet, coeffs: Sequence) -> tuple:
    ring = s.ring
    out = list(s.particular)
    for c, v in zip(coeffs, s.nullspace_basis):
        if c:
            out = [x + c * y for x, y in zip(out, v)]
    return tuple(ring(x) for x in out)


def enumerate_solutions(s: SolutionSet):
    """Every member of a solution set over GF(p)."""
    if s.kind == "empty":
        return
    if s.ring.is_rational and s.nullity:
        raise ValueError("solution set over QQ is infinite")
    p = s.ring.p or 1
    for coeffs in itertools.product(range(p), repeat=s.nullity):
        yield _combine(s, coeffs)


RANDOM_ATTEMPTS = 64
RANDOM_RANGE = 4


def pick_solution(s: SolutionSet, unit_positions: Sequence[int], seed: int = 0) -> tuple:
    """A member of ``s`` that is nonzero at every index in ``unit_positions``.

    Over GF(p) the search is exhaustive and a failure is definitive
    (:class:`UnitNotFound`).  Over QQ it tries the particular solution, each
    single basis shift, then a bounded number of seeded random combinations;
    failure there raises :class:`UnitSearchInconclusive`.
    """
    if s.kind == "empty":
        raise ValueError("empty solution set")

    def ok(v):
        return all(v[i] != 0 for i in unit_positions)

    if not s.ring.is_rational:
        for v in enumerate_solutions(s):
            if ok(v):
                return v
        raise UnitNotFound(f"none of the {s.ring.p ** s.nullity} solutions has units at {list(unit_positions)}")

    if ok(s.particular):
        return s.particular
    if s.kind == "unique":
        raise UnitNotFound(f"unique solution vanishes at one of {list(unit_positions)}")
    for i in range(s.nullity):
        v = _combine(s, [int(j == i) for j in range(s.nullity)])
        if ok(v):
            return v
    rng = random.Random(seed)
    for _ in range(RANDOM_ATTEMPTS):
        v = _combine(s, [rng.randint(-RANDOM_RANGE, RANDOM_RANGE) for _ in range(s.nullity)])
        if ok(v):
            return v
    raise UnitSearchInconclusive(f"no unit solution after {RANDOM_ATTEMPTS} random attempts")
