"""Laurent polynomials in one variable and square matrices of them."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import QQ, Ring


class RingMismatch(ValueError):
    pass


class NotMonomial(ValueError):
    pass


class LaurentPoly:
    """Finite sum of ``c * x**e`` with ``e`` any integer.

    The term map never stores a zero coefficient, so the zero polynomial is
    the empty map and ``==`` is structural.  Instances are treated as
    immutable.
    """

    __slots__ = ("terms", "ring", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None, ring: Ring = QQ):
        self.ring = ring
        clean = {}
        for e, c in (terms or {}).items():
            c = ring(c)
            if c != 0:
                clean[int(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, ring: Ring) -> "LaurentPoly":
        # terms already normalized and zero-free
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.ring = ring
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff, exp: int, ring: Ring = QQ) -> "LaurentPoly":
        return cls({exp: coeff}, ring)

    @classmethod
    def constant(cls, c, ring: Ring = QQ) -> "LaurentPoly":
        return cls({0: c}, ring)

    @classmethod
    def zero(cls, ring: Ring = QQ) -> "LaurentPoly":
        return cls._raw({}, ring)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: int):
        return self.terms.get(e, self.ring.zero)

    @property
    def min_exp(self) -> int:
        return min(self.terms)

    @property
    def max_exp(self) -> int:
        return max(self.terms)

    def is_polynomial(self) -> bool:
        """No negative exponents (the zero polynomial counts)."""
        return all(e >= 0 for e in self.terms)

    def is_constant(self) -> bool:
        return all(e == 0 for e in self.terms)

    def _check(self, other: "LaurentPoly"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.ring)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = self.ring(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: self.ring(-c) for e, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.ring)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        return lp_mul(self, other)

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = self.ring(c)
        if c == 0:
            return LaurentPoly.zero(self.ring)
        return LaurentPoly._raw({e: self.ring(v * c) for e, v in self.terms.items()}, self.ring)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``x**k``."""
        return LaurentPoly._raw({e + k: c for e, c in self.terms.items()}, self.ring)

    def __pow__(self, n: int):
        if n < 0:
            e, c = lp_unit_part(self)
            return LaurentPoly.monomial(self.ring.inv(c) ** -n, e * n, self.ring)
        out = LaurentPoly.constant(1, self.ring)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.ring == other.ring and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def format(self, var: str = "t") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                mono = str(c)
            else:
                power = var if e == 1 else f"{var}^{e}" if e > 0 else f"{var}^({e})"
                mono = power if c == 1 else f"-{power}" if c == -1 else f"{c}*{power}"
            parts.append(mono)
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self.format()})"

    def to_json(self) -> list[dict]:
        """``[{"exp", "num", "den"}]`` by ascending exponent; no "den" over GF(p)."""
        out = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if self.ring.is_rational:
                out.append({"exp": e, "num": str(c.numerator), "den": str(c.denominator)})
            else:
                out.append({"exp": e, "num": str(c)})
        return out

    @classmethod
    def from_json(cls, data: Iterable[Mapping], ring: Ring = QQ) -> "LaurentPoly":
        terms = {}
        for item in data:
            e = int(item["exp"])
            if e in terms:
                raise ValueError(f"duplicate exponent {e}")
            c = Fraction(int(item["num"]), int(item.get("den", 1)))
            terms[e] = c
        return cls(terms, ring)


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    a._check(b)
    acc: dict[int, object] = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = ea + eb
            acc[e] = acc.get(e, 0) + ca * cb
    ring = a.ring
    out = {}
    for e, c in acc.items():
        c = ring(c)
        if c:
            out[e] = c
    return LaurentPoly._raw(out, ring)


def lp_invert_var(f: LaurentPoly) -> LaurentPoly:
    """Substitute ``x -> 1/x``."""
    return LaurentPoly._raw({-e: c for e, c in f.terms.items()}, f.ring)


def lp_unit_part(f: LaurentPoly) -> tuple[int, object]:
    """``(e, c)`` when ``f == c * x**e``; raises :class:`NotMonomial` otherwise."""
    if len(f.terms) != 1:
        raise NotMonomial(f"{f.format()} has {len(f.terms)} terms")
    ((e, c),) = f.terms.items()
    return e, c


class LaurentMatrix:
    """Square matrix of Laurent polynomials over a common ring.

    ``var`` only labels the variable for printing.
    """

    __slots__ = ("entries", "ring", "var")

    def __init__(self, entries: Sequence[Sequence[LaurentPoly]], ring: Ring | None = None, var: str = "t"):
        rows = tuple(tuple(r) for r in entries)
        dim = len(rows)
        if any(len(r) != dim for r in rows):
            raise ValueError("LaurentMatrix must be square")
        if ring is None:
            ring = rows[0][0].ring if dim else QQ
        if any(x.ring != ring for r in rows for x in r):
            raise RingMismatch("entries over different rings")
        self.entries = rows
        self.ring = ring
        self.var = var

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> LaurentPoly:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list[LaurentPoly]:
        return [row[j] for row in self.entries]

    @classmethod
    def identity(cls, dim: int, ring: Ring = QQ, var: str = "t") -> "LaurentMatrix":
        one, zero = LaurentPoly.constant(1, ring), LaurentPoly.zero(ring)
        return cls([[one if i == j else zero for j in range(dim)] for i in range(dim)], ring, var)

    @classmethod
    def diagonal(cls, diag: Sequence[LaurentPoly], ring: Ring = QQ, var: str = "t") -> "LaurentMatrix":
        zero = LaurentPoly.zero(ring)
        n = len(diag)
        return cls([[diag[i] if i == j else zero for j in range(n)] for i in range(n)], ring, var)

    @classmethod
    def monomial_diagonal(cls, exps: Sequence[int], ring: Ring = QQ, var: str = "t") -> "LaurentMatrix":
        return cls.diagonal([LaurentPoly.monomial(1, e, ring) for e in exps], ring, var)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[LaurentPoly]], ring: Ring = QQ, var: str = "t") -> "LaurentMatrix":
        n = len(cols)
        return cls([[cols[j][i] for j in range(n)] for i in range(n)], ring, var)

    def map(self, fn, var: str | None = None) -> "LaurentMatrix":
        return LaurentMatrix([[fn(x) for x in row] for row in self.entries], self.ring, var or self.var)

    def invert_var(self, var: str | None = None) -> "LaurentMatrix":
        return self.map(lp_invert_var, var)

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return lmat_mul(self, other)

    def det(self) -> LaurentPoly:
        return lmat_det(self)

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash((self.ring, self.entries))

    def is_polynomial(self) -> bool:
        return all(x.is_polynomial() for row in self.entries for x in row)

    def format(self, var: str | None = None) -> str:
        var = var or self.var
        cells = [[x.format(var) for x in row] for row in self.entries]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)

    def __repr__(self):
        return f"LaurentMatrix(dim={self.dim}, var={self.var!r})\n{self.format()}"

    def to_json(self) -> list[list[list[dict]]]:
        return [[x.to_json() for x in row] for row in self.entries]

    @classmethod
    def from_json(cls, data, ring: Ring = QQ, var: str = "t") -> "LaurentMatrix":
        return cls([[LaurentPoly.from_json(x, ring) for x in row] for row in data], ring, var)


def lmat_mul(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch {a.dim} vs {b.dim}")
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    n = a.dim
    zero = LaurentPoly.zero(a.ring)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                x, y = a.entries[i][k], b.entries[k][j]
                if x.terms and y.terms:
                    acc = acc + lp_mul(x, y)
            row.append(acc)
        out.append(row)
    return LaurentMatrix(out, a.ring, a.var)


def lmat_det(a: LaurentMatrix) -> LaurentPoly:
    """Cofactor expansion along rows, memoized on the set of remaining columns."""
    n = a.dim
    ring = a.ring
    if n == 0:
        return LaurentPoly.constant(1, ring)
    memo: dict[int, LaurentPoly] = {}
    rows = a.entries

    def minor(row: int, cols: int) -> LaurentPoly:
        # determinant of rows[row:] restricted to the column bitmask ``cols``
        if row == n:
            return LaurentPoly.constant(1, ring)
        if cols in memo:
            return memo[cols]
        acc = LaurentPoly.zero(ring)
        sign = 1
        for c in range(n):
            if not cols >> c & 1:
                continue
            x = rows[row][c]
            if x.terms:
                sub = minor(row + 1, cols & ~(1 << c))
                if sub.terms:
                    term = lp_mul(x, sub)
                    acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[cols] = acc
        return acc

    return minor(0, (1 << n) - 1)
