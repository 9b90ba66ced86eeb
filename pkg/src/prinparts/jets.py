"""Brute-force jet expansions in the truncated ring of the diagonal.

On the overlap of the two standard charts the k-th infinitesimal
neighbourhood of the diagonal is the ring ``F[t, 1/t][dt] / (dt**(k+1))``
with ``u = t + dt`` the second-factor coordinate.  A :class:`JetElement` is an
element of that ring; expanding a chart-1 basis element in the chart-0 basis
is then plain arithmetic in it, with no closed-form binomial identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .exact import QQ, Ring, series_coeff
from .laurent import LaurentMatrix, LaurentPoly


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def variables(self) -> tuple[str, str]:
        """(chart-0 variable, chart-1 variable)."""
        return ("t", "s") if self is Side.LEFT else ("u", "v")


@dataclass(frozen=True)
class JetElement:
    """``sum_j coords[j] * d**j`` truncated above ``d**order``."""

    order: int
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.order + 1:
            raise ValueError(f"need {self.order + 1} coordinates, got {len(self.coords)}")

    @classmethod
    def scalar(cls, order: int, f: LaurentPoly) -> "JetElement":
        zero = LaurentPoly.zero(f.ring)
        return cls(order, (f,) + (zero,) * order)

    @classmethod
    def d_power(cls, order: int, p: int, ring: Ring = QQ) -> "JetElement":
        """The class of ``d**p`` (zero once ``p > order``)."""
        zero, one = LaurentPoly.zero(ring), LaurentPoly.constant(1, ring)
        return cls(order, tuple(one if j == p else zero for j in range(order + 1)))

    def __add__(self, other: "JetElement") -> "JetElement":
        return JetElement(self.order, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other: "JetElement") -> "JetElement":
        k = self.order
        ring = self.coords[0].ring
        out = [LaurentPoly.zero(ring) for _ in range(k + 1)]
        for i, a in enumerate(self.coords):
            if a.is_zero():
                continue
            for j in range(k + 1 - i):
                b = other.coords[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return JetElement(k, tuple(out))

    def __pow__(self, n: int) -> "JetElement":
        ring = self.coords[0].ring
        out = JetElement.scalar(self.order, LaurentPoly.constant(1, ring))
        for _ in range(n):
            out = out * self
        return out


def trunc_pow(m: int, k: int) -> list[int]:
    """Coefficients of ``(1 + x)**m`` modulo ``x**(k+1)``."""
    if k < 0:
        raise ValueError("order must be nonnegative")
    return [series_coeff(m, i) for i in range(k + 1)]


def _shifted_power(k: int, m: int, ring: Ring) -> JetElement:
    """``(x + d)**m = x**m (1 + d/x)**m`` as a truncated jet."""
    coeffs = trunc_pow(m, k)
    return JetElement(k, tuple(LaurentPoly.monomial(c, m - i, ring) for i, c in enumerate(coeffs)))


def _check_range(k: int, p: int):
    if k < 0 or not 0 <= p <= k:
        raise IndexError(f"need 0 <= p <= k, got k={k}, p={p}")


def jet_expand_left(k: int, n: int, p: int, ring: Ring = QQ) -> JetElement:
    """Coordinates of ``ds**p (x) x_1**n`` in the basis ``dt**j (x) x_0**n``.

    With ``u = t + dt``: ``ds = 1/u - 1/t = -dt / (u t)`` and
    ``x_1**n = u**n x_0**n`` on the second factor, so the element is
    ``(-1)**p t**(-p) dt**p u**(n-p)``.
    """
    _check_range(k, p)
    lead = JetElement.scalar(k, LaurentPoly.monomial((-1) ** p, -p, ring))
    return lead * JetElement.d_power(k, p, ring) * _shifted_power(k, n - p, ring)


def jet_expand_right(k: int, n: int, p: int, ring: Ring = QQ) -> JetElement:
    """Coordinates of ``dv**p (x) x_1**n`` in the basis ``du**j (x) x_0**n``.

    With ``t = u + du``: ``dv = 1/t - 1/u = -du / (u t)``, giving
    ``(-1)**p u**(n-p) du**p t**(-p)``.
    """
    _check_range(k, p)
    lead = JetElement.scalar(k, LaurentPoly.monomial((-1) ** p, n - p, ring))
    return lead * JetElement.d_power(k, p, ring) * _shifted_power(k, -p, ring)


def _as_side(side) -> Side:
    return side if isinstance(side, Side) else Side(side)


def oracle_transition(k: int, n: int, side: Side | str, ring: Ring = QQ) -> LaurentMatrix:
    """Matrix whose column ``p`` is the jet expansion of the ``p``-th chart-1 basis element."""
    if k < 1:
        raise IndexError(f"order k must be >= 1, got {k}")
    side = _as_side(side)
    expand = jet_expand_left if side is Side.LEFT else jet_expand_right
    cols = [expand(k, n, p, ring).coords for p in range(k + 1)]
    return LaurentMatrix.from_columns(cols, ring, side.variables[0])


def oracle_transition_swapped(k: int, n: int, side: Side | str, ring: Ring = QQ) -> LaurentMatrix:
    """Chart-0 basis expanded in the chart-1 basis, in the chart-1 variable.

    Exchanging ``x_0`` and ``x_1`` maps the chart-0 coordinates to the
    chart-1 ones (``t -> s``, ``u -> 1/u``) and leaves the expansion
    recipe unchanged, so this is the same jet computation read in the other
    chart.  Column ``j`` expresses ``dt**j (x) x_0**n`` (or ``du**j``).
    """
    side = _as_side(side)
    m = oracle_transition(k, n, side, ring)
    return LaurentMatrix(m.entries, ring, side.variables[1])

