"""Binomial determinant identities: closed forms against direct determinants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import QQ, binom
from .linalg import ExactMatrix, det_exact

DET1 = "det1"
DET2 = "det2"


class InvalidSpec(ValueError):
    pass


@dataclass(frozen=True)
class BinomialMatrixSpec:
    lemma: str
    a: int
    l: int
    b: int | None = None

    def __post_init__(self):
        if self.lemma == DET1:
            if self.b is None or self.b > self.a or self.l < 1:
                raise InvalidSpec(f"det1 needs b <= a and l >= 1, got a={self.a}, b={self.b}, l={self.l}")
        elif self.lemma == DET2:
            if self.l < 0 or self.a < 2 * self.l:
                raise InvalidSpec(f"det2 needs l >= 0 and a >= 2l, got a={self.a}, l={self.l}")
        else:
            raise InvalidSpec(f"unknown lemma {self.lemma!r}")


def build_matrix(spec: BinomialMatrixSpec) -> ExactMatrix:
    """det1: entry (i, j) = binom(a+i, b+j); det2: entry (i, j) = binom(a-j, a-j-i)."""
    size = range(spec.l + 1)
    if spec.lemma == DET1:
        rows = [[binom(spec.a + i, spec.b + j) for j in size] for i in size]
    else:
        rows = [[binom(spec.a - j, spec.a - j - i) for j in size] for i in size]
    return ExactMatrix.from_rows(rows, QQ)


def det1_formula(a: int, b: int, l: int) -> Fraction:
    """prod_i binom(a+i, b+i) / prod_i binom(a-b+i, i), i = 0..l."""
    BinomialMatrixSpec(DET1, a, l, b)
    num = den = 1
    for i in range(l + 1):
        num *= binom(a + i, b + i)
        den *= binom(a - b + i, i)
    return Fraction(num, den)


@dataclass(frozen=True)
class DiscrepancyReport:
    lemma: str
    params: dict
    direct: Fraction
    claimed: Fraction
    signed_variant: Fraction | None = None

    @property
    def match(self) -> bool:
        return self.direct == self.claimed

    @property
    def signed_match(self) -> bool | None:
        return None if self.signed_variant is None else self.signed_variant == self.claimed

    def to_json(self) -> dict:
        out = {
            "lemma": self.lemma,
            "params": dict(self.params),
            "direct": str(self.direct),
            "claimed": str(self.claimed),
            "match": self.match,
        }
        if self.signed_variant is not None:
            out["signed_variant"] = str(self.signed_variant)
            out["signed_match"] = self.signed_match
        return out


def det1_check(a: int, b: int, l: int) -> DiscrepancyReport:
    direct = det_exact(build_matrix(BinomialMatrixSpec(DET1, a, l, b)))
    return DiscrepancyReport(DET1, {"a": a, "b": b, "l": l}, direct, det1_formula(a, b, l))


def det2_check(a: int, l: int) -> DiscrepancyReport:
    """Direct determinant of the det2 matrix against the claimed ``(-1)**(l+1)``.

    ``signed_variant`` is the determinant after scaling column j by
    ``(-1)**j`` (the sign pattern of the trivial-summand systems).  The
    direct determinant is the ground truth; nothing is corrected.
    """
    m = build_matrix(BinomialMatrixSpec(DET2, a, l))
    direct = det_exact(m)
    signed = ExactMatrix.from_rows([[(-1) ** j * x for j, x in enumerate(row)] for row in m.rows], QQ)
    return DiscrepancyReport(DET2, {"a": a, "l": l}, direct, Fraction((-1) ** (l + 1)), det_exact(signed))


def det1_sweep(a_max: int = 8, l_max: int = 5) -> list[DiscrepancyReport]:
    return [det1_check(a, b, l) for a in range(a_max + 1) for b in range(a + 1) for l in range(1, l_max + 1)]


def det2_sweep(a_max: int = 12, l_max: int = 6) -> list[DiscrepancyReport]:
    """Every admissible (a, l) with ``a >= 2l``, ordered by l then a."""
    return [det2_check(a, l) for l in range(l_max + 1) for a in range(2 * l, a_max + 1)]
