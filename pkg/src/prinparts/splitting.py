"""Explicit splittings of Pr^k(O(n)) from binomial linear systems.

Each summand ``O(m)`` of a splitting is a pair of local maps: on chart 1
its image is an upper-triangular combination of the basis ``ds**p``
(unknowns ``x``, ``y``, ``z`` or ``w``), and on chart 0 it is ``t**(-m)``
times that, re-expanded through the transition matrix.  Asking the chart-0
image to be polynomial in ``t`` with a unit leading term is a square linear
system per summand.  The solved local matrices form a certificate that is
checked by the gluing identity

    phi0(t) == T(t) * phi1(1/t) * diag(t**(-m_l))

and never by appeal to the derivation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .birkhoff import BirkhoffFactorization, birkhoff_factor, splitting_type_birkhoff
from .exact import QQ, Ring, binom
from .jets import Side
from .laurent import LaurentMatrix, LaurentPoly, NotMonomial, lp_unit_part
from .linalg import ExactMatrix, UnitNotFound, UnitSearchInconclusive, pick_solution, solve_affine
from .transition import TransitionMatrix, det_degree, transition

# system families
S_NEG = "S_neg"  # left, n < 0
S_HIGH = "S_high"  # left, n >= k
S_MID = "S_mid"  # left, 0 <= n < k, trivial summands
T_MID = "T_mid"  # left, 0 <= n < k, O(-k-1) summands
U_RIGHT = "U_right"  # right, O(n-k-1) summands

_UNKNOWN = {S_NEG: "x", S_HIGH: "x", S_MID: "y", T_MID: "z", U_RIGHT: "w"}


class IncompleteBundle(ValueError):
    pass


class MetadataMismatch(ValueError):
    pass


def combination_coeff(family: str, n: int, j: int, p: int) -> int:
    """Coefficient of unknown slot ``p`` in the ``j``-th chart-0 combination.

    Slot ``p`` holds the unknown with lower index ``index - p``, so the last
    slot is the one whose product must be a unit.
    """
    if family == S_NEG:
        return binom(j - n - 1, p - n - 1)
    if family in (S_MID, S_HIGH):
        return (-1) ** p * binom(n - p, j - p)
    if family == T_MID:
        return binom(j - n - 1, p)
    if family == U_RIGHT:
        return binom(j - 1, p)
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class SplittingSystem:
    family: str
    k: int
    n: int
    index: int
    rows: tuple  # combination indices j constrained by the equations
    matrix: tuple  # integer rows
    rhs: tuple

    @property
    def size(self) -> int:
        return self.index + 1

    @property
    def unknown_names(self) -> list[str]:
        x = _UNKNOWN[self.family]
        return [f"{x}^{self.index}_{self.index - p}" for p in range(self.size)]

    def exact_matrix(self, ring: Ring) -> ExactMatrix:
        return ExactMatrix.from_rows(self.matrix, ring)

    def combination(self, j: int, values) -> object:
        return sum(combination_coeff(self.family, self.n, j, p) * v for p, v in enumerate(values))


def _system(family: str, k: int, n: int, index: int, top: int) -> SplittingSystem:
    # constraints: combination_{top-index} = 1, combination_{top-index+1..top} = 0
    rows = tuple(range(top - index, top + 1))
    matrix = tuple(tuple(combination_coeff(family, n, j, p) for p in range(index + 1)) for j in rows)
    rhs = (1,) + (0,) * index
    return SplittingSystem(family, k, n, index, rows, matrix, rhs)


def build_systems(k: int, n: int, side: Side | str) -> list[SplittingSystem]:
    if k < 1:
        raise IndexError(f"order k must be >= 1, got {k}")
    side = Side(side)
    if side is Side.RIGHT:
        return [_system(U_RIGHT, k, n, l, k) for l in range(k)]
    if n < 0:
        return [_system(S_NEG, k, n, l, k) for l in range(k + 1)]
    if n >= k:
        return [_system(S_HIGH, k, n, l, k) for l in range(k + 1)]
    return [_system(S_MID, k, n, l, n) for l in range(n + 1)] + [_system(T_MID, k, n, m, k) for m in range(k - n)]


class SplittingFailure(Exception):
    """A system of the pipeline could not be solved with a unit last slot."""

    def __init__(self, index: int, reason: str, detail: str = ""):
        super().__init__(f"system {index}: {reason} {detail}".strip())
        self.index = index
        self.reason = reason
        self.detail = detail


SYSTEM_EMPTY = "SystemEmpty"
UNIT_NOT_FOUND = "UnitNotFound"
UNIT_INCONCLUSIVE = "UnitSearchInconclusive"
GLUING_FAILED = "GluingFailed"
DET_NOT_UNIT = "DetNotUnit"


@dataclass(frozen=True)
class SolvedSystem:
    system: SplittingSystem
    values: tuple
    nullity: int = 0


def solve_systems(systems: list[SplittingSystem], ring: Ring = QQ) -> list[SolvedSystem]:
    """Solve each system and pick a solution whose last slot is a unit.

    Raises :class:`SplittingFailure` naming the first system that has no
    solution or no solution with a unit last slot.
    """
    out = []
    for idx, sys_ in enumerate(systems):
        sol = solve_affine(sys_.exact_matrix(ring), sys_.rhs)
        if sol.kind == "empty":
            raise SplittingFailure(idx, SYSTEM_EMPTY, sys_.family)
        try:
            values = pick_solution(sol, [sys_.size - 1])
        except UnitSearchInconclusive as exc:
            raise SplittingFailure(idx, UNIT_INCONCLUSIVE, str(exc)) from None
        except UnitNotFound as exc:
            raise SplittingFailure(idx, UNIT_NOT_FOUND, str(exc)) from None
        out.append(SolvedSystem(sys_, values, sol.nullity))
    return out


@dataclass(frozen=True)
class SplittingCertificate:
    k: int
    n: int
    side: Side
    ring: Ring
    twists: tuple  # source twist of each column of phi0 / phi1
    phi0: LaurentMatrix
    phi1: LaurentMatrix
    solutions: tuple = ()

    @property
    def splitting_type(self) -> tuple:
        return tuple(sorted(self.twists, reverse=True))


def _mono(c, e, ring):
    return LaurentPoly.monomial(c, e, ring)


def assemble_certificate(k: int, n: int, side: Side | str, bundle: list[SolvedSystem], ring: Ring = QQ) -> SplittingCertificate:
    side = Side(side)
    expected = build_systems(k, n, side)
    if [b.system for b in bundle] != expected:
        raise IncompleteBundle(f"bundle does not match the systems of (k={k}, n={n}, {side.value})")
    dim = k + 1
    zero = LaurentPoly.zero(ring)
    cols0 = [[zero] * dim for _ in range(dim)]
    cols1 = [[zero] * dim for _ in range(dim)]
    twists = [0] * dim

    if side is Side.RIGHT:
        cols0[0][0] = cols1[0][0] = LaurentPoly.constant(1, ring)
        twists[0] = n

    for solved in bundle:
        s, vals = solved.system, solved.values
        idx = s.index
        if s.family in (S_NEG, S_HIGH):
            col, twist = idx, n - k
            for j in range(k - idx + 1):
                c = s.combination(j, vals)
                sign = (-1) ** j if s.family == S_NEG else 1
                cols0[col][j] = _mono(sign * c, k - idx - j, ring)
            rows1 = range(idx + 1)
        elif s.family == S_MID:
            col, twist = idx, 0
            for j in range(n - idx + 1):
                cols0[col][j] = _mono(s.combination(j, vals), n - idx - j, ring)
            rows1 = range(idx + 1)
        elif s.family == T_MID:
            col, twist = n + 1 + idx, -k - 1
            for j in range(n + 1, k - idx + 1):
                cols0[col][j] = _mono((-1) ** j * s.combination(j, vals), k - idx - j, ring)
            rows1 = range(n + 1, n + 2 + idx)
        else:  # U_RIGHT
            col, twist = idx + 1, n - k - 1
            for j in range(1, k - idx + 1):
                cols0[col][j] = _mono((-1) ** j * s.combination(j, vals), k - idx - j, ring)
            rows1 = range(1, idx + 2)
        # chart 1: slot p sits on basis element rows1[p] with power s**(idx - p)
        for p, row in enumerate(rows1):
            cols1[col][row] = _mono(vals[p], idx - p, ring)
        twists[col] = twist

    v0, v1 = side.variables
    return SplittingCertificate(
        k, n, side, ring, tuple(twists),
        LaurentMatrix.from_columns(cols0, ring, v0),
        LaurentMatrix.from_columns(cols1, ring, v1),
        tuple(b.values for b in bundle),
    )


@dataclass(frozen=True)
class VerificationReport:
    det0: bool
    det1: bool
    gluing: bool

    @property
    def verified(self) -> bool:
        return self.det0 and self.det1 and self.gluing

    def to_json(self) -> dict:
        return {"det0": self.det0, "det1": self.det1, "gluing": self.gluing}


def _is_local_iso(m: LaurentMatrix) -> bool:
    """Polynomial in the chart variable with a nonzero constant determinant."""
    if not m.is_polynomial():
        return False
    try:
        e, c = lp_unit_part(m.det())
    except NotMonomial:
        return False
    return e == 0 and c != 0


def gluing_rhs(cert: SplittingCertificate, t: LaurentMatrix) -> LaurentMatrix:
    """``T * phi1(1/t) * diag(t**(-m))`` in the chart-0 variable."""
    phi1_t = cert.phi1.invert_var(t.var)
    return t @ phi1_t @ LaurentMatrix.monomial_diagonal([-m for m in cert.twists], cert.ring, t.var)


def verify_certificate(cert: SplittingCertificate, t: TransitionMatrix) -> VerificationReport:
    """Check the certificate against the transition matrix exactly.

    ``det0``/``det1``: the local matrix is polynomial in its chart variable
    and its determinant is a nonzero constant.  ``gluing``: the identity in
    the module docstring holds entrywise.
    """
    if (cert.k, cert.n, cert.side) != (t.k, t.n, t.side) or cert.ring != t.ring:
        raise MetadataMismatch(f"certificate ({cert.k}, {cert.n}, {cert.side.value}, {cert.ring}) "
                               f"vs transition ({t.k}, {t.n}, {t.side.value}, {t.ring})")
    if len(cert.twists) != cert.k + 1 or cert.phi0.dim != cert.k + 1 or cert.phi1.dim != cert.k + 1:
        return VerificationReport(False, False, False)
    det0 = _is_local_iso(cert.phi0)
    det1 = _is_local_iso(cert.phi1)
    gluing = cert.phi0 == gluing_rhs(cert, t.matrix)
    return VerificationReport(det0, det1, gluing)


def splitting_type_char0(k: int, n: int, side: Side | str) -> tuple:
    """Splitting type over a field of characteristic zero, descending."""
    if k < 1:
        raise IndexError(f"order k must be >= 1, got {k}")
    side = Side(side)
    if side is Side.RIGHT:
        twists = [n] + [n - k - 1] * k
    elif n < 0 or n >= k:
        twists = [n - k] * (k + 1)
    else:
        twists = [0] * (n + 1) + [-k - 1] * (k - n)
    return tuple(sorted(twists, reverse=True))


CERTIFIED = "certified"
BIRKHOFF = "birkhoff"
ANOMALY = "anomaly"


@dataclass(frozen=True)
class SplittingOutcome:
    """Result of :func:`splitting_search`.

    ``kind`` is ``"certified"`` (certificate verified), ``"birkhoff"``
    (certificate path failed over GF(p); type from Birkhoff factorization)
    or ``"anomaly"`` (certificate path failed over QQ).
    """

    kind: str
    k: int
    n: int
    side: Side
    ring: Ring
    splitting_type: tuple | None = None
    certificate: SplittingCertificate | None = None
    report: VerificationReport | None = None
    factorization: BirkhoffFactorization | None = field(default=None, compare=False)
    reason: str | None = None
    detail: str = ""
    solved: tuple = field(default=(), compare=False)


def splitting_search(k: int, n: int, side: Side | str, ring: Ring = QQ) -> SplittingOutcome:
    side = Side(side)
    t = transition(k, n, side, ring)
    reason = detail = None
    solved: list[SolvedSystem] = []
    try:
        solved = solve_systems(build_systems(k, n, side), ring)
    except SplittingFailure as exc:
        reason, detail = exc.reason, str(exc)
    cert = report = None
    if reason is None:
        cert = assemble_certificate(k, n, side, solved, ring)
        report = verify_certificate(cert, t)
        if report.verified:
            return SplittingOutcome(CERTIFIED, k, n, side, ring, cert.splitting_type, cert, report, solved=tuple(solved))
        reason = GLUING_FAILED if not report.gluing else DET_NOT_UNIT
        detail = f"verification {report.to_json()}"
    if ring.is_rational:
        return SplittingOutcome(ANOMALY, k, n, side, ring, None, cert, report, reason=reason, detail=detail,
                                solved=tuple(solved))
    fac = birkhoff_factor(t.matrix)
    return SplittingOutcome(BIRKHOFF, k, n, side, ring, splitting_type_birkhoff(t.matrix), cert, report, fac,
                            reason, detail, tuple(solved))


def degree_sum_ok(k: int, n: int, twists) -> bool:
    return sum(twists) == det_degree(k, n)


def certificate_to_json(cert: SplittingCertificate, report: VerificationReport | None = None) -> dict:
    out = {
        "k": cert.k,
        "n": cert.n,
        "side": cert.side.value,
        "ring": str(cert.ring),
        "twists": list(cert.twists),
        "phi0": cert.phi0.to_json(),
        "phi1": cert.phi1.to_json(),
    }
    if report is not None:
        out["checks"] = report.to_json()
    return out


def certificate_from_json(data: dict) -> SplittingCertificate:
    """Inverse of :func:`certificate_to_json`; the "checks" field is ignored."""
    side = Side(data["side"])
    ring = Ring.parse(data["ring"])
    v0, v1 = side.variables
    return SplittingCertificate(
        int(data["k"]), int(data["n"]), side, ring,
        tuple(int(m) for m in data["twists"]),
        LaurentMatrix.from_json(data["phi0"], ring, v0),
        LaurentMatrix.from_json(data["phi1"], ring, v1),
    )
