"""Command-line front end.

Payloads go to stdout (or ``--out``), diagnostics to stderr.  Exit codes:
0 all requested checks passed, 1 a verification failed, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from . import __version__
from .birkhoff import birkhoff_factor, splitting_type_birkhoff
from .detlemmas import InvalidSpec, det1_check, det1_sweep, det2_check, det2_sweep
from .exact import GF, QQ, Ring
from .jets import Side, oracle_transition
from .splitting import (
    ANOMALY,
    CERTIFIED,
    MetadataMismatch,
    SplittingOutcome,
    certificate_from_json,
    certificate_to_json,
    degree_sum_ok,
    splitting_search,
    splitting_type_char0,
    verify_certificate,
)
from .transition import check_cocycle, transition

log = logging.getLogger("prinparts")

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepConfig:
    k_min: int
    k_max: int
    n_min: int
    n_max: int
    sides: tuple
    ring: Ring
    output_path: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.k_min < 1:
            raise UsageError("--kmin must be >= 1")
        if self.k_max < self.k_min:
            raise UsageError("--kmax must be >= --kmin")
        if self.n_min > self.n_max:
            raise UsageError("--nmin must be <= --nmax")

    def to_json(self) -> dict:
        return {
            "k_min": self.k_min, "k_max": self.k_max, "n_min": self.n_min, "n_max": self.n_max,
            "sides": [s.value for s in self.sides], "ring": str(self.ring),
        }


def outcome_to_json(o: SplittingOutcome) -> dict:
    out = {
        "outcome": o.kind,
        "k": o.k,
        "n": o.n,
        "side": o.side.value,
        "ring": str(o.ring),
        "twists": None if o.splitting_type is None else list(o.splitting_type),
        "reason": o.reason,
        "certificate": None if o.certificate is None else certificate_to_json(o.certificate, o.report),
    }
    if o.factorization is not None:
        out["birkhoff"] = {
            "exponents": list(o.factorization.exponents),
            "remultiplies": o.factorization.check(transition(o.k, o.n, o.side, o.ring).matrix),
        }
    return out


def verify_point(k: int, n: int, side: Side, ring: Ring) -> dict:
    """Full check chain at one grid point."""
    cocycle = check_cocycle(k, n, side, ring)
    o = splitting_search(k, n, side, ring)
    t = transition(k, n, side, ring).matrix
    checks = {
        "formula_vs_oracle": cocycle.matches_oracle,
        "cocycle_inverse": cocycle.inverse_ok,
        "det_degree": cocycle.det_ok,
        "certificate": o.kind == CERTIFIED,
        "degree_sum": o.splitting_type is not None and degree_sum_ok(k, n, o.splitting_type),
    }
    if ring.is_rational:
        checks["birkhoff_agrees"] = splitting_type_birkhoff(t) == splitting_type_char0(k, n, side)
        passed = all(checks.values())
    else:
        checks["birkhoff_remultiplies"] = o.factorization.check(t) if o.factorization is not None else None
        required = [checks[c] for c in ("formula_vs_oracle", "cocycle_inverse", "det_degree", "degree_sum")]
        passed = all(required) and o.kind != ANOMALY and checks["birkhoff_remultiplies"] is not False
    return {
        "k": k, "n": n, "side": side.value, "ring": str(ring),
        "outcome": o.kind, "twists": None if o.splitting_type is None else list(o.splitting_type),
        "reason": o.reason, "checks": checks, "passed": passed,
    }


def _verify_args(args):
    return verify_point(*args)


def run_sweep(cfg: SweepConfig, jobs: int = 1) -> dict:
    points = [(k, n, side, cfg.ring)
              for k in range(cfg.k_min, cfg.k_max + 1)
              for n in range(cfg.n_min, cfg.n_max + 1)
              for side in cfg.sides]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_args, points, chunksize=8))
    else:
        results = [verify_point(*p) for p in points]
    reasons: dict[str, int] = {}
    cert_failures = []
    for r in results:
        if r["outcome"] != CERTIFIED:
            reasons[r["reason"]] = reasons.get(r["reason"], 0) + 1
            cert_failures.append({"k": r["k"], "n": r["n"], "side": r["side"], "reason": r["reason"]})
    summary = {
        "total": len(results),
        "passed": sum(r["passed"] for r in results),
        "failed": sum(not r["passed"] for r in results),
        "certified": sum(r["outcome"] == CERTIFIED for r in results),
        "birkhoff_fallback": sum(r["outcome"] == "birkhoff" for r in results),
        "anomalies": [{"k": r["k"], "n": r["n"], "side": r["side"], "reason": r["reason"]}
                      for r in results if r["outcome"] == ANOMALY],
        "certificate_failures": cert_failures,
        "failure_reasons": dict(sorted(reasons.items())),
    }
    return {"config": cfg.to_json(), "summary": summary, "points": results}


def _ring(args) -> Ring:
    if args.ring == "q":
        if args.p is not None:
            raise UsageError("--p only applies to --ring fp")
        return QQ
    if args.p is None:
        raise UsageError("--ring fp needs --p")
    try:
        return GF(args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _order(k: int) -> int:
    if k < 1:
        raise UsageError("--k must be >= 1")
    return k


def _dump(payload: dict, command: str) -> str:
    doc = {"header": {"tool": "prinparts", "version": __version__, "command": command}}
    doc.update(payload)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---- text renderers -------------------------------------------------------

def _text_transition(p: dict, m) -> str:
    head = f"{'oracle' if p['oracle'] else 'closed form'} transition matrix k={p['k']} n={p['n']} side={p['side']} over {p['ring']}"
    return head + "\n" + m.format() + "\n"


def _text_outcome(o: SplittingOutcome) -> str:
    lines = [f"k={o.k} n={o.n} side={o.side.value} ring={o.ring}: {o.kind}"]
    if o.splitting_type is not None:
        lines.append(f"  twists: {list(o.splitting_type)}")
    if o.reason:
        lines.append(f"  certificate path failed: {o.reason}")
    if o.certificate is not None:
        lines.append(f"  source twists (columns): {list(o.certificate.twists)}")
        lines.append("  phi0 =")
        lines += ["    " + s for s in o.certificate.phi0.format().splitlines()]
        lines.append("  phi1 =")
        lines += ["    " + s for s in o.certificate.phi1.format().splitlines()]
        if o.report is not None:
            lines.append(f"  checks: {o.report.to_json()}")
    return "\n".join(lines) + "\n"


def _text_point(r: dict) -> str:
    status = "PASS" if r["passed"] else "FAIL"
    checks = " ".join(f"{k}={v}" for k, v in r["checks"].items())
    return f"{status} k={r['k']} n={r['n']} side={r['side']} ring={r['ring']} {r['outcome']} twists={r['twists']} {checks}\n"


def _text_report(rep) -> str:
    j = rep.to_json()
    params = " ".join(f"{k}={v}" for k, v in j["params"].items())
    line = f"{j['lemma']} {params}: direct={j['direct']} claimed={j['claimed']} match={j['match']}"
    if "signed_variant" in j:
        line += f" signed_variant={j['signed_variant']} signed_match={j['signed_match']}"
    return line + "\n"


# ---- subcommands ----------------------------------------------------------

def cmd_transition(args) -> tuple[str, int]:
    ring = _ring(args)
    k, side = _order(args.k), Side(args.side)
    m = oracle_transition(k, args.n, side, ring) if args.oracle else transition(k, args.n, side, ring).matrix
    payload = {"k": k, "n": args.n, "side": side.value, "ring": str(ring), "oracle": args.oracle,
               "variable": m.var, "matrix": m.to_json()}
    if args.format == "text":
        return _text_transition(payload, m), EXIT_OK
    return _dump(payload, "transition"), EXIT_OK


def cmd_split(args) -> tuple[str, int]:
    ring = _ring(args)
    o = splitting_search(_order(args.k), args.n, Side(args.side), ring)
    code = EXIT_FAILED if o.kind == ANOMALY else EXIT_OK
    if args.format == "text":
        return _text_outcome(o), code
    return _dump(outcome_to_json(o), "split"), code


def cmd_verify(args) -> tuple[str, int]:
    if args.cert:
        try:
            with open(args.cert, encoding="utf-8") as fh:
                cert = certificate_from_json(json.load(fh))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed certificate: {exc}") from None
        try:
            report = verify_certificate(cert, transition(_order(cert.k), cert.n, cert.side, cert.ring))
        except MetadataMismatch as exc:
            raise UsageError(str(exc)) from None
        payload = {"certificate": {"k": cert.k, "n": cert.n, "side": cert.side.value, "ring": str(cert.ring)},
                   "checks": report.to_json(), "verified": report.verified}
        code = EXIT_OK if report.verified else EXIT_FAILED
        if args.format == "text":
            return f"{'VERIFIED' if report.verified else 'REJECTED'} {payload['certificate']} {payload['checks']}\n", code
        return _dump(payload, "verify"), code
    if args.k is None or args.n is None or args.side is None:
        raise UsageError("verify needs --k, --n and --side (or --cert FILE)")
    r = verify_point(_order(args.k), args.n, Side(args.side), _ring(args))
    code = EXIT_OK if r["passed"] else EXIT_FAILED
    if args.format == "text":
        return _text_point(r), code
    return _dump(r, "verify"), code


def cmd_sweep(args) -> tuple[str, int]:
    sides = tuple(Side(s) for s in args.sides.split(","))
    cfg = SweepConfig(args.kmin, args.kmax, args.nmin, args.nmax, sides, _ring(args), args.out, args.format)
    result = run_sweep(cfg, args.jobs)
    s = result["summary"]
    code = EXIT_OK if s["failed"] == 0 else EXIT_FAILED
    log.info("sweep: %d points, %d failed, %d certified", s["total"], s["failed"], s["certified"])
    if args.format == "text":
        lines = [_text_point(r) for r in result["points"]]
        lines.append(f"total={s['total']} passed={s['passed']} failed={s['failed']} certified={s['certified']} "
                     f"birkhoff_fallback={s['birkhoff_fallback']} anomalies={len(s['anomalies'])}\n")
        for f in s["certificate_failures"]:
            lines.append(f"certificate failure k={f['k']} n={f['n']} side={f['side']}: {f['reason']}\n")
        return "".join(lines), code
    return _dump(result, "sweep"), code


def cmd_birkhoff(args) -> tuple[str, int]:
    ring = _ring(args)
    t = transition(_order(args.k), args.n, Side(args.side), ring).matrix
    fac = birkhoff_factor(t)
    ok = fac.check(t)
    payload = {"k": args.k, "n": args.n, "side": args.side, "ring": str(ring),
               "exponents": list(fac.exponents), "remultiplies": ok}
    if args.factors:
        payload["A"] = fac.A.to_json()
        payload["B"] = fac.B.to_json()
    code = EXIT_OK if ok else EXIT_FAILED
    if args.format == "text":
        text = f"exponents {list(fac.exponents)} remultiplies={ok}\n"
        if args.factors:
            text += "A =\n" + fac.A.format() + "\nB =\n" + fac.B.format() + "\n"
        return text, code
    return _dump(payload, "birkhoff"), code


def cmd_lemma(args) -> tuple[str, int]:
    try:
        if args.lemma == "det1":
            if args.sweep:
                reports = det1_sweep(args.amax if args.amax is not None else 8, args.lmax if args.lmax is not None else 5)
            else:
                if None in (args.a, args.b, args.l):
                    raise UsageError("lemma det1 needs --a, --b, --l (or --sweep)")
                reports = [det1_check(args.a, args.b, args.l)]
        else:
            if args.sweep:
                reports = det2_sweep(args.amax if args.amax is not None else 12, args.lmax if args.lmax is not None else 6)
            else:
                if None in (args.a, args.l):
                    raise UsageError("lemma det2 needs --a, --l (or --sweep)")
                reports = [det2_check(args.a, args.l)]
    except InvalidSpec as exc:
        raise UsageError(str(exc)) from None
    if args.format == "text":
        return "".join(_text_report(r) for r in reports), EXIT_OK
    if len(reports) == 1 and not args.sweep:
        return _dump(reports[0].to_json(), "lemma"), EXIT_OK
    table = [r.to_json() for r in reports]
    payload = {"lemma": args.lemma, "reports": table,
               "matches": sum(r["match"] for r in table), "mismatches": sum(not r["match"] for r in table)}
    return _dump(payload, "lemma"), EXIT_OK


def _add_common(p: argparse.ArgumentParser, ring: bool = True):
    if ring:
        p.add_argument("--ring", choices=["q", "fp"], default="q", help="rationals or a prime field")
        p.add_argument("--p", type=int, help="characteristic for --ring fp")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--out", help="write the payload to FILE instead of stdout")


def _add_point(p: argparse.ArgumentParser, required: bool = True):
    p.add_argument("--k", type=int, required=required, help="jet order (>= 1)")
    p.add_argument("--n", type=int, required=required, help="twist of O(n)")
    p.add_argument("--side", choices=["left", "right"], required=required)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prinparts", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transition", help="print L^k_n or R^k_n")
    _add_point(p)
    p.add_argument("--oracle", action="store_true", help="use the jet expansion instead of the closed form")
    _add_common(p)
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("split", help="search for a splitting certificate")
    _add_point(p)
    _add_common(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("verify", help="run every check at one point, or verify a certificate file")
    _add_point(p, required=False)
    p.add_argument("--cert", help="certificate JSON to verify against its transition matrix")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run verify over a grid")
    p.add_argument("--kmin", type=int, default=1)
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--nmin", type=int, default=-8)
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--sides", default="left,right")
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("birkhoff", help="Birkhoff factorization of a transition matrix")
    _add_point(p)
    p.add_argument("--factors", action="store_true", help="include A and B")
    _add_common(p)
    p.set_defaults(func=cmd_birkhoff)

    p = sub.add_parser("lemma", help="binomial determinant lemmas")
    p.add_argument("lemma", choices=["det1", "det2"])
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--sweep", action="store_true", help="tabulate the whole range")
    p.add_argument("--amax", type=int)
    p.add_argument("--lmax", type=int)
    _add_common(p, ring=False)
    p.set_defaults(func=cmd_lemma)
    return parser


def cmd_dispatch(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        text, code = args.func(args)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except (UsageError, OSError) as exc:
        print(f"prinparts {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


def main() -> None:
    sys.exit(cmd_dispatch())
