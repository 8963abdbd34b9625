"""Command-line interface: sequence, verify, zsygmondy, heights, factor.

Exit status: 0 on success, 1 when a check fails, 2 on bad input or an
undecidable precondition (for instance an inconclusive torsion test).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import shlex
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from .config import ScanConfig
from .curve import (
    INFINITY,
    NON_TORSION,
    CurvePoint,
    TorsionInconclusive,
    WeierstrassCurve,
    torsion_annihilator,
)
from .heights import canonical_height, check_height_axioms, naive_height
from .numberfield import (
    GaussianInteger,
    PreconditionError,
    canonical_associate,
    factor_ideal,
    ideal,
    ideal_divisors,
    mobius,
    mobius_sum_and_euler_product,
    parse_gaussian,
    parse_gaussian_rational,
)
from .reports import LemmaReport
from .sequences import LemmaSuite, SequenceRecord, enumerate_indices, scan, zsygmondy

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    """Malformed curve files, points or options."""


# --- job description ---------------------------------------------------------------


@dataclass
class CurveSpec:
    curve: WeierstrassCurve
    points: dict[str, CurvePoint] = field(default_factory=dict)


@dataclass
class JobSpec:
    command: str
    curve_path: str | None = None
    point_args: list[str] = field(default_factory=list)
    order: str | None = None
    max_norm: int = 25
    prime_cap: int = 10_000
    fmt: str = "table"
    timestamp: bool = True
    canonical_only: bool = False
    alpha: str | None = None
    prime: str | None = None
    numbers: list[str] = field(default_factory=list)
    rho_iterations: int | None = 20_000

    def __post_init__(self):
        if self.max_norm < 1:
            raise InputError("--max-norm must be at least 1")
        if self.prime_cap < 2:
            raise InputError("--prime-cap must be at least 2")

    @property
    def config(self) -> ScanConfig:
        return ScanConfig(rho_iterations=self.rho_iterations, prime_cap=self.prime_cap)


def parse_point(text: str, E: WeierstrassCurve) -> CurvePoint:
    t = text.strip()
    if t.upper() == "O":
        return INFINITY
    parts = t.split(",")
    if len(parts) != 2:
        raise InputError(f"point {text!r} must be 'x,y' or 'O'")
    try:
        return E.point(parse_gaussian_rational(parts[0]), parse_gaussian_rational(parts[1]))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_curve_text(text: str) -> CurveSpec:
    """Parse the key=value curve format; named points may follow the curve lines."""
    fields: dict[str, str] = {}
    raw_points: list[tuple[str, str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in ("field", "a", "cm"):
            fields[key] = value
        elif key.isidentifier():
            raw_points.append((key, value))
        else:
            raise InputError(f"line {lineno}: unknown key {key!r}")
    if "a" not in fields:
        raise InputError("curve file needs an 'a=a1,a2,a3,a4,a6' line")
    field_tag = fields.get("field", "Q")
    if field_tag not in ("Q", "Qi"):
        raise InputError(f"field must be Q or Qi, got {field_tag!r}")
    coeffs = [c for c in fields["a"].split(",")]
    if len(coeffs) != 5:
        raise InputError("a= needs exactly five coefficients")
    cm = fields.get("cm", "false").lower() in ("true", "1", "yes")
    try:
        values = [parse_gaussian_rational(c) for c in coeffs]
        E = WeierstrassCurve.from_coefficients(values, field_tag, cm)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return CurveSpec(E, {name: parse_point(v, E) for name, v in raw_points})


def load_job_curve(job: JobSpec) -> tuple[CurveSpec, CurvePoint, CurvePoint, str]:
    if not job.curve_path:
        raise InputError("--curve is required")
    try:
        text = Path(job.curve_path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {job.curve_path}: {exc}") from None
    spec = parse_curve_text(text)
    for arg in job.point_args:
        if "=" not in arg:
            raise InputError(f"--point expects NAME=x,y, got {arg!r}")
        name, value = arg.split("=", 1)
        spec.points[name.strip()] = parse_point(value, spec.curve)
    if "P" not in spec.points:
        raise InputError("a point P is required (curve file or --point P=x,y)")
    P = spec.points["P"]
    Q = spec.points.get("Q", INFINITY)
    order = job.order or ("Zi" if spec.curve.cm else "Z")
    if order not in ("Z", "Zi"):
        raise InputError("--order must be Z or Zi")
    if order == "Zi" and not spec.curve.cm:
        raise InputError("--order Zi requires a CM curve (cm=true)")
    return spec, P, Q, order


# --- output --------------------------------------------------------------------------


def _header(job: JobSpec) -> dict:
    head = {"kind": "header", "command": job.command}
    if job.timestamp:
        head["generated"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return head


def emit(job: JobSpec, rows: list[dict], columns: list[str], out) -> None:
    head = _header(job)
    if job.fmt == "jsonl":
        out.write(json.dumps(head, sort_keys=True) + "\n")
        for r in rows:
            out.write(json.dumps(r, sort_keys=True, allow_nan=False) + "\n")
        return
    if job.timestamp:
        out.write(f"# {job.command} generated {head['generated']}\n")
    if job.fmt == "csv":
        w = csv.DictWriter(out, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({c: _cell(r.get(c)) for c in columns})
        return
    cells = [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for row in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.10g}"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def parse_jsonl(text: str) -> list:
    """Rebuild records from ``--format jsonl`` output (header lines are skipped)."""
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        d = json.loads(line)
        kind = d.get("kind")
        if kind == "sequence":
            out.append(SequenceRecord.from_dict(d))
        elif kind == "lemma":
            out.append(LemmaReport.from_dict(d))
        elif kind != "header":
            out.append(d)
    return out


# --- commands ---------------------------------------------------------------------------


def _keep(job: JobSpec, alpha: GaussianInteger) -> bool:
    return not job.canonical_only or not alpha or canonical_associate(alpha) == alpha


def cmd_sequence(job: JobSpec, out) -> int:
    spec, P, Q, order = load_job_curve(job)
    records = scan(spec.curve, P, Q, order, job.max_norm, job.config)
    rows = [{"kind": "sequence", **r.as_dict()} for r in records if _keep(job, r.index)]
    emit(job, rows, ["index", "norm", "term", "primitive", "witness"], out)
    return EXIT_OK


def _mobius_reports(order: str, s, N: int) -> list[LemmaReport]:
    out = []
    for alpha in enumerate_indices(order, N):
        if canonical_associate(alpha) != alpha:
            continue
        total, euler = mobius_sum_and_euler_product(alpha, s, order)
        out.append(LemmaReport("mobius-euler", "pass" if total == euler else "fail", str(alpha), "",
                               {"sum": str(total), "product": str(euler), "s": str(s)}))
        if alpha.norm() > 1:
            fa = factor_ideal(alpha, order)
            sigma = sum(mobius(d) for d in ideal_divisors(fa))
            out.append(LemmaReport("mobius-sum", "pass" if sigma == 0 else "fail", str(alpha), "",
                                   {"sum": sigma}))
    return out


def _height_reports(E, P, Q) -> list[LemmaReport]:
    alphas = [GaussianInteger(2), GaussianInteger(3)]
    if E.cm:
        alphas += [GaussianInteger(0, 1), GaussianInteger(1, 1), GaussianInteger(2, 1)]
    out = [check_height_axioms(E, P, a) for a in alphas]
    if not Q.is_infinity:
        out.append(check_height_axioms(E, Q, GaussianInteger(2)))
    return out


def cmd_verify(job: JobSpec, out, err) -> int:
    spec, P, Q, order = load_job_curve(job)
    E = spec.curve
    suite = LemmaSuite(E, P, Q, order, job.config)
    if job.alpha is not None:
        if job.prime is None:
            raise InputError("--alpha needs --prime")
        try:
            alpha, prime = parse_gaussian(job.alpha), parse_gaussian(job.prime.strip().strip("()"))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        reports = suite.verify(alpha, ideal(prime))
    else:
        reports = suite.run(job.max_norm, job.prime_cap)
        reports += _height_reports(E, P, Q)
        reports += _mobius_reports(order, suite.s, job.max_norm)
    rows = [{"kind": "lemma", **r.as_dict()} for r in reports]
    emit(job, rows, ["tag", "alpha", "prime", "status", "details"], out)
    failures = [r for r in reports if r.status == "fail"]
    for r in failures:
        err.write(f"FAIL {r.tag} alpha={r.alpha} prime={r.prime} details={json.dumps(r.details, sort_keys=True)}\n")
        if r.prime:
            argv = ["cmeds", "verify", "--curve", job.curve_path or ""]
            for p in job.point_args:
                argv += ["--point", p]
            argv += ["--order", order, "--alpha", r.alpha, "--prime", r.prime.strip("()")]
            err.write("  replay: " + shlex.join(argv) + "\n")
    summary = f"{len(reports)} checks, {len(failures)} failed\n"
    err.write(summary)
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def cmd_zsygmondy(job: JobSpec, out) -> int:
    spec, P, Q, order = load_job_curve(job)
    rep = zsygmondy(spec.curve, P, Q, order, job.max_norm, job.config)
    rows = [{"kind": "exceptional", "index": str(a), "norm": a.norm()}
            for a in rep.exceptional if _keep(job, a)]
    rows.append({"kind": "summary", "index": None, "norm": None,
                 "exceptional_count": len(rep.exceptional),
                 "largest_norm": rep.largest_norm, "max_norm": rep.max_norm})
    emit(job, rows, ["kind", "index", "norm", "exceptional_count", "largest_norm", "max_norm"], out)
    return EXIT_OK


def cmd_heights(job: JobSpec, out) -> int:
    spec, P, Q, order = load_job_curve(job)
    E = spec.curve
    rows = []
    points = dict(spec.points)
    points.setdefault("Q", Q)
    for name in sorted(points):
        R = points[name]
        h = canonical_height(E, R)
        s = torsion_annihilator(E, R, order)
        rows.append({
            "kind": "height",
            "point": name,
            "coordinates": str(R),
            "naive": None if R.is_infinity else naive_height(R.x, E.field).value,
            "canonical": h.value,
            "error_bound": h.error_bound,
            "torsion": "non-torsion" if s is NON_TORSION else str(s),
        })
    emit(job, rows, ["point", "coordinates", "naive", "canonical", "error_bound", "torsion"], out)
    return EXIT_OK


def cmd_factor(job: JobSpec, out) -> int:
    order = job.order or "Z"
    rows = []
    for text in job.numbers:
        try:
            g = parse_gaussian(text)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if not g:
            raise InputError("cannot factor 0")
        if order == "Z" and g.im:
            raise InputError(f"{text} is not an integer; use --order Zi")
        f = factor_ideal(g, order, rho_iterations=job.rho_iterations)
        rows.append({"kind": "factor", "input": text, "ideal": str(f), "complete": f.complete,
                     "norm": f.norm()})
    emit(job, rows, ["input", "ideal", "complete", "norm"], out)
    return EXIT_OK


# --- argument parsing -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--curve", dest="curve_path")
    common.add_argument("--point", dest="point_args", action="append", default=[],
                        metavar="NAME=x,y|O")
    common.add_argument("--order", choices=["Z", "Zi"])
    common.add_argument("--max-norm", type=int, default=25)
    common.add_argument("--prime-cap", type=int, default=10_000)
    common.add_argument("--format", dest="fmt", choices=["table", "jsonl", "csv"], default="table")
    common.add_argument("--no-timestamp", dest="timestamp", action="store_false")
    common.add_argument("--canonical-only", action="store_true",
                        help="print only canonical associates of each index")
    common.add_argument("--rho-iterations", type=int, default=20_000,
                        help="Pollard rho budget per composite before leaving a cofactor")

    parser = argparse.ArgumentParser(prog="cmeds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sequence", parents=[common], help="terms and primitive-divisor verdicts")
    v = sub.add_parser("verify", parents=[common], help="good-prime lemmas, heights, Moebius identities")
    v.add_argument("--alpha", help="replay a single index")
    v.add_argument("--prime", help="generator of the prime to replay")
    sub.add_parser("zsygmondy", parents=[common], help="indices without a primitive divisor")
    sub.add_parser("heights", parents=[common], help="naive and canonical heights of the named points")
    f = sub.add_parser("factor", parents=[common], help="factor integers or Gaussian integers")
    f.add_argument("numbers", nargs="+")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        job = JobSpec(
            command=ns.command,
            curve_path=ns.curve_path,
            point_args=ns.point_args,
            order=ns.order,
            max_norm=ns.max_norm,
            prime_cap=ns.prime_cap,
            fmt=ns.fmt,
            timestamp=ns.timestamp,
            canonical_only=ns.canonical_only,
            alpha=getattr(ns, "alpha", None),
            prime=getattr(ns, "prime", None),
            numbers=getattr(ns, "numbers", []),
            rho_iterations=ns.rho_iterations,
        )
        buf = io.StringIO()
        if job.command == "sequence":
            code = cmd_sequence(job, buf)
        elif job.command == "verify":
            code = cmd_verify(job, buf, err)
        elif job.command == "zsygmondy":
            code = cmd_zsygmondy(job, buf)
        elif job.command == "heights":
            code = cmd_heights(job, buf)
        else:
            code = cmd_factor(job, buf)
    except (InputError, PreconditionError, TorsionInconclusive) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    out.write(buf.getvalue())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
