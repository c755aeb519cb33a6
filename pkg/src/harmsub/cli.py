"""Command-line front end.

Every command is a thin wrapper over library calls.  Exit status: 0 for a
passing or consistent result, 1 for a violation, failure or contradiction,
2 for usage, parse or hypothesis errors.

Map arguments accept either a series document (JSON with ``a`` and ``b``
coefficient lists) or a builtin name: ``ellipse:M1,M2`` or ``halfplane``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import fields
from pathlib import Path

from . import admissibility as adm
from .domains import BoundaryMapQ, Disk, Ellipse, HalfPlane, builtin_boundary_map, domain_from_dict, image_of_disk
from .errors import HarmsubError
from .examples import ExampleConfig, run_example
from .report import dumps, report_document
from .series import apply_Dn, deserialize, serialize
from .subordination import STRONG, JackConfig, Resolution, check_subordination, jack_probe

BUILTIN_PREFIXES = ("ellipse:", "halfplane")


class UsageError(Exception):
    pass


def load_series(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return deserialize(text)


def load_map(arg: str) -> BoundaryMapQ:
    """Builtin name or series file, wrapped with its exception set and domain."""
    if arg.startswith(BUILTIN_PREFIXES):
        return builtin_boundary_map(arg)
    return BoundaryMapQ(load_series(arg))


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise UsageError(f"not a complex number: {text!r}") from None


def parse_psi(text: str):
    """``affine:alpha,beta,gamma,delta`` (complex literals such as 1+2j)."""
    kind, _, args = text.partition(":")
    if kind != "affine":
        raise UsageError(f"unsupported psi {text!r}; expected affine:alpha,beta,gamma,delta")
    vals = [parse_complex(v) for v in args.split(",")] if args else []
    if not 1 <= len(vals) <= 4:
        raise UsageError("affine psi takes one to four coefficients")
    return adm.AffinePsi(*vals)


def parse_domain(text: str, q: BoundaryMapQ):
    """``image`` (q(D)), ``disk:c,r``, ``halfplane:c``, ``ellipse:c,a,b`` or a JSON file."""
    kind, _, args = text.partition(":")
    parts = args.split(",") if args else []
    try:
        if kind == "image" and not parts:
            return q.image_domain()
        if kind == "disk" and len(parts) == 2:
            return Disk(parse_complex(parts[0]), float(parts[1]))
        if kind == "halfplane" and len(parts) == 1:
            return HalfPlane(float(parts[0]))
        if kind == "ellipse" and len(parts) == 3:
            return Ellipse(parse_complex(parts[0]), float(parts[1]), float(parts[2]))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if Path(text).is_file():
        return domain_from_dict(json.loads(Path(text).read_text()))
    raise UsageError(f"cannot parse domain {text!r}")


def scan_config(args) -> adm.AdmissibilityScanConfig:
    doc = {}
    if args.config:
        doc = json.loads(Path(args.config).read_text())
        known = {f.name for f in fields(adm.AdmissibilityScanConfig)}
        unknown = set(doc) - known
        if unknown:
            raise UsageError(f"unknown scan config keys: {sorted(unknown)}")
    if args.resolution is not None:
        doc["n_zeta"] = args.resolution
    if args.m_max is not None:
        doc["m_max"] = args.m_max
    if args.variant is not None:
        doc["variant"] = args.variant
    if args.tol is not None:
        doc["tol_geo"] = args.tol
    if "z_radii" in doc:
        doc["z_radii"] = tuple(doc["z_radii"])
    return adm.AdmissibilityScanConfig(**doc)


def emit(args, kind: str, payload) -> None:
    text = dumps(report_document(kind, payload, timestamp=not args.no_timestamp))
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)


# --- commands ------------------------------------------------------------------------


def cmd_ops(args) -> int:
    f = load_series(args.series)
    out = apply_Dn(f, args.order, args.operator)
    print(f"{'n':>3}  {'a_n':>28}  {'b_n':>28}")
    for n, (a, b) in enumerate(zip(out.a, out.b)):
        print(f"{n:>3}  {a:>28.15g}  {b:>28.15g}")
    text = serialize(out)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return 0


def _csv_rows(header, cols):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in zip(*cols):
        w.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def cmd_map(args) -> int:
    bq = load_map(args.source)
    if args.n_boundary < 1 or args.n_interior < 0:
        raise UsageError("n-boundary must be >= 1 and n-interior >= 0")
    img = image_of_disk(bq, n_boundary=args.n_boundary, n_rings=max(args.n_interior, 1), r_max=args.r_max)
    boundary = _csv_rows(["theta", "re", "im"], [img.boundary_theta, img.boundary.real, img.boundary.imag])
    if args.output:
        Path(args.output).write_text(boundary)
    else:
        sys.stdout.write(boundary)
    if args.interior_output and args.n_interior > 0:
        Path(args.interior_output).write_text(
            _csv_rows(["r", "theta", "re", "im"], [img.interior_r, img.interior_theta, img.interior.real, img.interior.imag])
        )
    return 0


def cmd_check_sub(args) -> int:
    f = load_map(args.f).q
    F = load_map(args.F)
    res = Resolution(n_angles=args.resolution or Resolution.n_angles, tol_geo=args.tol or Resolution.tol_geo)
    verdict = check_subordination(f, F.q, F.image_domain(), res)
    emit(args, "check-sub", verdict.to_dict())
    return 0 if verdict.relation == STRONG else 1


def cmd_check_admissible(args) -> int:
    q = load_map(args.q)
    psi = parse_psi(args.psi)
    omega = parse_domain(args.omega, q)
    cfg = scan_config(args)
    rep = adm.scan_admissibility(psi, q, omega, cfg)
    emit(args, "check-admissible", rep.to_dict())
    return 0 if rep.passed else 1


def cmd_jack_probe(args) -> int:
    p = load_map(args.p).q
    q = load_map(args.q)
    cfg = JackConfig(n_angles=args.resolution or JackConfig.n_angles)
    w = jack_probe(p, q, cfg)
    if w is None:
        emit(args, "jack-probe", {"contained": True, "witness": None})
        return 0
    ok = w.satisfies_lemma()
    emit(args, "jack-probe", {"contained": False, "witness": w.to_dict(), "satisfies_lemma": ok})
    return 0 if ok else 1


def cmd_verify_example(args) -> int:
    kw = {"id": args.id}
    if args.M1 is not None:
        kw["M1"] = args.M1
    if args.M2 is not None:
        kw["M2"] = args.M2
    if args.resolution is not None:
        kw["n_zeta"] = args.resolution
    if args.m_max is not None:
        kw["m_max"] = args.m_max
    if args.variant is not None:
        kw["variant"] = args.variant
    if args.tol is not None:
        kw["tol"] = args.tol
    try:
        cfg = ExampleConfig(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = run_example(cfg)
    print(rep.render(), file=sys.stderr)
    emit(args, "verify-example", rep.to_dict())
    return 0 if rep.passed else 1


# --- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--resolution", type=int, help="boundary / angular sample count")
    common.add_argument("--m-max", type=float, help="largest m in admissibility scans")
    common.add_argument("--variant", choices=[adm.LEMMA, adm.DEFINITION], help="t-cone constraint form")
    common.add_argument("--tol", type=float, help="geometric or check tolerance")
    common.add_argument("--no-timestamp", action="store_true", help="omit the report timestamp")
    common.add_argument("--output", help="write the result here instead of stdout")

    ap = argparse.ArgumentParser(prog="harmsub", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ops", parents=[common], help="apply D or Dfrak to a series document")
    p.add_argument("series")
    p.add_argument("--operator", choices=["D", "Dfrak"], default="D")
    p.add_argument("--order", type=int, default=1)
    p.set_defaults(func=cmd_ops)

    p = sub.add_parser("map", parents=[common], help="CSV of the image of the disk")
    p.add_argument("source")
    p.add_argument("--n-boundary", type=int, default=512)
    p.add_argument("--n-interior", type=int, default=8, help="number of interior rings")
    p.add_argument("--r-max", type=float, default=0.99)
    p.add_argument("--interior-output", help="CSV file for interior samples (r,theta,re,im)")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("check-sub", parents=[common], help="is f strongly subordinate to F?")
    p.add_argument("f")
    p.add_argument("F")
    p.set_defaults(func=cmd_check_sub)

    p = sub.add_parser("check-admissible", parents=[common], help="scan psi for admissibility")
    p.add_argument("q")
    p.add_argument("--psi", required=True, help="affine:alpha,beta,gamma,delta")
    p.add_argument("--omega", default="image", help="image | disk:c,r | halfplane:c | ellipse:c,a,b | JSON file")
    p.add_argument("--config", help="JSON scan configuration document")
    p.set_defaults(func=cmd_check_admissible)

    p = sub.add_parser("jack-probe", parents=[common], help="contact data where p first leaves q(D)")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(func=cmd_jack_probe)

    p = sub.add_parser("verify-example", parents=[common], help="reproduce a worked example")
    p.add_argument("id", type=int)
    p.add_argument("--M1", type=float)
    p.add_argument("--M2", type=float)
    p.set_defaults(func=cmd_verify_example)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (UsageError, HarmsubError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"harmsub: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
