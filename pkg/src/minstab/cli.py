"""``minstab`` command-line tool.

Subcommands::

    minstab check  INPUT [--N N] [--tol TOL]
    minstab radius INPUT [--csv PATH] [--points K]
    minstab verify INPUT [--trials T] [--seed S]
    minstab mesh   INPUT OUT.obj [--radius R] [--samples S]

Exit codes: 0 verdict produced, 2 bad input, 3 capacity exceeded,
4 verification breach, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import sys

import numpy as np

from . import __version__
from .documents import InputDocument, InputError, ReportDocument, pair
from .errors import CapacityError, GridTooCoarseError, InvalidRepresentationError
from .geometry import R3Rep, WEData, from_r3, surface_point
from .isotropy import DEFAULT_TOL, Violation, construct_J, gram, holomorphy_check, jet_scale
from .oracle import F_h_quadrature, monomial_integral_check, rayleigh_r3
from .variational import (F_h, TestFunction, c_criterion, destab_search, radius_certificate,
                          radius_r3)

EXIT_OK, EXIT_INPUT, EXIT_CAPACITY, EXIT_BREACH, EXIT_IO = 0, 2, 3, 4, 5

CONFORMAL_TOL = 1e-10
MONOMIAL_TOL = 1e-10
ORACLE_RTOL = 1e-8

log = logging.getLogger("minstab")


class Breach(Exception):
    """A verification tolerance was exceeded; carries the report."""

    def __init__(self, report: ReportDocument):
        super().__init__("verification breach")
        self.report = report


def _load(path: str, n_max: int | None) -> InputDocument:
    return InputDocument.read(path, n_max)


def _wedata(doc: InputDocument) -> WEData:
    d = from_r3(doc.data) if doc.kind == "r3" else doc.data
    if d.residual > CONFORMAL_TOL:
        raise InputError(f"data is not conformal: residual {d.residual:.3e} > {CONFORMAL_TOL:.0e}")
    return d


def _gram_summary(d: WEData, N: int, verdict) -> dict:
    table = gram(d, N)
    out = {
        "N": N,
        "scale": jet_scale(d, N),
        "max_abs": table.max_abs(),
        "antidiagonal_sums_max": max(abs(complex(np.sum(table.antidiagonal(s))))
                                     for s in range(N + 1)),
        "first_violation": None,
    }
    if isinstance(verdict, Violation):
        out["first_violation"] = {"m": verdict.m, "k": verdict.k, "value": pair(verdict.value)}
    return out


def _certificate_dict(cert) -> dict:
    out = cert.as_dict()
    out["gamma"] = pair(cert.phi.gamma)
    return out


def _classify(d: WEData, N: int, tol: float) -> ReportDocument:
    verdict = holomorphy_check(d, N, tol)
    report = ReportDocument("check", "undetermined", __version__,
                            parameters={"N": N, "tol": tol, "n_max": d.degree_cap,
                                        "n": d.n, "degree": d.degree},
                            gram_summary=_gram_summary(d, N, verdict))
    if not isinstance(verdict, Violation):
        if N < d.degree:
            report.notes.append(f"Gram table vanishes up to N={N}, but the data has degree "
                                f"{d.degree}; higher jets were not examined")
            return report
        J = construct_J(d, N, tol)
        res = J.residuals(d.jets(N))
        report.verdict = "holomorphic"
        report.complex_structure = {
            "dim": J.dim, "basis": J.basis.T, "matrix": J.matrix, "translate": J.translate,
            "condition": J.condition, "residuals": res,
        }
        return report
    half = d.degree_cap // 2
    cert = destab_search(d, half, half, tol=tol)
    if cert is not None and cert.verified_by_oracle:
        report.verdict = "unstable"
        report.certificate = _certificate_dict(cert)
    elif cert is not None:
        report.notes.append("certificate found but quadrature did not confirm it")
        report.certificate = _certificate_dict(cert)
    else:
        report.notes.append(f"Gram violation at (m, k) = ({verdict.m}, {verdict.k}) but no "
                            f"certificate within search bounds k, m <= {half}")
    return report


def cmd_check(args) -> ReportDocument:
    doc = _load(args.input, args.n_max)
    d = _wedata(doc)
    N = d.degree_cap if args.N is None else args.N
    if not 0 <= N <= d.degree_cap:
        raise CapacityError(f"--N {N} outside [0, {d.degree_cap}]")
    tol = args.tol if args.tol is not None else (doc.tol or DEFAULT_TOL)
    report = _classify(d, N, tol)
    report.parameters["input_kind"] = doc.kind
    return report


def _require_r3(doc: InputDocument) -> R3Rep:
    if doc.kind != "r3":
        raise InputError(f"radius needs an 'r3' input, got '{doc.kind}'")
    return doc.data


def _radius_block(rep: R3Rep) -> tuple[dict, object]:
    res = radius_r3(rep)
    block = {
        "r0": res.r0, "poly": res.poly, "fast_path": res.fast_path,
        "gamma": pair(res.gamma), "k": res.k, "m": res.m,
    }
    return block, res


def cmd_radius(args) -> ReportDocument:
    doc = _load(args.input, args.n_max)
    rep = _require_r3(doc)
    block, res = _radius_block(rep)
    report = ReportDocument("radius", "undetermined", __version__,
                            parameters={"n_max": rep.f.degree_cap, "input_kind": "r3"},
                            radius=block)
    cert = radius_certificate(rep, res)
    if cert is not None and cert.verified_by_oracle:
        report.verdict = "unstable"
        report.certificate = _certificate_dict(cert)
    else:
        report.notes.append("no oracle-verified certificate beyond r0 within the degree cap")
    if args.csv:
        _write_radius_csv(args.csv, rep, res, args.points)
        report.parameters["csv"] = args.csv
    return report


def _write_radius_csv(path: str, rep: R3Rep, res, points: int) -> None:
    d = from_r3(rep)
    order = res.k + res.m
    usable = 2 * order <= d.degree_cap
    rows = []
    for r in np.linspace(0.0, 2.0 * res.r0, points)[1:]:
        crit = c_criterion(d, res.gamma, order, r) if usable else ""
        rows.append([repr(float(r)), repr(float(np.polynomial.polynomial.polyval(r, res.poly))),
                     crit if crit == "" else repr(float(crit))])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["r", "P_m", "criterion"])
        writer.writerows(rows)


def _random_trials(d: WEData, trials: int, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    top = min(5, d.degree_cap // 2)
    if top < 1:
        raise CapacityError("verification needs a degree cap of at least 2")
    worst = 0.0
    for _ in range(trials):
        k = int(rng.integers(1, top + 1))
        m = int(rng.integers(k, top + 1))
        phi = TestFunction(k, m, rng.uniform(0, 2 * math.pi), rng.normal())
        r = rng.uniform(0.2, 3.0)
        closed = F_h(d, phi, r)
        quad = F_h_quadrature(d, phi, r)
        worst = max(worst, abs(closed - quad) / (1 + abs(closed)))
    return {"trials": trials, "seed": seed, "max_deviation": worst,
            "tolerance": ORACLE_RTOL, "ok": worst <= ORACLE_RTOL}


def _nonnegativity(d: WEData) -> dict:
    top = min(5, d.degree_cap // 2)
    scale = jet_scale(d)
    worst = math.inf
    for m in range(1, top + 1):
        for k in range(1, m + 1):
            for theta in np.linspace(0, 2 * math.pi, 8, endpoint=False):
                for y in (-2.0, -0.5, 0.5, 2.0):
                    for r in (0.25, 1.0, 2.0):
                        v = F_h(d, TestFunction(k, m, theta, y), r)
                        worst = min(worst, v / (scale * max(1.0, r) ** (2 * m)))
    return {"min_scaled_F_h": worst, "ok": worst >= -1e-10}


def cmd_verify(args) -> ReportDocument:
    doc = _load(args.input, args.n_max)
    d = _wedata(doc)
    tol = doc.tol or DEFAULT_TOL
    report = _classify(d, d.degree_cap, tol)
    report.command = "verify"
    report.parameters.update({"trials": args.trials, "seed": args.seed, "input_kind": doc.kind})
    mono = max(abs(monomial_integral_check(a, b) - (2 * math.pi / (a + b + 2) if a == b else 0))
               for a in range(11) for b in range(11))
    checks = {
        "monomials": {"max_abs_error": mono, "tolerance": MONOMIAL_TOL,
                      "ok": mono <= MONOMIAL_TOL},
        "closed_vs_quadrature": _random_trials(d, args.trials, args.seed),
    }
    if report.verdict == "holomorphic":
        checks["nonnegativity"] = _nonnegativity(d)
    if doc.kind == "r3":
        block, res = _radius_block(doc.data)
        report.radius = block
        try:
            inside = rayleigh_r3(doc.data, 0.95 * res.r0)
            outside = rayleigh_r3(doc.data, 1.05 * res.r0)
            checks["rayleigh"] = {"r_inside": 0.95 * res.r0, "lambda_inside": inside,
                                  "r_outside": 1.05 * res.r0, "lambda_outside": outside,
                                  "sign_flip": inside >= 0 > outside, "ok": outside < 0}
        except GridTooCoarseError as exc:
            checks["rayleigh"] = {"error": str(exc), "ok": False}
    report.verification = checks
    if not all(c["ok"] for c in checks.values()):
        raise Breach(report)
    return report


def cmd_mesh(args) -> ReportDocument:
    if args.samples < 8:
        raise InputError(f"--samples must be at least 8, got {args.samples}")
    if not args.radius > 0:
        raise InputError("--radius must be positive")
    doc = _load(args.input, args.n_max)
    d = _wedata(doc)
    text, n_vertices, n_faces = obj_mesh(d, args.radius, args.samples)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    return ReportDocument("mesh", "undetermined", __version__,
                          parameters={"radius": args.radius, "samples": args.samples,
                                      "output": args.output, "vertices": n_vertices,
                                      "faces": n_faces, "input_kind": doc.kind},
                          notes=["mesh export does not classify the surface"])


def obj_mesh(d: WEData, radius: float, samples: int) -> tuple[str, int, int]:
    """Triangulated polar grid of ``{h(z) : |z| <= radius}`` as OBJ text.

    ``samples`` rings of ``samples`` points each around a centre vertex.
    Faces are counter-clockwise in the parameter disk.  Coordinates beyond
    the third are written as a comment after their vertex.
    """
    rings = samples
    s = radius * np.arange(1, rings + 1) / rings
    t = 2 * math.pi * np.arange(samples) / samples
    z = np.concatenate([[0j], (s[:, None] * np.exp(1j * t)[None, :]).ravel()])
    pts = surface_point(d, z)
    lines = [f"# minstab {__version__} surface patch, radius {radius!r}, n = {d.n}"]
    for p in pts:
        xyz = list(p[:3]) + [0.0] * max(0, 3 - p.size)
        lines.append("v " + " ".join(f"{x:.17g}" for x in xyz))
        if p.size > 3:
            lines.append("# extra " + " ".join(f"{x:.17g}" for x in p[3:]))

    def vid(i, j):  # ring i >= 1, 1-based OBJ index
        return 2 + (i - 1) * samples + (j % samples)

    faces = []
    for j in range(samples):
        faces.append((1, vid(1, j), vid(1, j + 1)))
    for i in range(1, rings):
        for j in range(samples):
            faces.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            faces.append((vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)))
    lines += [f"f {a} {b} {c}" for a, b, c in faces]
    return "\n".join(lines) + "\n", len(pts), len(faces)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minstab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--n-max", type=int, default=None,
                        help="truncation degree (default: input file, then $MINSTAB_N_MAX, then 32)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="holomorphic / unstable / undetermined verdict")
    p.add_argument("input")
    p.add_argument("--N", type=int, default=None, help="largest jet index examined")
    p.add_argument("--tol", type=float, default=None, help="relative Gram zero tolerance")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("radius", help="destabilisation radius bound for R^3 data")
    p.add_argument("input")
    p.add_argument("--csv", default=None, help="write a sweep of P_m and the criterion")
    p.add_argument("--points", type=int, default=51, help="sweep points on [0, 2 r0]")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("verify", help="run the closed-form vs oracle checks")
    p.add_argument("input")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mesh", help="export a polar-grid OBJ mesh")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=32)
    p.set_defaults(func=cmd_mesh)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="minstab: %(levelname)s: %(message)s")
    code = EXIT_OK
    try:
        report = args.func(args)
    except Breach as exc:
        report, code = exc.report, EXIT_BREACH
    except CapacityError as exc:
        print(f"minstab: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, InvalidRepresentationError) as exc:
        print(f"minstab: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"minstab: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    sys.stdout.write(report.to_json())
    if code == EXIT_BREACH:
        print("minstab: verification tolerance exceeded", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
