"""Command-line front end: ``qsl2r <command> [options]``.

Exit codes: 0 when every check passes, 1 on a verification failure or an
inadmissible label, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import unicodedata
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from . import harmonic, repkit, spectral
from .ncalg import REGISTRY, verify_algebra
from .qspecial import QParams

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_TRUNC = {"irrep": 40, "branch": 60, "induce": 40, "measure": 200, "regular": 200}

_ALGEBRA_ALIASES = {
    "oqsu2": "Oq_SU2", "suq2": "Oq_SU2",
    "podles": "Podles", "oqst2": "Podles", "podlessphere": "Podles",
    "podlesloc": "Podles_loc", "oqlocst2": "Podles_loc",
    "uqsu2": "Uq_su2", "uqpp": "Uq_su2",
    "uqpm": "Uq_pm", "uqmp": "Uq_mp", "uqmm": "Uq_mm",
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    q: float
    a: object  # float or Fraction
    trunc: Optional[int]
    tol: float
    format: str
    out: Optional[str]

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise UsageError(f"--q must lie in (0, 1), got {self.q}")
        if self.trunc is not None and self.trunc < 2:
            raise UsageError(f"--trunc must be at least 2, got {self.trunc}")
        if not self.tol > 0:
            raise UsageError(f"--tol must be positive, got {self.tol}")

    @property
    def params(self) -> QParams:
        return QParams(self.q, self.a)

    def truncation(self, command: str) -> int:
        return self.trunc if self.trunc is not None else DEFAULT_TRUNC[command]


# argument parsing --------------------------------------------------------------------

def parse_a(text: str):
    """``"3/10"`` becomes an exact Fraction, anything else a float."""
    try:
        if "/" in text:
            return Fraction(text.strip())
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot read a from {text!r}") from None


def parse_sweep(text: str) -> range:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"--sweep expects n0..n1, got {text!r}")
    n0, n1 = int(m[1]), int(m[2])
    if n1 < n0:
        raise argparse.ArgumentTypeError(f"empty sweep {text!r}")
    return range(n0, n1 + 1)


def resolve_algebra(name: str) -> str:
    if name in REGISTRY:
        return name
    key = unicodedata.normalize("NFKD", name).encode("ascii", "ignore").decode().lower()
    key = re.sub(r"[^a-z0-9+\-]", "", key).replace("+", "p").replace("-", "m")
    if key in _ALGEBRA_ALIASES:
        return _ALGEBRA_ALIASES[key]
    raise UsageError(f"unknown algebra {name!r}; known: {', '.join(sorted(REGISTRY))}")


def normalize_label(text: str) -> str:
    """Accept ``D+3`` as shorthand for ``D+:3``."""
    m = re.fullmatch(r"\s*([LDET][+-])\s*(\S+)\s*", text)
    return f"{m[1]}:{m[2].lstrip(':')}" if m else text


def _sign_list(text: str) -> List[int]:
    return {"+": [1], "-": [-1], "both": [1, -1]}[text]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=float, default=0.5, help="deformation parameter in (0, 1)")
    common.add_argument("--a", type=parse_a, default=Fraction(3, 10), help="sphere parameter, float or p/q")
    common.add_argument("--trunc", type=int, default=None, help="truncation size")
    common.add_argument("--tol", type=float, default=1e-10, help="residual tolerance")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    ap = argparse.ArgumentParser(prog="qsl2r", description="Quantum SL(2,R) verification and data export.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-algebra", parents=[common], help="exact identity suite for one algebra")
    p.add_argument("algebra", help=f"one of {', '.join(sorted(REGISTRY))} or 'all'")
    p.add_argument("--samples", type=int, default=200)

    p = sub.add_parser("irrep", parents=[common], help="truncated irreducible representation")
    p.add_argument("label", help='e.g. "L+:0.5", "D+:3", "E-:2", "T+"')

    p = sub.add_parser("branch", parents=[common], help="restriction to the Podles sphere")
    p.add_argument("label")

    p = sub.add_parser("induce", parents=[common], help="principal series induced from a character")
    p.add_argument("--theta", type=float, required=True, help="z = exp(-i theta)")

    p = sub.add_parser("measure", parents=[common], help="vacuum spectral measure of the twisted Casimir")
    p.add_argument("--sign", choices=("+", "-"), required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int, help="channel offset, c = a + n")
    g.add_argument("--c", type=float, help="channel parameter c")
    p.add_argument("--samples", type=int, default=201, help="density samples in the report")

    p = sub.add_parser("regular", parents=[common], help="decompose regular-representation channels")
    p.add_argument("--sign", choices=("+", "-", "both"), default="both")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--sweep", type=parse_sweep, help="n0..n1, channels run in parallel")
    p.add_argument("--workers", type=int, default=None)
    return ap


# commands ----------------------------------------------------------------------------
# each returns (passed, json report, csv rows or None)

def cmd_verify_algebra(cfg: RunConfig, args):
    names = sorted(REGISTRY) if args.algebra == "all" else [resolve_algebra(args.algebra)]
    reports = [verify_algebra(n, samples=args.samples) for n in names]
    rows = [["algebra", "check", "passed", "detail"]]
    for r in reports:
        rows += [[r.algebra, c.name, c.passed, c.detail] for c in r.checks]
    body = reports[0].to_json() if len(reports) == 1 else \
        {"schema": SCHEMA_VERSION, "reports": [r.to_json() for r in reports]}
    failed = [(r.algebra, r.first_failure()) for r in reports if not r.passed]
    for alg, c in failed:
        print(f"{alg}: {c.name} failed: {c.detail}", file=sys.stderr)
    return not failed, body, rows


def cmd_irrep(cfg: RunConfig, args):
    p = cfg.params
    label = repkit.parse_label(normalize_label(args.label), p)
    rep = repkit.sl2r_irrep(label, cfg.truncation("irrep"), p)
    res = repkit.sl2r_relation_residuals(rep, p)
    res["casimir"] = repkit.casimir_residual(rep, p)
    passed = max(res.values()) <= cfg.tol
    body = {"schema": SCHEMA_VERSION, "label": label.describe(), "q": p.q, "a": p.af,
            "casimir": float(label.casimir), "casimir_interior": harmonic.casimir_scalar(rep, p),
            "residuals": res, "tol": cfg.tol, "passed": passed, "representation": rep.to_json()}
    rows = [["generator", "row", "col", "re", "im"]]
    for name, m in rep.mats.items():
        for (i, j), v in np.ndenumerate(m):
            v = complex(v)
            if v != 0:
                rows.append([name, i, j, repr(v.real), repr(v.imag)])
    return passed, body, rows


def cmd_branch(cfg: RunConfig, args):
    p = cfg.params
    label = repkit.parse_label(normalize_label(args.label), p)
    rep = harmonic.branch(label, cfg.truncation("branch"), p)
    expected = harmonic.expected_branching(label)
    passed = rep.conclusive and rep.components == expected
    body = rep.to_json()
    body.update(expected=expected, passed=passed)
    rows = [["component", "multiplicity", "expected"]]
    for k in sorted(set(rep.components) | set(expected)):
        rows.append([k, rep.components.get(k, 0), expected.get(k, 0)])
    return passed, body, rows


def cmd_induce(cfg: RunConfig, args):
    p = cfg.params
    z = complex(math.cos(args.theta), -math.sin(args.theta))
    rep = harmonic.principal_series(z, cfg.truncation("induce"), p)
    expected = 2 * math.sin(args.theta)
    res = repkit.sl2r_relation_residuals(rep, p)
    res["casimir"] = repkit.casimir_residual(rep, p, expected)
    blocks = harmonic.parity_blocks(rep)
    passed = max(res.values()) <= cfg.tol and blocks["decoupled"]
    body = {"schema": SCHEMA_VERSION, "theta": args.theta, "z": [z.real, z.imag], "q": p.q, "a": p.af,
            "casimir": expected, "casimir_interior": harmonic.casimir_scalar(rep, p), "residuals": res,
            "components": harmonic.principal_series_components(rep, p),
            "ib_even": blocks["even"].tolist(), "ib_odd": blocks["odd"].tolist(),
            "cross_coupling": blocks["cross_coupling"], "tol": cfg.tol, "passed": passed}
    rows = [["lattice", "c", "ib"]]
    for k, c, b in zip(rep.meta["offsets"], rep.basis, np.real(np.diag(rep["iB"]))):
        rows.append(["even" if k % 2 == 0 else "odd", c, b])
    return passed, body, rows


def cmd_measure(cfg: RunConfig, args):
    p = cfg.params
    c = p.af + args.n if args.n is not None else args.c
    sign = 1 if args.sign == "+" else -1
    mu = spectral.spectral_measure(sign, c, p, mass_tol=math.inf)
    n = cfg.truncation("measure")
    j = spectral.twisted_casimir_jacobi(sign, c, n, p)
    outl = spectral.outliers(j)
    pred = mu.atoms
    checks = {"mass": abs(mu.mass - 1.0)}
    if n >= 10:
        checks["moments"] = float(np.max(spectral.moment_check(mu, j, 8)))
    if len(outl) != len(pred):
        checks["atom_count"] = float(abs(len(outl) - len(pred)))
    elif pred:
        locs = np.array([at.loc for at, _ in pred])
        order = np.argsort(locs)
        checks["atom_locations"] = float(np.max(np.abs(np.sort(outl) - locs[order])))
        emp = spectral.vacuum_atom_weights(j, locs)
        checks["atom_weights"] = float(max(abs(e - w) for e, (_, w) in zip(emp, pred)))
    tols = {"mass": cfg.tol, "moments": max(cfg.tol, 1e-8), "atom_count": 0.0,
            "atom_locations": max(cfg.tol, 1e-8), "atom_weights": max(cfg.tol, 1e-8)}
    passed = all(v <= tols[k] for k, v in checks.items())
    body = mu.to_json(args.samples)
    body.update(truncation=n, outliers=outl.tolist(), checks=checks, passed=passed)
    lam = np.linspace(-2, 2, args.samples + 2)[1:-1]
    rows = [["lambda", "g"]] + [[repr(float(x)), repr(float(g))] for x, g in zip(lam, mu.density(lam))]
    return passed, body, rows


def _channel(args):
    n, sign, trunc, q, a = args
    return harmonic.regular_channel(n, sign, trunc, QParams(q, a)).to_json()


def cmd_regular(cfg: RunConfig, args):
    ns = list(args.sweep) if args.sweep is not None else [args.n]
    jobs = [(n, s, cfg.truncation("regular"), cfg.q, cfg.a) for n in ns for s in _sign_list(args.sign)]
    if len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as ex:
            reports = list(ex.map(_channel, jobs))
    else:
        reports = [_channel(jobs[0])]
    passed = all(r["passed"] for r in reports)
    body = {"schema": SCHEMA_VERSION, "q": cfg.q, "a": float(cfg.a), "channels": reports, "passed": passed}
    rows = [["n", "sign", "discrete", "continuous", "continuous_mass", "passed"]]
    for r in reports:
        labels = " ".join(o["label"] or "?" for o in r["outliers"])
        rows.append([r["n"], r["sign"], labels, r["continuous_label"], r["continuous_mass"], r["passed"]])
        for note in r["notes"]:
            print(f"n={r['n']} {r['sign']}: {note}", file=sys.stderr)
    return passed, body, rows


COMMANDS = {
    "verify-algebra": cmd_verify_algebra, "irrep": cmd_irrep, "branch": cmd_branch,
    "induce": cmd_induce, "measure": cmd_measure, "regular": cmd_regular,
}


# output ------------------------------------------------------------------------------

def _json_default(x):
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    raise TypeError(f"not serializable: {type(x).__name__}")


def render(body: dict, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(body, indent=2, default=_json_default) + "\n"
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on malformed flags
    try:
        cfg = RunConfig(args.q, args.a, args.trunc, args.tol, args.format, args.out)
        passed, body, rows = COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        parser.error(str(exc))
    except repkit.InadmissibleLabel as exc:
        print(f"inadmissible label: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (spectral.VerificationError, repkit.TruncationOverflow) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = render(body, rows, cfg.format)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
