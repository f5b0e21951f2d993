"""Command-line front end.

Every command writes CSV (default) or JSON to stdout or ``--output``.
Exit status: 0 success, 1 usage error, 2 domain error, 3 convergence
failure; errors also print one JSON line to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict
from typing import Sequence

import numpy as np

from . import __version__
from ._tolerances import TOL
from .decomposition import decomposition_measure
from .errors import ConvergenceError, DomainError
from .gnbd import GnbdParams, critical_intensity, mandel, mgf, moments, pmf
from .idd import compound_poisson_spec, intensity, sample_compound_poisson, simulate_path
from .levy import lk_representation, resolve_nb_constant, tau_star
from .verification import run_verification

COMMANDS = ("pmf", "mgf", "moments", "mandel", "decompose", "levy", "idd", "sample", "path", "verify")
SEEDED = ("sample", "path")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _json_default(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, complex):
        return [x.real, x.imag]
    raise TypeError(f"not serializable: {type(x)}")


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def _parse_range(text: str) -> range:
    try:
        lo, hi = text.split(":")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise UsageError(f"range must look like LO:HI, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperbolic-gnbd", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(name: str, help: str, tau: bool = True, m: bool = True):
        p = sub.add_parser(name, help=help)
        p.add_argument("--nu", type=float, required=True)
        if tau:
            p.add_argument("--tau", type=float, required=name not in ("mandel",))
        if m:
            p.add_argument("--m", type=int, required=name not in ("mandel",), default=None)
        p.add_argument("--R", type=float, default=1.0)
        p.add_argument("--format", choices=("csv", "json"), default="json" if name == "verify" else "csv")
        p.add_argument("--output", default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--tol-measure", type=float, default=TOL.measure_truncation)
        return p

    p = common("pmf", "GNBD probabilities")
    p.add_argument("--j-max", type=int, default=None)
    p = common("mgf", "generating function on the closed unit disc")
    p.add_argument("--xi", action="append", required=True, help="complex point, repeatable")
    common("moments", "closed-form mean and variance")
    p = common("mandel", "Mandel parameter, or critical intensities over a range of levels")
    p.add_argument("--m-range", default=None)
    common("decompose", "finite signed measure of the atomic decomposition")
    common("levy", "Levy-Khintchine representation (signed measure)")
    common("idd", "intensity and jump law of the infinitely divisible law")
    p = common("sample", "compound Poisson draws")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--size", type=int, default=1)
    p.add_argument("--stream", type=int, default=0)
    p = common("path", "Levy path on [0, horizon]")
    p.add_argument("--horizon", type=float, default=1.0)
    p.add_argument("--n-steps", type=int, default=10)
    p.add_argument("--stream", type=int, default=0)
    common("verify", "run the identity suite")
    return parser


def _meta(args) -> dict:
    params = {k: getattr(args, k) for k in ("nu", "tau", "m", "R") if getattr(args, k, None) is not None}
    return {"command": args.command, "params": params, "tolerances": asdict(TOL), "tol_measure": args.tol_measure, "version": __version__}


def _params(args) -> GnbdParams:
    return GnbdParams(nu=args.nu, tau=args.tau, m=args.m, R=args.R)


def _render(args, header, rows, extra: dict | None = None) -> str:
    if args.format == "csv":
        return _csv(header, rows)
    records = [dict(zip(header, row)) for row in rows]
    doc = {"meta": _meta(args), **(extra or {}), "rows": records}
    return json.dumps(doc, default=_json_default, indent=2, sort_keys=False) + "\n"


def _measure_rows(measure):
    return [(k, w) for k, w in measure.atoms.items()]


def execute(args) -> str:
    cmd = args.command
    if args.seed is not None and cmd not in SEEDED:
        raise UsageError(f"--seed is only accepted by {', '.join(SEEDED)}")
    if cmd in SEEDED and args.seed is None:
        raise UsageError(f"{cmd} requires --seed")

    if cmd == "pmf":
        res = pmf(_params(args), args.j_max)
        return _render(args, ("j", "p_j"), zip(res.support, res.weights), {"tail_bound": res.tail_bound})
    if cmd == "mgf":
        params = _params(args)
        rows = []
        for text in args.xi:
            xi = _parse_complex(text)
            g = complex(mgf(params, xi))
            rows.append((xi.real, xi.imag, g.real, g.imag))
        return _render(args, ("xi_re", "xi_im", "g_re", "g_im"), rows)
    if cmd == "moments":
        mean, var = moments(_params(args))
        return _render(args, ("mean", "variance"), [(mean, var)])
    if cmd == "mandel":
        if args.m_range is not None:
            if args.R != 1:
                raise UsageError("--m-range reports critical intensities for R = 1 only")
            rows = []
            for m in _parse_range(args.m_range):
                if m > math.floor(args.nu - 0.5) or m < 0:
                    raise DomainError(f"m={m} is not a Landau level for nu={args.nu}")
                t = critical_intensity(args.nu, m)
                rows.append((m, t, math.sqrt(t)))
            return _render(args, ("m", "tau_crit", "rho"), rows)
        if args.tau is None or args.m is None:
            raise UsageError("mandel needs --tau and --m, or --m-range")
        rep = mandel(_params(args))
        return _render(
            args,
            ("mean", "variance", "q", "tau_crit", "rho", "regime"),
            [(rep.mean, rep.variance, rep.q, rep.tau_crit, rep.rho, rep.regime.value)],
        )
    if cmd == "decompose":
        _params(args)
        measure = decomposition_measure(args.nu * args.R**2, args.m, args.tau)
        return _render(args, ("k", "weight"), _measure_rows(measure))
    if cmd == "levy":
        params = _params(args)
        rep = lk_representation(params, args.tol_measure)
        extra = {"drift": rep.drift, "truncation_error": rep.truncation_error}
        if params.m >= 1:
            extra["tau_star"] = tau_star(params.nu, params.m)
        extra["nb_measure_constant"] = resolve_nb_constant(params.nu, params.tau)["constant"]
        return _render(args, ("x", "weight"), _measure_rows(rep.measure), extra)
    if cmd == "idd":
        params = _params(args)
        spec = compound_poisson_spec(params.nu, params.tau, params.m, args.tol_measure)
        extra = {
            "intensity": spec.intensity,
            "intensity_closed_form": intensity(params.nu, params.tau, params.m),
            "intensity_without_shape_factor": intensity(params.nu, params.tau, params.m, constant=1.0),
            "drift": spec.drift,
        }
        return _render(args, ("x", "probability"), _measure_rows(spec.jump_pmf), extra)
    if cmd == "sample":
        params = _params(args)
        spec = compound_poisson_spec(params.nu, params.tau, params.m, args.tol_measure)
        values = np.atleast_1d(sample_compound_poisson(spec, args.t, args.seed, size=args.size, stream=args.stream))
        return _render(args, ("index", "value"), enumerate(values.tolist()), {"seed": args.seed, "stream": args.stream})
    if cmd == "path":
        params = _params(args)
        spec = compound_poisson_spec(params.nu, params.tau, params.m, args.tol_measure)
        path = simulate_path(spec, args.horizon, args.n_steps, args.seed, stream=args.stream)
        if args.format == "csv":
            return path.to_csv()
        rows = zip(path.time, path.jumps_sum, path.drift_accrual, path.value)
        return _render(args, ("time", "jumps_sum", "drift_accrual", "value"), rows, {"seed": args.seed})
    if cmd == "verify":
        if args.R != 1:
            raise UsageError("verify runs at R = 1")
        report = run_verification(args.nu, args.m, args.tau, args.tol_measure)
        if args.format == "csv":
            rows = [(c["name"], c["defect"], c["tolerance"], c["passed"]) for c in report["checks"]]
            return _csv(("check", "defect", "tolerance", "passed"), rows)
        return json.dumps({"meta": _meta(args), **report}, default=_json_default, indent=2) + "\n"
    raise UsageError(f"unknown command {cmd!r}")


def _error(kind: str, message: str, **extra) -> None:
    print(json.dumps({"error": kind, "message": message, **extra}, default=_json_default), file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text = execute(args)
    except UsageError as exc:
        _error("usage", str(exc))
        return 1
    except DomainError as exc:
        _error("domain", str(exc))
        return 2
    except ConvergenceError as exc:
        _error("convergence", str(exc), residual=exc.residual)
        return 3
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
