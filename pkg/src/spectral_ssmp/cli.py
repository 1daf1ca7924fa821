"""Command-line front end.

Subcommands: bgamma, multiplier, classify, eigenfn, evolve, simulate,
generator-check.  Exponents and Bernstein families are passed as inline
JSON (see spectral_ssmp.families for the schema); outputs are CSV with a
header row, 17 significant digits and LF line endings, or flat JSON for
classification reports and simulation estimates.

Exit codes: 0 success (any definite classification verdict), 2 validation
error, 3 Inconclusive classification, 4 numerical-convergence failure.
All errors are also emitted as one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import errors
from .bernstein import BernsteinGammaEvaluator
from .eigenfunctions import (
    SeriesEigenfunction,
    eigenfunction_fft,
    eigenfunction_series,
    wright_eigenfunction,
)
from .exponents import Exponent
from .families import bernstein_from_json, exponent_from_json
from .lamperti import SimConfig, mc_expectation
from .semigroup import EvolutionPlan, evolve, generator_ido, generator_pdo
from .spectrum import classify
from .transform import (
    GridFunction,
    GridSpec,
    gaussian_fixture,
    h_fixture,
    multiplier_h,
    multiplier_lambda,
)

_VALIDATION_ERRORS = (errors.ValidationError, errors.DomainError,
                      errors.ConfigError, errors.ConditionError,
                      json.JSONDecodeError, KeyError, ValueError)
_NUMERICAL_ERRORS = (errors.ConvergenceError, errors.QuadratureError,
                     errors.BranchError, errors.OverflowGuard,
                     errors.ResolutionError, errors.InterpolationError)


def worker_cap() -> int:
    """Worker count cap from SPECTRAL_SSMP_THREADS (>= 1; default 1).

    The numerical kernels are vectorized in-process; the cap bounds any
    auxiliary pools a caller may attach.
    """
    raw = os.environ.get("SPECTRAL_SSMP_THREADS")
    if raw is None:
        return 1
    try:
        val = int(raw)
    except ValueError:
        raise errors.ValidationError(
            f"SPECTRAL_SSMP_THREADS must be an integer, got {raw!r}")
    if val < 1:
        raise errors.ValidationError("SPECTRAL_SSMP_THREADS must be >= 1")
    return val


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def emit_csv(table, path):
    """Write (header, columns) as UTF-8 CSV, 17 significant digits, LF."""
    header, columns = table
    ncols = len(header)
    if len(columns) != ncols:
        raise errors.ValidationError("header/column mismatch")
    nrows = len(columns[0]) if ncols else 0
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for i in range(nrows):
                fh.write(",".join(_fmt(col[i]) for col in columns) + "\n")
    except OSError as exc:
        raise errors.ValidationError(f"cannot write {path!r}: {exc}")


def _fmt(v):
    if isinstance(v, str):
        return v
    return "%.17g" % float(v)


def _emit_json(obj, path):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(obj, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise errors.ValidationError(f"cannot write {path!r}: {exc}")


def _grid_from_arg(arg):
    if arg is None:
        return GridSpec()
    parts = arg.split(":")
    if len(parts) != 3:
        raise errors.ValidationError("--grid expects xmin:xmax:n")
    return GridSpec(float(parts[0]), float(parts[1]), int(parts[2]))


def _fixture_from_arg(arg, spec):
    kind, _, rest = arg.partition(":")
    if kind == "h":
        eps_s, _, beta_s = rest.partition(":")
        return h_fixture(spec, float(eps_s), float(beta_s))
    if kind == "gauss":
        return gaussian_fixture(spec, float(rest))
    if kind == "csv":
        data = np.genfromtxt(rest, delimiter=",", names=True)
        x = np.asarray(data["x"], dtype=float)
        if x.shape != (spec.n,) or not np.allclose(x, spec.x, atol=0, rtol=0):
            raise errors.ValidationError(
                "csv grid does not match --grid exactly")
        return GridFunction(spec, data["re"] + 1j * data["im"])
    raise errors.ValidationError(
        f"unknown fixture {arg!r}; use h:eps:beta, gauss:a or csv:path")


def _pair_from_args(args):
    obj = json.loads(args.pair)
    if "pair" not in obj:
        obj = {"pair": obj}
    exp = exponent_from_json(obj)
    if exp.pair is None:
        raise errors.ValidationError("a Wiener-Hopf pair is required here")
    return exp.pair


def _quadruplet_from_args(args):
    obj = json.loads(args.quadruplet)
    if "quadruplet" not in obj:
        obj = {"quadruplet": obj}
    exp = exponent_from_json(obj)
    if exp.quadruplet is None:
        raise errors.ValidationError("a quadruplet is required here")
    return exp


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_bgamma(args):
    phi = bernstein_from_json(json.loads(args.phi))
    a = args.a
    xi = np.linspace(-args.xi_max, args.xi_max, args.points)
    ev = BernsteinGammaEvaluator(phi, tol=args.tol_w,
                                 zmax=float(np.hypot(a, args.xi_max)) + 3.0)
    vals = ev.w(a + 1j * xi)
    emit_csv((["xi", "re", "im", "abs"],
              [xi, vals.real, vals.imag, np.abs(vals)]), args.out)
    return 0


def _cmd_multiplier(args):
    pair = _pair_from_args(args)
    spec = _grid_from_arg(args.grid)
    line = (multiplier_h if args.kind == "H" else multiplier_lambda)(
        pair, spec, tol=args.tol_w)
    emit_csv((["xi", "re", "im", "abs"],
              [spec.xi, line.values.real, line.values.imag,
               np.abs(line.values)]), args.out)
    return 0


def _cmd_classify(args):
    pair = _pair_from_args(args)
    spec = _grid_from_arg(args.grid)
    report = classify(pair, spec, xi_max=args.xi_max)
    payload = report.to_dict()
    if args.out:
        _emit_json(payload, args.out)
    print(json.dumps(payload, indent=2, sort_keys=True))
    print()
    rows = [("verdict", report.verdict), ("branch", report.branch),
            ("theta_plus", f"[{report.theta_plus[0]:.6f}, {report.theta_plus[1]:.6f}]"),
            ("theta_minus", f"[{report.theta_minus[0]:.6f}, {report.theta_minus[1]:.6f}]"),
            ("bounded above / below", f"{report.bounded_above} / {report.bounded_below}"),
            ("table rule", report.table_rule_fired or "-")]
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k:<{width}}  {v}")
    return 3 if report.verdict == "Inconclusive" else 0


def _cmd_eigenfn(args):
    pair = _pair_from_args(args)
    spec = _grid_from_arg(args.grid)
    if args.method == "fft":
        J = eigenfunction_fft(pair, spec, tol=args.tol_w)
        emit_csv((["x", "J"], [spec.x, J.values.real]), args.out)
        return 0
    if args.method == "series":
        drift_plus = (pair.phi_plus.drift == 1.0 and pair.phi_plus.phi0 == 0.0
                      and pair.phi_plus.measure is None)
        if not drift_plus:
            raise errors.ValidationError(
                "the series route needs a spectrally negative pair "
                "(plus factor = pure unit drift)")
        s = SeriesEigenfunction(pair.phi_minus)
        vals = np.array([eigenfunction_series(s, float(x), tol=1e-8)
                         for x in spec.x])
        emit_csv((["x", "J"], [spec.x, vals]), args.out)
        return 0
    # method == "wright": gamma-ratio pairs only
    mp, mm = pair.phi_plus.measure, pair.phi_minus.measure
    ok = (getattr(mp, "kind", None) == "gamma-ratio-plus"
          and getattr(mm, "kind", None) == "gamma-ratio-minus")
    if not ok:
        raise errors.ValidationError(
            "the wright route needs a gamma-ratio pair")
    at = mp.params[0]
    al, rho = mm.params
    vals = np.array([wright_eigenfunction(at, al, rho, float(x), args.variant)
                     for x in spec.x])
    emit_csv((["x", "J"], [spec.x, vals]), args.out)
    return 0


def _cmd_evolve(args):
    if not args.pair:
        raise errors.ValidationError(
            "evolution runs through the Wiener-Hopf diagonalization; "
            "pass --pair (a bare --quadruplet cannot be factorized here)")
    pair = _pair_from_args(args)
    spec = _grid_from_arg(args.grid)
    f = _fixture_from_arg(args.f, spec)
    plan = EvolutionPlan(pair, spec, tol=args.tol_w)
    out = evolve(plan, args.t, f, force=args.force)
    emit_csv((["x", "re", "im"],
              [spec.x, out.values.real, out.values.imag]), args.out)
    return 0


def _cmd_simulate(args):
    exp = _quadruplet_from_args(args)
    cfg = SimConfig(dt=args.dt, jump_eps=args.jump_eps, n_paths=args.paths,
                    seed=args.seed, t_max=args.t_max)
    spec = GridSpec()
    if args.f == "identity":
        fn = lambda r: r
    else:
        fx = _fixture_from_arg(args.f, spec)
        fn = lambda r: np.interp(np.log(r), spec.x, fx.values.real,
                                 left=0.0, right=0.0)
    est = mc_expectation(exp, fn, args.x, args.t, cfg)
    payload = {"mean": est.mean, "stderr": est.stderr,
               "n": est.n_effective, "absorbed_fraction": est.absorbed_fraction}
    if args.out:
        _emit_json(payload, args.out)
    print(json.dumps(payload, sort_keys=True))
    return 0


def _cmd_generator_check(args):
    exp = _quadruplet_from_args(args)
    spec = _grid_from_arg(args.grid)
    fixtures = [("gauss_0", lambda x: np.exp(-x ** 2)),
                ("gauss_2", lambda x: np.exp(-(x - 2.0) ** 2)),
                ("h_1_1", lambda x: np.exp(-1.5 * x - np.exp(-x)))]
    names, sups = [], []
    import warnings as _w
    for name, fn in fixtures:
        f = GridFunction(spec, fn(spec.x))
        with _w.catch_warnings():
            _w.simplefilter("ignore", errors.DomainWarning)
            a_pdo = generator_pdo(exp, f)
            a_ido = generator_ido(exp.quadruplet, fn, spec)
        interior = slice(2, -2)
        names.append(name)
        sups.append(float(np.max(np.abs(a_pdo.values[interior]
                                        - a_ido.values[interior]))))
    emit_csv((["fixture", "sup_error"], [names, sups]), args.out)
    for n, s in zip(names, sups):
        print(f"{n}: {s:.3e}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="spectral-ssmp",
        description="Spectral computations for self-similar Markov "
                    "semigroups: Bernstein-gamma functions, Wiener-Hopf "
                    "multipliers, spectrum classification, eigenfunctions, "
                    "semigroup evolution and a Monte Carlo oracle.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, grid=True, tol=True, out=True):
        if grid:
            sp.add_argument("--grid", default=None,
                            help="xmin:xmax:n (default -20:40:4096)")
        if tol:
            sp.add_argument("--tol-w", type=float, default=1e-8,
                            help="Bernstein-gamma tolerance (default 1e-8)")
        if out:
            sp.add_argument("--out", required=True, help="output path")

    sp = sub.add_parser("bgamma", help="Bernstein-gamma W on a vertical line")
    sp.add_argument("--phi", required=True, help="Bernstein family JSON")
    sp.add_argument("--a", type=float, default=0.5, help="Re of the line")
    sp.add_argument("--xi-max", type=float, default=30.0)
    sp.add_argument("--points", type=int, default=241)
    add_common(sp, grid=False)
    sp.set_defaults(fn=_cmd_bgamma)

    sp = sub.add_parser("multiplier", help="diagonalizing multiplier on a grid")
    sp.add_argument("--pair", required=True, help="Wiener-Hopf pair JSON")
    sp.add_argument("--kind", choices=("H", "Lambda"), default="H")
    add_common(sp)
    sp.set_defaults(fn=_cmd_multiplier)

    sp = sub.add_parser("classify", help="spectrum classification report")
    sp.add_argument("--pair", required=True)
    sp.add_argument("--xi-max", type=float, default=200.0)
    sp.add_argument("--grid", default=None)
    sp.add_argument("--out", default=None, help="optional JSON report path")
    sp.set_defaults(fn=_cmd_classify)

    sp = sub.add_parser("eigenfn", help="eigenfunction by series/wright/fft")
    sp.add_argument("--pair", required=True)
    sp.add_argument("--method", choices=("series", "wright", "fft"),
                    required=True)
    sp.add_argument("--variant", choices=("statement", "proof"),
                    default="statement")
    add_common(sp)
    sp.set_defaults(fn=_cmd_eigenfn)

    sp = sub.add_parser("evolve", help="semigroup evolution of a fixture")
    sp.add_argument("--pair", default=None)
    sp.add_argument("--quadruplet", default=None)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--f", required=True,
                    help="h:eps:beta | gauss:a | csv:path")
    sp.add_argument("--force", action="store_true",
                    help="override the discrete domain gate")
    add_common(sp)
    sp.set_defaults(fn=_cmd_evolve)

    sp = sub.add_parser("simulate", help="Monte Carlo oracle estimate")
    sp.add_argument("--quadruplet", required=True)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--f", default="identity",
                    help="identity | h:eps:beta | gauss:a (log-composed)")
    sp.add_argument("--paths", type=int, default=10000)
    sp.add_argument("--dt", type=float, default=1e-3)
    sp.add_argument("--jump-eps", type=float, default=1e-3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--t-max", type=float, default=64.0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=_cmd_simulate)

    sp = sub.add_parser("generator-check",
                        help="PDO vs IDO generator residual table")
    sp.add_argument("--quadruplet", required=True)
    add_common(sp, tol=False)
    sp.set_defaults(fn=_cmd_generator_check)
    return p


def run(argv=None) -> int:
    """Parse, dispatch and map failures to documented exit codes."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        worker_cap()
        return args.fn(args)
    except _NUMERICAL_ERRORS as exc:
        _err(exc)
        return 4
    except _VALIDATION_ERRORS as exc:
        _err(exc)
        return 2


def _err(exc):
    sys.stderr.write(json.dumps(
        {"error": type(exc).__name__, "message": str(exc)}) + "\n")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
