"""Command-line front end: verification suites and plot-ready CSV output.

Exit codes: 0 all checks pass, 1 a check failed (or the model is unsuitable),
2 the configuration could not be parsed.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import automorphy, kernels, spectral, theta
from .errors import InconsistentCocycle, MixedLandauError, NotAffine
from .lattice import Lattice
from .model import ConjugateAffine, GroupElement, InnerAffine, ModelParams, random_group_element
from .wick import random_wick

SCHEMA_VERSION = 1
DEFAULT_SEED = 42

DEFAULT_TOLERANCES = {
    "susy": 1e-9,
    "landau_levels": 1e-9,
    "intertwine": 1e-9,
    "chain_rule": 1e-12,
    "multiplier_independence": 1e-10,
    "pseudo_character": 1e-12,
    "kernel_idempotence": 1e-6,
    "functional_equation": 1e-8,
}

DEFAULT_CONFIG = {
    "model": {"nu": np.pi - 1, "mu": 1.0,
              "pair": {"kind": "inner", "alpha": [1.0, 0.0], "beta": [0.5, 0.25]}},
    "lattice": {"w1": [1.0, 0.0], "w2": [0.0, 1.0]},
    "tolerances": {},
    "output_path": "verify_report.json",
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    model: ModelParams
    lattice: Lattice | None = None
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output_path: str | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("configuration must be a JSON object")
        unknown = set(data) - {"model", "lattice", "tolerances", "output_path"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            model = ModelParams.from_dict(data["model"])
            lat = None
            if data.get("lattice") is not None:
                spec = data["lattice"]
                extra = set(spec) - {"w1", "w2"}
                if extra:
                    raise ConfigError(f"unknown lattice keys: {sorted(extra)}")
                lat = Lattice(complex(*spec["w1"]), complex(*spec["w2"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        tols = dict(DEFAULT_TOLERANCES)
        extra = set(data.get("tolerances", {})) - set(DEFAULT_TOLERANCES)
        if extra:
            raise ConfigError(f"unknown tolerance names: {sorted(extra)}")
        tols.update({k: float(v) for k, v in data.get("tolerances", {}).items()})
        return cls(model, lat, tols, data.get("output_path"))

    def to_dict(self) -> dict:
        out = {"model": self.model.to_dict(), "tolerances": self.tolerances,
               "output_path": self.output_path}
        if self.lattice is not None:
            lat = self.lattice
            out["lattice"] = {"w1": [lat.w1.real, lat.w1.imag], "w2": [lat.w2.real, lat.w2.imag]}
        return out


def load_config(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig.from_dict(json.loads(json.dumps(DEFAULT_CONFIG)))
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    return RunConfig.from_dict(data)


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(x: float) -> str:
    return repr(float(x))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MLL_THREADS", "1")))
    except ValueError:
        return 1


# -- verification suites --------------------------------------------------

def _suite_susy(cfg, rng):
    p = cfg.model
    worst = max(max(spectral.check_susy(p, random_wick(rng, 6))) for _ in range(20))
    return worst, "20 random Wick functions of degree <= 6"


def _suite_landau(cfg, rng):
    p = cfg.model
    B = p.B
    worst = max(spectral.check_eigen(p, spectral.eigenfunction(p, m, n), B * (2 * m + 1))
                for m in range(7) for n in range(7))
    return worst, "L psi_{m,n} = B(2m+1) psi_{m,n}, m, n <= 6"


def _suite_intertwine(cfg, rng):
    worst = max(spectral.check_intertwine(cfg.model, random_wick(rng, 6)) for _ in range(20))
    return worst, "20 random Wick functions"


def _suite_chain(cfg, rng):
    p = cfg.model
    worst = 0.0
    for _ in range(200):
        g, h = random_group_element(rng), random_group_element(rng)
        z = complex(*rng.normal(size=2))
        worst = max(worst, automorphy.check_chain_rule(p, g, h, z))
    return worst, "200 random (g, g', z)"


def _suite_multiplier(cfg, rng):
    p = cfg.model
    zs = rng.normal(size=10) + 1j * rng.normal(size=10)
    gammas = [complex(*rng.normal(size=2)) for _ in range(20)]
    worst = max(automorphy.check_multiplier_independence(p, g, zs) for g in gammas)
    return worst, "20 translations x 10 sample points"


def _suite_kernel(cfg, rng):
    p = cfg.model
    z, u = complex(*rng.normal(scale=0.5, size=2)), complex(*rng.normal(scale=0.5, size=2))
    worst = max(kernels.kernel_idempotence_residual(p, k, j, z, u)
                for k in range(3) for j in range(3))
    return worst, "k, j <= 2 at 160^2 trapezoid nodes"


def _lattice_checks(cfg, rng):
    p, lat = cfg.model, cfg.lattice
    report = automorphy.nontriviality_test(p, lat)
    rows = [("nontriviality", 0.0 if report.passed else report.worst_deviation,
             automorphy.INTEGRALITY_TOL, report.passed, report.summary())]
    if not report.passed:
        msg = "skipped: cocycle integrality fails, the mixed form space is trivial"
        for name in ("pseudo_character", "functional_equation", "dimension"):
            rows.append((name, float("nan"), cfg.tolerances.get(name, 0.0), False, msg))
        return rows
    dev = automorphy.pseudo_character_check(p, lat)
    tol = cfg.tolerances["pseudo_character"]
    rows.append(("pseudo_character", dev, tol, dev <= tol, "word ball of radius 3"))
    F = theta.periodize(p, lat, spectral.eigenfunction(p, 0, 0), eps=1e-10)
    zs = rng.uniform(-1, 1, size=20) + 1j * rng.uniform(-1, 1, size=20)
    gammas = [lat.point(*rng.integers(-2, 3, size=2)) for _ in range(20)]
    res = max(automorphy.functional_eq_residual(p, F, g, z) for g, z in zip(gammas, zs))
    tol = cfg.tolerances["functional_equation"]
    rows.append(("functional_equation", res, tol, res <= tol, "20 random (gamma, z)"))
    est = theta.dimension_estimate(p, lat, k=0)
    rows.append(("dimension", float(abs(est.rank - est.formula)), 1e-6, est.passed, est.summary()))
    return rows


SUITES = [
    ("susy", _suite_susy),
    ("landau_levels", _suite_landau),
    ("intertwine", _suite_intertwine),
    ("chain_rule", _suite_chain),
    ("multiplier_independence", _suite_multiplier),
    ("kernel_idempotence", _suite_kernel),
]


def run_verify(cfg: RunConfig, seed: int = DEFAULT_SEED) -> dict:
    def run(idx_suite):
        idx, (name, fn) = idx_suite
        rng = np.random.default_rng([seed, idx])
        try:
            value, detail = fn(cfg, rng)
            tol = cfg.tolerances[name]
            return [(name, float(value), tol, bool(value <= tol), detail)]
        except MixedLandauError as exc:
            return [(name, float("nan"), cfg.tolerances[name], False, f"error: {exc}")]

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(run, enumerate(SUITES)))
    rows = [r for block in results for r in block]
    if cfg.lattice is not None:
        try:
            rows += _lattice_checks(cfg, np.random.default_rng([seed, len(SUITES)]))
        except MixedLandauError as exc:
            rows.append(("lattice", float("nan"), 0.0, False, f"error: {exc}"))
    checks = [{"name": n, "value": v if np.isfinite(v) else None, "tol": t, "passed": ok,
               "detail": d} for n, v, t, ok, d in rows]
    try:
        sign_note = kernels.gaussian_sign_report(cfg.model)
    except MixedLandauError as exc:
        sign_note = {"error": str(exc)}
    return {
        "schema": SCHEMA_VERSION,
        "seed": seed,
        "config": cfg.to_dict(),
        "checks": checks,
        "kernel_gaussian_sign": {k: v["integrable"] for k, v in sign_note.items()}
        if "error" not in sign_note else sign_note,
        "passed": all(c["passed"] for c in checks),
    }


def cmd_verify(args) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run_verify(cfg, args.seed)
    except MixedLandauError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for c in report["checks"]:
        val = "nan" if c["value"] is None else f"{c['value']:.3e}"
        print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']:<24} {val:>10}  (tol {c['tol']:.0e})  {c['detail']}")
    print("kernel Gaussian sign, integrable:", report["kernel_gaussian_sign"])
    out = args.json_out or cfg.output_path
    if out:
        write_atomic(out, json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0 if report["passed"] else 1


# -- data commands ----------------------------------------------------------

def kernel_grid_csv(p: ModelParams, k: int, z0: complex, half_width: float, n: int) -> str:
    xs = z0.real + np.linspace(-half_width, half_width, n)
    ys = z0.imag + np.linspace(-half_width, half_width, n)
    buf = io.StringIO()
    buf.write("x,y,re,im,abs\n")
    for y in ys:
        vals = kernels.kernel_eval(p, k, z0, xs + 1j * y)
        for x, v in zip(xs, vals):
            buf.write(",".join(_fmt(t) for t in (x, y, v.real, v.imag, abs(v))) + "\n")
    return buf.getvalue()


def poly_table_csv(B: float, mmax: int, nmax: int) -> str:
    buf = io.StringIO()
    buf.write("m,n,term_m,term_n,coeff_re,coeff_im\n")
    for m in range(mmax + 1):
        for n in range(nmax + 1):
            H = spectral.hermite(B, m, n)
            for (a, b), c in sorted(H.coeffs.items()):
                buf.write(f"{m},{n},{a},{b},{_fmt(c.real)},{_fmt(c.imag)}\n")
    return buf.getvalue()


def _emit(text: str, output: str | None) -> None:
    if output:
        write_atomic(output, text)
    else:
        sys.stdout.write(text)


def _parse_complex(text: str) -> complex:
    parts = [float(t) for t in text.split(",")]
    if len(parts) == 1:
        return complex(parts[0], 0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")
    return complex(*parts)


def cmd_kernel_grid(args) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        text = kernel_grid_csv(cfg.model, args.k, args.z0, args.box, args.n)
    except NotAffine as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(text, args.output)
    return 0


def cmd_poly_table(args) -> int:
    if args.B <= 0:
        print("error: B must be positive", file=sys.stderr)
        return 1
    _emit(poly_table_csv(args.B, args.mmax, args.nmax), args.output)
    return 0


def _model_from_args(args) -> ModelParams:
    pair_cls = InnerAffine if args.kind == "inner" else ConjugateAffine
    return ModelParams(args.nu, args.mu, pair_cls(GroupElement(args.alpha, args.beta)))


def cmd_dimension(args) -> int:
    try:
        p = _model_from_args(args)
        lat = Lattice.from_list(args.lattice.split(","))
    except (ValueError, MixedLandauError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    report = automorphy.nontriviality_test(p, lat)
    if not report.passed:
        print("refused: the cocycle phase/pi is not integral on the lattice, so the "
              "space of mixed automorphic forms is trivial")
        print("  " + report.summary())
        return 1
    est = theta.dimension_estimate(p, lat, k=args.k, n_seeds=args.n_seeds,
                                   grid_points=args.grid, svd_tol=args.svd_tol)
    print(est.summary())
    print("singular values:", " ".join(f"{s:.3e}" for s in est.singular_values))
    print(f"threshold {est.threshold:.3e}; tail below threshold:",
          " ".join(f"{s:.3e}" for s in est.singular_values[est.rank:]))
    return 0 if est.passed else 1


def cmd_periodize_check(args) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    lat = cfg.lattice or Lattice.square()
    p = cfg.model
    try:
        F = theta.periodize(p, lat, spectral.eigenfunction(p, args.m, args.n), eps=args.eps)
    except InconsistentCocycle as exc:
        print(f"refused: {exc}")
        return 1
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(args.samples):
        z = complex(*rng.uniform(-1, 1, size=2))
        gamma = lat.point(*rng.integers(-2, 3, size=2))
        worst = max(worst, automorphy.functional_eq_residual(p, F, gamma, z))
    tol = cfg.tolerances["functional_equation"]
    ok = worst <= tol
    print(f"{'PASS' if ok else 'FAIL'}  functional equation residual {worst:.3e} "
          f"(tol {tol:.0e}) over {args.samples} samples, truncation radius {F.radius}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixedlandau", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run every verification suite")
    p.add_argument("--config", help="JSON run configuration (default: built-in)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json-out", help="report path (overrides output_path)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kernel-grid", help="CSV of w -> K_k(z0, w) over a box")
    p.add_argument("--config")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--z0", type=_parse_complex, default=0j)
    p.add_argument("--box", type=float, default=2.0, help="half-width of the box")
    p.add_argument("--n", type=int, default=81, help="points per axis")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_kernel_grid)

    p = sub.add_parser("poly-table", help="CSV of complex Hermite polynomial coefficients")
    p.add_argument("--B", type=float, default=1.0)
    p.add_argument("--mmax", type=int, default=3)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_poly_table)

    p = sub.add_parser("dimension", help="compare the eigenspace dimension formula to a Gram rank")
    p.add_argument("--lattice", default="1,0,0,1", help="w1_re,w1_im,w2_re,w2_im")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--alpha", type=_parse_complex, default=1 + 0j)
    p.add_argument("--beta", type=_parse_complex, default=0j)
    p.add_argument("--kind", choices=("inner", "conjugate"), default="inner")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--n-seeds", type=int, default=None)
    p.add_argument("--grid", type=int, default=48)
    p.add_argument("--svd-tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("periodize-check", help="functional equation of a periodized eigenfunction")
    p.add_argument("--config")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--eps", type=float, default=1e-10)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_periodize_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
