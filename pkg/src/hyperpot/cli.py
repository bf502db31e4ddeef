"""Command-line entry point ``hyperpot``.

Exit codes: 0 success, 1 domain error (JSON error object on stderr),
2 usage error.  Exact rationals are written as ``"p/q"`` strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .geometry import GeometryError, is_strictly_hyperbolic, sample_hyperbolicity_domain
from .lattice import (
    GeneratorSet,
    Lattice,
    LatticeError,
    LinearForm,
    build_D_tilde,
    build_model_hyperbolic,
    build_plane_curve_model,
    orbit,
    probe_completely_infinite,
    value_spectrum,
)
from .milnor import MilnorError, rank_H
from .poly import MultiPoly, PolyError, as_fraction
from .potential import (
    PotentialError,
    QuadConfig,
    SurfaceChargeSpec,
    arnold_charge,
    attraction_force,
    potential,
    ray_scan,
)
from .verify import SUITES, run_suite

RAY_HEADER = ["t", "potential", "force_norm", "zone"]
# options whose values may start with '-' (negative coordinates)
_VALUE_OPTIONS = {"--box", "--point", "--ray", "--start", "--form", "--center", "--schedule"}


class CliError(Exception):
    def __init__(self, message: str, code: str):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    tol: float = 1e-8
    seed: int = 0
    threads: int = 1
    out: str | None = None
    fmt: str = "json"

    def __post_init__(self):
        if self.tol <= 0:
            raise CliError("tolerance must be positive", "bad_config")
        if self.threads < 1:
            raise CliError("threads must be positive", "bad_config")


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise CliError(f"bad number list {text!r}", "bad_argument") from exc


def _fractions(text: str) -> list[Fraction]:
    try:
        return [as_fraction(v) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad number list {text!r}", "bad_argument") from exc


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise CliError(f"bad integer list {text!r}", "bad_argument") from exc


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", "io_error") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON in {path}: {exc.msg}", "bad_json") from exc


def _load_poly(path: str) -> MultiPoly:
    return MultiPoly.from_json(_load_json(path))


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o.numerator) if o.denominator == 1 else f"{o.numerator}/{o.denominator}"
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        try:
            with open(cfg.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(f"cannot write {cfg.out}: {exc.strerror}", "io_error") from exc
    else:
        sys.stdout.write(text)


def _threads(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("HYPERPOT_THREADS")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise CliError("HYPERPOT_THREADS must be an integer", "bad_config") from exc
    return 1


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_milnor(args, cfg):
    _write(cfg, _dumps(rank_H(args.d, args.n).to_json()))


def cmd_hyperbolic(args, cfg):
    F = _load_poly(args.poly)
    rep = is_strictly_hyperbolic(F, _fractions(args.point), args.ndirs, cfg.seed)
    _write(cfg, _dumps(rep.to_json()))


def cmd_zones(args, cfg):
    F = _load_poly(args.poly)
    rows = sample_hyperbolicity_domain(F, _fractions(args.box), args.grid, args.ndirs, cfg.seed, cfg.threads)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"x{i + 1}" for i in range(F.nvars)] + ["k"])
    for p, lab in rows:
        w.writerow([repr(float(c)) for c in p] + [lab.k])
    _write(cfg, buf.getvalue())


def emit_ray_scan(rows, path: str | None = None) -> str:
    """CSV text ``t,potential,force_norm,zone`` ordered by ``t``; written to ``path`` if given."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RAY_HEADER)
    for r in sorted(rows, key=lambda r: r.t):
        w.writerow([repr(r.t), repr(r.potential), repr(r.force_norm), "" if r.zone is None else r.zone])
    text = buf.getvalue()
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text


def _charge(args):
    F = _load_poly(args.poly)
    density = _load_poly(args.density) if args.density else None
    center = _fractions(args.center) if args.center else [Fraction(0)] * F.nvars
    spec = arnold_charge(F, center, density)
    if args.signs:
        signs = tuple(_ints(args.signs))
        if len(signs) != len(spec.patches) or any(v not in (1, -1) for v in signs):
            raise CliError(f"--signs needs {len(spec.patches)} entries of +-1", "bad_argument")
        spec = SurfaceChargeSpec(F, spec.patches, density, signs, spec.reference)
    return spec


def _potential_like(args, cfg, kind: str):
    spec = _charge(args)
    quad = QuadConfig(tol=cfg.tol)
    if args.ray:
        parts = args.ray.split(";")
        if len(parts) != 3:
            raise CliError("--ray needs 'origin;direction;t0,t1,nsamples'", "bad_argument")
        o, v, rng = _floats(parts[0]), _floats(parts[1]), _floats(parts[2])
        if len(rng) != 3:
            raise CliError("--ray range needs t0,t1,nsamples", "bad_argument")
        rows = ray_scan(spec, o, v, rng[0], rng[1], int(rng[2]), quad)
        _write(cfg, emit_ray_scan(rows))
        return
    if not args.point:
        raise CliError("need --point or --ray", "bad_argument")
    x = _floats(args.point)
    res = (potential if kind == "potential" else attraction_force)(spec, x, quad)
    out = {
        "point": x,
        "value": res.value,
        "error_estimate": res.error_estimate,
        "nodes_used": res.nodes_used,
        "converged": res.converged,
        "signs": list(spec.signs),
    }
    _write(cfg, _dumps(out))


def cmd_potential(args, cfg):
    _potential_like(args, cfg, "potential")


def cmd_force(args, cfg):
    _potential_like(args, cfg, "force")


def _generators(args) -> GeneratorSet:
    L = Lattice.from_json(_load_json(args.lattice))
    if args.generators:
        data = _load_json(args.generators)
        if isinstance(data, list):
            data = {"generators": data}
    else:
        data = {"generators": [list(L.basis(i)) for i in range(L.rank)]}
    if args.action:
        data = dict(data, action=args.action)
    return GeneratorSet.from_json(L, data)


def cmd_orbit(args, cfg):
    G = _generators(args)
    rep = orbit(G, _ints(args.start), args.max_size, args.max_depth)
    if args.form:
        value_spectrum(LinearForm(_fractions(args.form)), rep, allow_truncated=args.allow_truncated)
    _write(cfg, _dumps(rep.to_json()))


def cmd_probe(args, cfg):
    G = _generators(args)
    rep = probe_completely_infinite(
        G, _ints(args.start), LinearForm(_fractions(args.form)), _ints(args.schedule), args.max_size
    )
    _write(cfg, _dumps(rep.to_json()))


def cmd_model(args, cfg):
    if args.model == "dtilde":
        G = build_D_tilde(args.m, args.zero_rank, args.parity)
        out = {"lattice": G.lattice.to_json(), **G.to_json()}
    elif args.model == "hyperbolic":
        G, A = build_model_hyperbolic(args.k, args.total, args.parity)
        out = {"lattice": G.lattice.to_json(), **G.to_json(), "reduced_class": list(A), "self_pairing": G.lattice.inner(A, A)}
    else:
        out = build_plane_curve_model(args.d, args.eta, args.k, big=args.big).to_json()
    _write(cfg, _dumps(out))


def cmd_verify(args, cfg):
    checks = run_suite(args.suite)
    out = {"suite": args.suite, "passed": all(c.passed for c in checks), "checks": [c.to_json() for c in checks]}
    _write(cfg, _dumps(out))
    if not out["passed"]:
        raise CliError(f"suite {args.suite} failed", "verify_failed")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperpot", description="Hyperbolic potentials and monodromy lattices")
    p.add_argument("--threads", type=int, default=None, help="cap on internal parallelism (env HYPERPOT_THREADS)")
    p.add_argument("--seed", type=int, default=0)
    # the same globals are accepted after the subcommand; SUPPRESS keeps the top-level values
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("milnor", parents=[common], help="Milnor numbers and vanishing homology rank")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_milnor)

    s = sub.add_parser("hyperbolic", parents=[common], help="strict hyperbolicity test at a point")
    s.add_argument("--poly", required=True)
    s.add_argument("--point", required=True)
    s.add_argument("--ndirs", type=int, default=1000)
    s.add_argument("--out")
    s.set_defaults(func=cmd_hyperbolic)

    s = sub.add_parser("zones", parents=[common], help="zone index on a grid, CSV")
    s.add_argument("--poly", required=True)
    s.add_argument("--box", required=True)
    s.add_argument("--grid", type=int, default=41)
    s.add_argument("--ndirs", type=int, default=64)
    s.add_argument("--out")
    s.set_defaults(func=cmd_zones)

    for name, func in (("potential", cmd_potential), ("force", cmd_force)):
        s = sub.add_parser(name, parents=[common], help=f"{name} of the Arnold-signed standard charge")
        s.add_argument("--poly", required=True)
        s.add_argument("--density")
        s.add_argument("--center", help="point of the hyperbolicity domain (default: origin)")
        s.add_argument("--signs", help="override component signs, innermost first, e.g. '1,1'")
        s.add_argument("--point")
        s.add_argument("--ray", help="'ox,oy[,oz];dx,dy[,dz];t0,t1,nsamples' -> CSV")
        s.add_argument("--tol", type=float, default=1e-8)
        s.add_argument("--out")
        s.set_defaults(func=func)

    for name, func in (("orbit", cmd_orbit), ("probe", cmd_probe)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--lattice", required=True)
        s.add_argument("--generators", help="JSON; default: all basis vectors")
        s.add_argument("--action", choices=["reflect", "transvect"])
        s.add_argument("--start", required=True)
        s.add_argument("--form", required=(name == "probe"))
        s.add_argument("--max-size", type=int, default=100_000)
        s.add_argument("--out")
        if name == "orbit":
            s.add_argument("--max-depth", type=int, default=1_000)
            s.add_argument("--allow-truncated", action="store_true")
        else:
            s.add_argument("--schedule", default="4,8,16,32")
        s.set_defaults(func=func)

    s = sub.add_parser("model", parents=[common], help="named lattice models")
    msub = s.add_subparsers(dest="model", required=True)
    m = msub.add_parser("dtilde", parents=[common])
    m.add_argument("--m", type=int, required=True)
    m.add_argument("--zero-rank", type=int, default=0)
    m.add_argument("--parity", type=int, choices=[1, -1], default=1)
    m = msub.add_parser("hyperbolic", parents=[common])
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--total", type=int, required=True)
    m.add_argument("--parity", type=int, choices=[1, -1], default=1)
    m = msub.add_parser("plane-curve", parents=[common])
    m.add_argument("--d", type=int, required=True)
    m.add_argument("--eta", type=int, default=0)
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--big", action="store_true")
    for m in msub.choices.values():
        m.add_argument("--out")
    s.set_defaults(func=cmd_model)

    s = sub.add_parser("verify", parents=[common], help="run a self-check suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify)
    return p


def _normalize_argv(argv: list[str]) -> list[str]:
    out = []
    it = iter(argv)
    for a in it:
        if a in _VALUE_OPTIONS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


DOMAIN_ERRORS = (CliError, PolyError, GeometryError, PotentialError, LatticeError, MilnorError)


def dispatch(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(
            subcommand=args.command,
            tol=getattr(args, "tol", 1e-8),
            seed=args.seed,
            threads=_threads(args.threads),
            out=getattr(args, "out", None),
            inputs={k: v for k in ("poly", "density", "lattice", "generators") if (v := getattr(args, k, None))},
            fmt="csv" if args.command == "zones" or getattr(args, "ray", None) else "json",
        )
        args.func(args, cfg)
    except DOMAIN_ERRORS as exc:
        code = getattr(exc, "code", None) or type(exc).__name__
        sys.stderr.write(json.dumps({"error": code, "message": str(exc)}, sort_keys=True) + "\n")
        return 1
    return 0


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
