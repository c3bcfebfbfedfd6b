"""Command line front end: measure, optimize, sweep, probe, verify."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import measures, optimize, serialize, states, verify
from .errors import InvalidParams, UlabError

# exit codes: 0 ok, 1 verification failure, 2 bad input data, 64 usage error
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    state: str | None = None
    family: str | None = None
    name: str | None = None
    n: int | None = None
    starts: int = 64
    seed: int = 7
    grid: int = 21
    out: str | None = None
    fmt: str = "json"
    dump_state: str | None = None
    only: str | None = None
    tol_scale: float = 1.0
    k_max: int = 4
    include_rho_star: bool = False


_BELL_BUILTINS = {
    "bell_phi_plus": "phi_plus",
    "bell_phi_minus": "phi_minus",
    "bell_psi_plus": "psi_plus",
    "bell_psi_minus": "psi_minus",
}


def _builtin_state(name: str):
    if name == "rho_star":
        return states.rho_star()
    if name == "maximally_mixed":
        return states.maximally_mixed()
    if name in _BELL_BUILTINS:
        return states.bell_state(_BELL_BUILTINS[name])
    if ":" in name:
        head, _, tail = name.partition(":")
        try:
            vals = [float(v) for v in tail.split(",")]
        except ValueError as exc:
            raise InvalidParams(f"bad parameter in builtin {name!r}: {exc}") from exc
        if head == "werner" and len(vals) == 1:
            return states.werner(vals[0])
        if head == "chi" and len(vals) == 1:
            return states.chi_state(vals[0])
        if head == "noisy" and len(vals) == 1:
            return states.noisy_star(vals[0])
        if head == "bell_diag" and len(vals) == 3:
            return states.bell_diagonal(states.BellDiagonalParams(*vals))
    raise InvalidParams(f"unknown builtin state {name!r}")


def _resolve_state(spec: str):
    if spec.startswith("builtin:"):
        return _builtin_state(spec[len("builtin:"):])
    return states.load_state(spec)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_measure(cfg: RunConfig) -> int:
    rho = _resolve_state(cfg.state)
    report = measures.measure_report(rho)
    if cfg.dump_state:
        states.save_state(rho, cfg.dump_state)
    if cfg.fmt == "csv":
        rows = sorted(report.measures.items())
        text = serialize.format_csv(["measure", "value"], rows)
    else:
        text = report.to_json()
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_optimize(cfg: RunConfig) -> int:
    if cfg.family == "separable-x":
        res = optimize.maximize_lqu_separable_x(n_starts=cfg.starts, seed=cfg.seed)
    elif cfg.family == "bell-diagonal":
        res = optimize.maximize_lqu_bell_diagonal_separable(grid=cfg.grid, seed=cfg.seed)
    else:
        res = optimize.maximize_gd_separable_x(n_starts=cfg.starts, seed=cfg.seed)
    _emit(res.to_json(), cfg.out)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    if cfg.name == "region":
        table = optimize.region_sweep(cfg.n if cfg.n else 501)
    elif cfg.name == "chi":
        table = optimize.chi_sweep(cfg.n if cfg.n else 101)
    else:
        table = optimize.noisy_sweep(cfg.n if cfg.n else 101)
    text = table.to_json() if cfg.fmt == "json" else table.to_csv()
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_probe(cfg: RunConfig) -> int:
    result = optimize.conjecture_probe(
        samples=cfg.n if cfg.n else 2000,
        k_max=cfg.k_max,
        seed=cfg.seed,
        include_rho_star=cfg.include_rho_star,
    )
    _emit(serialize.dumps_json(result), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    only = cfg.only.split(",") if cfg.only else None
    results = verify.run_claims(only=only, tol_scale=cfg.tol_scale, seed=cfg.seed)
    for r in results:
        print(r.line())
    n_pass = sum(1 for r in results if r.passed)
    print(f"{n_pass}/{len(results)} claims passed")
    return EXIT_OK if n_pass == len(results) else EXIT_VERIFY_FAILED


def build_parser() -> _Parser:
    parser = _Parser(
        prog="ulab",
        description="Uncertainty and correlation measures for two-qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="report all measures of one state")
    p.add_argument("--state", required=True,
                   help="state JSON path or builtin:NAME (e.g. builtin:rho_star)")
    p.add_argument("--out", default=None)
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    p.add_argument("--dump-state", dest="dump_state", default=None,
                   help="also write the resolved state to this JSON path")

    p = sub.add_parser("optimize", help="run a constrained maximization")
    p.add_argument("--family", required=True,
                   choices=("separable-x", "bell-diagonal", "gd-separable-x"))
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--grid", type=int, default=21)
    p.add_argument("--out", default=None)

    p = sub.add_parser("sweep", help="emit sweep data for one family")
    p.add_argument("--name", required=True, choices=("region", "chi", "noisy"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")

    p = sub.add_parser("probe", help="sample random separable states for the LQU ceiling")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--k-max", dest="k_max", type=int, default=4)
    p.add_argument("--seed", type=int, default=11)
    p.add_argument("--include-rho-star", dest="include_rho_star", action="store_true")
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="check the package's headline claims")
    p.add_argument("--only", default=None,
                   help="comma-separated claim groups (default: all)")
    p.add_argument("--tol-scale", dest="tol_scale", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=7)

    return parser


def _config_from_args(parser: _Parser, args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in vars(cfg):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if cfg.command == "optimize":
        if cfg.starts < 1:
            parser.error("--starts must be >= 1")
        if cfg.grid < 3:
            parser.error("--grid must be >= 3")
    if cfg.command == "sweep" and cfg.n is not None:
        floor = 3 if cfg.name == "region" else 11
        if cfg.n < floor:
            parser.error(f"--n must be >= {floor} for {cfg.name}")
    if cfg.command == "probe":
        if cfg.n < 1:
            parser.error("--n must be >= 1")
        if cfg.k_max < 1:
            parser.error("--k-max must be >= 1")
    if cfg.command == "verify" and cfg.tol_scale < 0:
        parser.error("--tol-scale must be >= 0")
    return cfg


_DISPATCH = {
    "measure": cmd_measure,
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
    "probe": cmd_probe,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(parser, args)
    try:
        return _DISPATCH[cfg.command](cfg)
    except UlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
