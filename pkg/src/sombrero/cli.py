"""Command-line front end: solve, benchmark tables, wavefunction data, oracle.

Energies print at 4 decimals; files carry 17 significant digits so that
parsing an emitted CSV reproduces the in-memory values bit for bit.  All
output is deterministic: the same flags give byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields

import numpy as np

from .iteration import DEFAULT_ORDERS, DEFAULT_TOL, solve
from .model import ParameterDomainError, make_params
from .oracle import fd_ground_energy
from .quadrature import DEFAULT_POINTS, build_grid
from .trial_one import make_trial_one

EXIT_OK = 0
EXIT_NOT_CONVERGED = 1
EXIT_BAD_ARGS = 2
EXIT_NUMERICAL = 3

# benchmark-table layout: (g, A, trial, number of reported energies);
# table 1 runs the tau scheme, table 2 the f scheme
TABLE_LAYOUTS = {
    1: [
        (0.5, 2.0, 1, 5), (0.5, 2.0, 2, 5),
        (0.93, 2.0, 1, 5), (0.93, 2.0, 2, 5),
        (1.0, 2.0, 1, 1), (1.0, 2.0, 2, 5),
        (2.0, 2.0, 1, 5), (2.0, 2.0, 2, 5),
        (1.0, 1.0, 1, 5), (1.0, 1.0, 2, 6),
        (1.0, 1.9, 1, 5), (1.0, 1.9, 2, 5),
        (1.0, 3.0, 1, 5), (1.0, 3.0, 2, 5),
    ],
    2: [
        (0.5, 2.0, 1, 6), (0.5, 2.0, 2, 6),
        (0.93, 2.0, 1, 5), (0.93, 2.0, 2, 6),
        (1.0, 2.0, 1, 1), (1.0, 2.0, 2, 6),
        (2.0, 2.0, 1, 5), (2.0, 2.0, 2, 6),
        (1.0, 1.0, 1, 5), (1.0, 1.0, 2, 6),
        (1.0, 1.9, 1, 5), (1.0, 1.9, 2, 6),
        (1.0, 3.0, 1, 6), (1.0, 3.0, 2, 6),
    ],
}


def _fmt(x: float) -> str:
    return "%.17g" % x


@dataclass
class RunConfig:
    """Solve options, mirroring the CLI flags; key=value file serializable."""

    N: int = 3
    g: float = 1.0
    A: float = 2.0
    trial: int = 1
    method: str = "tau"
    orders: int = DEFAULT_ORDERS
    tol: float = DEFAULT_TOL
    points: int = DEFAULT_POINTS
    rmax: float | None = None
    rc: str = "auto"
    root: str = "auto"
    out: str | None = None
    format: str = "csv"

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        known = {f.name: f for f in fields(cls)}
        cfg = cls()
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ParameterDomainError(f"{path}:{lineno}: expected 'key = value'")
                key, value = (part.strip() for part in line.split("=", 1))
                if key not in known:
                    raise ParameterDomainError(f"{path}:{lineno}: unknown key {key!r}")
                setattr(cfg, key, _coerce(known[key].type, value))
        return cfg

    def to_file(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for f in fields(self):
                value = getattr(self, f.name)
                if value is None:
                    continue
                fh.write(f"{f.name} = {value}\n")


def _coerce(type_name: str, value: str):
    if type_name == "int":
        return int(value)
    if type_name == "float":
        return float(value)
    if type_name in ("float | None",):
        return None if value.lower() == "none" else float(value)
    if type_name in ("str | None",):
        return None if value.lower() == "none" else value
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sombrero",
        description="Ground states of the N-dimensional Sombrero potential "
                    "by iterative refinement of analytic trial functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="run one solve and print the energy sequence")
    ps.add_argument("--config", help="key=value config file; explicit flags override it")
    ps.add_argument("--N", type=int, default=None)
    ps.add_argument("--g", type=float, default=None)
    ps.add_argument("--A", type=float, default=None)
    ps.add_argument("--trial", type=int, choices=(1, 2), default=None)
    ps.add_argument("--method", choices=("f", "tau"), default=None)
    ps.add_argument("--orders", type=int, default=None)
    ps.add_argument("--tol", type=float, default=None)
    ps.add_argument("--points", type=int, default=None)
    ps.add_argument("--rmax", type=float, default=None)
    ps.add_argument("--rc", choices=("0", "inf", "auto"), default=None)
    ps.add_argument("--root", choices=("large", "small", "auto"), default=None)
    ps.add_argument("--out", default=None)
    ps.add_argument("--format", choices=("csv", "json"), default=None)
    ps.set_defaults(func=cmd_solve)

    pt = sub.add_parser("table", help="reproduce a benchmark eigenvalue table as CSV")
    pt.add_argument("--which", type=int, choices=(1, 2), required=True)
    pt.add_argument("--out", default=None)
    pt.add_argument("--points", type=int, default=DEFAULT_POINTS)
    pt.set_defaults(func=cmd_table)

    pw = sub.add_parser("wavefunction", help="emit trial/converged wavefunction samples")
    pw.add_argument("--N", type=int, default=3)
    pw.add_argument("--g", type=float, default=1.0)
    pw.add_argument("--A", type=float, default=2.0)
    pw.add_argument("--trial", type=int, choices=(1, 2), default=2)
    pw.add_argument("--method", choices=("f", "tau"), default="tau")
    pw.add_argument("--samples", type=int, default=401)
    pw.add_argument("--out", default=None)
    pw.set_defaults(func=cmd_wavefunction)

    po = sub.add_parser("oracle", help="independent finite-difference ground energy")
    po.add_argument("--N", type=int, default=3)
    po.add_argument("--g", type=float, default=1.0)
    po.add_argument("--A", type=float, default=2.0)
    po.add_argument("--rmax", type=float, default=None)
    po.add_argument("--points", type=int, default=4096)
    po.set_defaults(func=cmd_oracle)

    return parser


def _rc_name(flag: str) -> str:
    return {"0": "zero", "inf": "infinity", "auto": "auto"}[flag]


def cmd_solve(args) -> int:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    for name in ("N", "g", "A", "trial", "method", "orders", "tol",
                 "points", "rmax", "rc", "root", "out", "format"):
        value = getattr(args, name)
        if value is not None:
            setattr(cfg, name, _rc_name(value) if name == "rc" else value)
    if cfg.rc in ("0", "inf"):
        cfg.rc = _rc_name(cfg.rc)

    p = make_params(cfg.N, cfg.g, cfg.A)
    result = solve(p, trial=cfg.trial, method=cfg.method, orders=cfg.orders,
                   tol=cfg.tol, n_points=cfg.points, r_max=cfg.rmax,
                   r_c=cfg.rc, root_choice=cfg.root)
    print(", ".join(f"{e:.4f}" for e in result.energies))
    if result.converged:
        print(f"converged at order {result.iterations_used}")
    else:
        print(f"not converged after {result.iterations_used} orders")
    if cfg.out:
        if cfg.format == "json":
            _write_solve_json(cfg.out, cfg, result)
        else:
            _write_solve_csv(cfg.out, result)
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def _write_solve_csv(path: str, result) -> None:
    lines = ["order,energy"]
    lines += [f"{i},{_fmt(e)}" for i, e in enumerate(result.energies)]
    _write_text(path, "\n".join(lines) + "\n")


def _write_solve_json(path: str, cfg: RunConfig, result) -> None:
    payload = {
        "N": cfg.N, "g": cfg.g, "A": cfg.A,
        "trial": result.trial, "method": result.method,
        "energies": [float(e) for e in result.energies],
        "converged": bool(result.converged),
        "iterations": int(result.iterations_used),
        "r_max": float(result.grid.r_max),
    }
    _write_text(path, json.dumps(payload, indent=2) + "\n")


def cmd_table(args) -> int:
    which = args.which
    method = "tau" if which == 1 else "f"
    out = args.out or f"table{which}.csv"
    header = "g,A,trial,E0,E1,E2,E3,E4,E5,error"
    lines = [header]
    for g, A, trial, cells in TABLE_LAYOUTS[which]:
        row = [f"{g:g}", f"{A:g}", str(trial)]
        error = ""
        try:
            p = make_params(3, g, A)
            result = solve(p, trial=trial, method=method,
                           orders=max(1, cells - 1), tol=0.0, n_points=args.points)
            energies = list(result.energies[:cells])
            row += [_fmt(e) for e in energies] + [""] * (6 - len(energies))
        except Exception as exc:  # keep other rows alive
            row += [""] * 6
            error = f"{type(exc).__name__}: {exc}"
        row.append(error)
        lines.append(",".join(row))
        shown = ", ".join(f"{float(v):.4f}" for v in row[3:9] if v)
        print(f"g={g:g} A={A:g} trial {trial} ({method}): {shown}{error and '  ' + error}")
    _write_text(out, "\n".join(lines) + "\n")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_wavefunction(args) -> int:
    from .trial_two import log_phi_two

    p = make_params(args.N, args.g, args.A)
    result = solve(p, trial=args.trial, method=args.method)
    rs = np.linspace(0.0, result.grid.r_max, args.samples)
    if result.trial == "one":
        log_phi = make_trial_one(p).log_phi
    else:
        log_phi = lambda r: log_phi_two(p, result.trial_meta, r)
    lp = np.asarray(log_phi(rs), dtype=float)
    phi = np.exp(lp - lp.max())
    phi /= phi.max()
    psi = np.interp(rs, result.grid.nodes, result.final_psi)
    psi /= psi.max()
    out = args.out or "wavefunction.csv"
    lines = ["r,phi_normalized,psi_normalized"]
    lines += [f"{_fmt(r)},{_fmt(a)},{_fmt(b)}" for r, a, b in zip(rs, phi, psi)]
    _write_text(out, "\n".join(lines) + "\n")
    print(f"wrote {out} ({args.samples} samples, r_max={result.grid.r_max:.4f})")
    if not result.converged:
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_oracle(args) -> int:
    p = make_params(args.N, args.g, args.A)
    r_max = args.rmax
    if r_max is None:
        r_max = build_grid(p, make_trial_one(p).log_phi).r_max
    energy = fd_ground_energy(p, r_max, args.points)
    print(f"{energy:.4f}")
    return EXIT_OK


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except (ValueError, RuntimeError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
