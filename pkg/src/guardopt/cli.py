# guardopt/cli.py
"""Experiment runner: regenerates the figure/table analogs as CSV data.

Commands: psd, guards, schedule, lookup-build. Settings come from an optional
YAML config file; command-line flags override file keys. All outputs are
byte-deterministic under a fixed seed.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .numerology import NumerologyConfig
from .optimizer import (
    DEFAULT_ALPHA_GRID,
    DEFAULT_THETA_LIST,
    LookupTable,
    build_lookup_table,
    config_fingerprint,
    efficiency_curve,
    revalidate,
)
from .scheduler import (
    compare_scenarios,
    load_users_yaml,
    write_comparison_csv,
    write_layout_csv,
)
from .spectrum import windowed_psd, write_psd_csv


@dataclass
class ExperimentConfig:
    numerology: NumerologyConfig = field(default_factory=NumerologyConfig)
    alpha_grid: tuple = DEFAULT_ALPHA_GRID
    theta_list: tuple = DEFAULT_THETA_LIST
    users: str | None = None
    seed: int = 0
    out_dir: str = "out"
    psd_symbols: int = 128
    mode: str = "exhaustive"

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            raw = yaml.safe_load(fh) or {}
        ec = cls(numerology=NumerologyConfig.from_mapping(raw))
        if "alpha_grid" in raw:
            ec.alpha_grid = tuple(float(a) for a in raw["alpha_grid"])
        if "theta_list" in raw:
            ec.theta_list = tuple(float(t) for t in raw["theta_list"])
        ec.users = raw.get("users", ec.users)
        ec.seed = int(raw.get("seed", ec.seed))
        ec.out_dir = str(raw.get("out_dir", ec.out_dir))
        ec.psd_symbols = int(raw.get("psd_symbols", ec.psd_symbols))
        ec.mode = str(raw.get("mode", ec.mode))
        return ec


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _load_config(args) -> ExperimentConfig:
    ec = ExperimentConfig.load(args.config) if args.config else ExperimentConfig()
    if getattr(args, "seed", None) is not None:
        ec.seed = args.seed
    if getattr(args, "out", None) is not None:
        ec.out_dir = args.out
    if getattr(args, "theta", None) is not None:
        ec.theta_list = tuple(float(t) for t in args.theta.split(",") if t)
    if getattr(args, "alpha", None) is not None:
        ec.alpha_grid = tuple(float(a) for a in args.alpha.split(",") if a)
    if getattr(args, "mode", None):
        ec.mode = args.mode
    if getattr(args, "users", None):
        ec.users = args.users
    return ec


def _out_dir(ec: ExperimentConfig) -> Path:
    out = Path(ec.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _lookup_for(ec: ExperimentConfig, out: Path) -> LookupTable:
    """Load a persisted table matching the config hash, or build and persist."""
    key = config_fingerprint(ec.numerology, ec.alpha_grid, ec.theta_list, ec.seed)
    path = out / f"lookup_{key}.csv"
    if path.exists():
        return LookupTable.load_csv(path)
    table = build_lookup_table(ec.theta_list, ec.numerology, ec.alpha_grid, ec.seed)
    table.save_csv(path, ec.numerology)
    return table


def cmd_psd(args) -> int:
    ec = _load_config(args)
    out = _out_dir(ec)
    for alpha in ec.alpha_grid:
        psd = windowed_psd(
            alpha, ec.numerology, n_symbols=ec.psd_symbols, seed=ec.seed
        )
        write_psd_csv(psd, out / f"psd_alpha{_fmt(alpha)}.csv")
    return 0


def cmd_guards(args) -> int:
    ec = _load_config(args)
    if not ec.theta_list:
        print("error: empty theta list", file=sys.stderr)
        return 2
    out = _out_dir(ec)
    with open(out / "guard_curves.csv", "w", newline="") as fh:
        fh.write("theta_db,alpha,gd_samples,gb_subcarriers,eta_time,eta_freq,eta\n")
        for theta in ec.theta_list:
            for a in efficiency_curve(theta, ec.numerology, ec.alpha_grid, ec.seed):
                fh.write(
                    f"{_fmt(theta)},{_fmt(a.alpha)},{a.gd_samples},"
                    f"{a.gb_subcarriers:.6f},{a.eta_time:.8f},"
                    f"{a.eta_freq:.8f},{a.eta:.8f}\n"
                )
    table = build_lookup_table(ec.theta_list, ec.numerology, ec.alpha_grid, ec.seed)
    table.save_csv(out / "optimal_guards.csv", ec.numerology)
    if args.revalidate:
        achieved = revalidate(table, ec.numerology, ec.seed)
        for theta, supp in achieved.items():
            status = "ok" if supp >= theta - 0.1 else "VIOLATION"
            print(f"theta={_fmt(theta)} achieved={supp:.2f} dB {status}")
        if any(s < t - 0.1 for t, s in achieved.items()):
            return 1
    return 0


def cmd_lookup_build(args) -> int:
    ec = _load_config(args)
    out = _out_dir(ec)
    table = _lookup_for(ec, out)
    for theta, reason in table.failures.items():
        print(f"theta={_fmt(theta)}: absent ({reason})", file=sys.stderr)
    return 0


def cmd_schedule(args) -> int:
    ec = _load_config(args)
    if ec.users is None:
        users_path = Path(__file__).parent / "data" / "users_mixed8.yaml"
    else:
        users_path = Path(ec.users)
    users = load_users_yaml(users_path)
    out = _out_dir(ec)
    lookup = _lookup_for(ec, out)
    rows = compare_scenarios(users, ec.seed, lookup, mode=ec.mode)
    for r in rows:
        write_layout_csv(r.plan, out / f"schedule_{r.scenario}.csv")
    write_comparison_csv(rows, out / "guard_comparison.csv")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="guardopt",
        description="Adaptive guard-band/guard-duration experiments for "
        "windowed OFDM.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="YAML experiment config")
        p.add_argument("--seed", type=int, help="RNG seed (overrides config)")
        p.add_argument("--out", help="output directory")
        p.add_argument("--theta", help="comma-separated thresholds, dB")
        p.add_argument("--alpha", help="comma-separated roll-off grid")

    p = sub.add_parser("psd", help="emit PSD traces per alpha")
    common(p)
    p.set_defaults(fn=cmd_psd)

    p = sub.add_parser("guards", help="emit guard curves and optimal guards")
    common(p)
    p.add_argument(
        "--revalidate",
        action="store_true",
        help="re-check every optimal entry against its threshold",
    )
    p.set_defaults(fn=cmd_guards)

    p = sub.add_parser("lookup-build", help="build/persist the lookup table")
    common(p)
    p.set_defaults(fn=cmd_lookup_build)

    p = sub.add_parser("schedule", help="run the scheduling comparison")
    common(p)
    p.add_argument("--users", help="user-set YAML file")
    p.add_argument("--mode", choices=["exhaustive", "heuristic"])
    p.set_defaults(fn=cmd_schedule)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
