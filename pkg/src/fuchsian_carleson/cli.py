"""Command-line entry point.

Exit codes: 0 all checks pass, 1 a checked bound failed, 2 the truncation is
too shallow for a check to be trusted, 3 configuration error.
"""
from __future__ import annotations

import argparse
import os
import sys
import time

from .config import ConfigError, load_config
from .harness import (
    EXIT_CONFIG, cmd_carleson, cmd_denjoy, cmd_group_build, cmd_verify_sec4, cmd_verify_thm13,
)

COMMANDS = {
    "group-build": cmd_group_build,
    "carleson": cmd_carleson,
    "verify-thm13": cmd_verify_thm13,
    "verify-sec4": cmd_verify_sec4,
    "denjoy-homogeneity": cmd_denjoy,
}


def _render(cfg):
    from .render import cmd_render
    return cmd_render(cfg)


COMMANDS["render"] = _render


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fuchsian-carleson",
                                description="Fuchsian groups, Dirichlet domains and Carleson estimates.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", help="TOML config file")
        s.add_argument("--depth", type=int, help="maximal word length of the group table")
        s.add_argument("--tol", type=float, help="quadrature tolerance")
        s.add_argument("--out", help="directory for the JSON report (and SVG files)")
        s.add_argument("--seed", type=int, help="seed for sampled boundary points")
        s.add_argument("--format", choices=("json", "text"), help="stdout format")
        s.add_argument("--workers", type=int, help="worker processes for query grids")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    depth_key = "sec4.depth" if args.command == "verify-sec4" else "group.depth"
    overrides = {depth_key: args.depth, "tolerance.quadrature": args.tol, "out": args.out,
                 "seed": args.seed, "format": args.format, "workers": args.workers}
    try:
        cfg = load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    t0 = time.perf_counter()
    try:
        report = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    elapsed = time.perf_counter() - t0
    if cfg["out"]:
        os.makedirs(cfg["out"], exist_ok=True)
        path = os.path.join(cfg["out"], f"{args.command}.json")
        with open(path, "w") as fh:
            fh.write(report.to_json())
    sys.stdout.write(report.to_json() if cfg["format"] == "json" else report.to_text())
    # wall-clock goes to stderr so that reports stay byte-identical
    print(f"{args.command}: {elapsed:.2f} s, exit {report.exit_code}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
