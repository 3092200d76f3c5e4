"""Command-line driver.

Subcommands: closed-ergotropy, open-ergotropy, laws, sweep, third-law.
Exit codes: 0 all checks passed, 1 usage error, 2 physics-check failure.
No environment variables are consulted.
"""

from __future__ import annotations

import argparse
import sys

from .experiments import (
    DEFAULT_TEMPERATURES,
    ConfigError,
    RunConfig,
    apply_overrides,
    cmd_closed_ergotropy,
    cmd_laws,
    cmd_open_ergotropy,
    cmd_sweep,
    cmd_third_law,
    load_config,
)
from .hamiltonian import BrokenPhaseError
from .states import InvalidStateError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PHYSICS = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _parse_floats(text: str, what: str) -> list[float]:
    items = [piece for piece in text.split(",") if piece.strip()]
    try:
        return [float(piece) for piece in items]
    except ValueError as exc:
        raise ConfigError(f"could not parse {what} list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ptthermo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("closed-ergotropy", "closed-system ergotropy time series"),
        ("open-ergotropy", "open-system ergotropy time series"),
        ("laws", "energy balance, entropy production and entropy"),
        ("sweep", "repeat the laws run over several r values"),
        ("third-law", "peak entropy vs. bath temperature scan"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", help="JSON config file (RunConfig fields)")
        cmd.add_argument("--out", help="output directory (overrides output_dir)")
        cmd.add_argument(
            "--override",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override one config field (repeatable)",
        )
        if name == "sweep":
            cmd.add_argument("--r-values", required=True, help="comma-separated r values")
            cmd.add_argument("--workers", type=int, default=1, help="parallel runs")
        if name == "third-law":
            cmd.add_argument(
                "--temperatures",
                default=",".join(format(t, "g") for t in DEFAULT_TEMPERATURES),
                help="comma-separated descending temperatures",
            )
    return parser


def _resolve_config(args) -> RunConfig:
    config = load_config(args.config) if args.config else RunConfig()
    config = apply_overrides(config, args.override)
    if args.out:
        config = apply_overrides(config, [f"output_dir={args.out}"])
    return config


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _resolve_config(args)
        if args.command == "closed-ergotropy":
            result = cmd_closed_ergotropy(config)
        elif args.command == "open-ergotropy":
            result = cmd_open_ergotropy(config)
        elif args.command == "laws":
            result = cmd_laws(config)
        elif args.command == "sweep":
            r_values = _parse_floats(args.r_values, "r")
            if not r_values:
                raise ConfigError("empty sweep: provide at least one r value")
            result = cmd_sweep(config, r_values, workers=args.workers)
        else:
            temperatures = _parse_floats(args.temperatures, "temperature")
            result = cmd_third_law(config, temperatures)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BrokenPhaseError, InvalidStateError, ValueError, RuntimeError) as exc:
        print(f"physics error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    for check in result.manifest["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        value = "" if check["value"] is None else f" value={check['value']:.6g}"
        print(f"[{status}] {check['name']}{value}")
    print(f"wrote {result.csv_path} and {result.manifest_path}")
    return EXIT_OK if result.all_passed else EXIT_PHYSICS


if __name__ == "__main__":
    raise SystemExit(main())
