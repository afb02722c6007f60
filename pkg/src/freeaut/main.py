"""CLI entrypoint for freeaut: `analyze <command> [options]`"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Dict, Optional

from . import __version__
from .commands import EXIT_CERTIFIED, EXIT_FAILED, EXIT_INCONCLUSIVE, EXIT_INPUT_ERROR
from .config import RunConfig, load_config
from .errors import (
    FreeAutError,
    InconclusiveError,
    InputError,
    InvalidBasisChangeError,
    ResourceBudgetError,
    UnsupportedRepresentativeError,
)

logger = logging.getLogger("freeaut")


def _command_registry() -> Dict[str, Dict[str, str]]:
    """Return a mapping of command names to their modules."""
    return {
        "theorem": {
            "module": "freeaut.commands.theorem",
            "help": "certify every claim about alpha_n",
        },
        "fixed-points": {
            "module": "freeaut.commands.fixed_points",
            "help": "attracting and repelling boundary fixed points",
        },
        "inps": {
            "module": "freeaut.commands.inps",
            "help": "indivisible Nielsen path searches",
        },
        "iwip": {
            "module": "freeaut.commands.iwip",
            "help": "irreducibility certificate",
        },
        "index": {
            "module": "freeaut.commands.index",
            "help": "index values and parageometric classification",
        },
        "matrix": {
            "module": "freeaut.commands.matrix",
            "help": "transition matrix and Perron-Frobenius data",
        },
        "custom": {
            "module": "freeaut.commands.custom",
            "help": "analyze an automorphism table from --seed-file",
        },
    }


def _load_command(name: str):
    info = _command_registry()[name]
    return __import__(info["module"], fromlist=["*"])


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-n", type=int, help="rank (default 3)")
    parser.add_argument("--depth", type=int, help="ray prefix length (default 200)")
    parser.add_argument("--max-len", dest="max_len", type=int, help="INP leg length cap (default: auto)")
    parser.add_argument("--t-max", dest="t_max", type=int, help="largest power searched")
    parser.add_argument("--format", choices=["text", "json"], help="output format (default text)")
    parser.add_argument("--seed-file", dest="seed_file", help="automorphism table file")
    parser.add_argument("--jobs", type=int, help="worker processes for per-power searches")
    parser.add_argument("--image-budget", dest="image_budget", type=int,
                        help="maximum letters in a power's image table")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="analyze", description="freeaut CLI")
    parser.add_argument("--version", action="store_true", help="show version and exit")
    sub = parser.add_subparsers(dest="command")
    for name, info in _command_registry().items():
        command_parser = sub.add_parser(name, help=info["help"])
        _add_common_arguments(command_parser)
        _load_command(name).add_arguments(command_parser)
    schema_parser = sub.add_parser("schema", help="print the JSON schema of a command's output")
    schema_parser.add_argument("target", choices=sorted(_command_registry()))
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("freeaut")
    root.handlers[:] = [handler]
    root.setLevel(level)
    root.propagate = False


def schema_text(name: str) -> str:
    payload = _load_command(name).PAYLOAD
    return json.dumps(payload.model_json_schema(by_alias=True), indent=2, sort_keys=True) + "\n"


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {key: getattr(args, key, None) for key in RunConfig.model_fields}
    return load_config(**values)


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.version:
        print(__version__)
        return EXIT_CERTIFIED

    if not args.command:
        parser.print_help()
        return EXIT_INPUT_ERROR

    if args.command == "schema":
        sys.stdout.write(schema_text(args.target))
        return EXIT_CERTIFIED

    _configure_logging(args.verbose)
    started = time.perf_counter()
    try:
        config = _config_from_args(args)
        module = _load_command(args.command)
        result = module.run(config)
    except (InputError, InvalidBasisChangeError, UnsupportedRepresentativeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (InconclusiveError, ResourceBudgetError) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except FreeAutError as exc:
        print(f"certificate failed: {exc}", file=sys.stderr)
        return EXIT_FAILED

    if config.format == "json":
        sys.stdout.write(result.payload.to_json())
    else:
        sys.stdout.write(result.text)
    if result.message:
        print(result.message, file=sys.stderr)
    logger.info("%s finished in %.2fs (exit %d)", args.command, time.perf_counter() - started,
                result.exit_code)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
