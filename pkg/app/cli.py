"""Command-line surface: argument parsing, configuration and exit codes."""
import argparse
import sys
from typing import Any, Dict, List, Optional

import yaml
from pydantic import ValidationError

from app.components.compare import run_compare, run_lattice_op
from app.components.embed import run_embed
from app.components.ext_query import run_ext
from app.components.reports import CommandOutcome
from app.components.selftest import ordered_suite_keys, run_selftest
from app.components.separate import run_separate
from app.components.type_dsl import DSLParseError
from config.config import EXIT_CODES, PROJECT_NAME
from config.session import SessionConfig, load_session_config
from lattice.errors import InvalidPosetError, InvariantBreach, LatticeError
from utils.utils_logging import AppLogger, get_logger_from_config, log_run_environment
from utils.utils_system_specs import resolve_worker_count


class UsageError(Exception):
    """Bad command line or session configuration."""


class CliArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; usage errors here map to exit 1."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ─────────────────────────────────────────────────────────────────────────────
# Parser
# ─────────────────────────────────────────────────────────────────────────────
def _common_options() -> argparse.ArgumentParser:
    common = CliArgumentParser(add_help=False)
    group = common.add_argument_group("session")
    # None means "not given": the session file or the defaults fill it in
    group.add_argument("--modulus", type=int, default=None, help="number of prime cells k (default 16)")
    group.add_argument("--m-max", dest="m_max", type=int, default=None, help="verification budget for m")
    group.add_argument("--k-max", dest="k_max", type=int, default=None, help="verification budget for k")
    group.add_argument("--primes", dest="prime_count", type=int, default=None, help="primes checked per witness")
    group.add_argument("--json", dest="output", action="store_const", const="json", default=None,
                       help="emit the JSON report")
    group.add_argument("--seed", type=int, default=None, help="random seed for selftest")
    group.add_argument("--workers", type=int, default=None, help="worker threads, 0 = one per physical core")
    group.add_argument("--config", dest="config_path", default=None, help="YAML session file")
    group.add_argument("--log-db", dest="log_db", default=None, help="SQLite run log path")
    group.add_argument("--verbose", action="store_const", const=True, default=None,
                       help="echo log records to stderr")
    return common


def build_parser() -> CliArgumentParser:
    common = _common_options()
    parser = CliArgumentParser(prog=PROJECT_NAME, description="Rational cotorsion theories and the lattice of types")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    pair_commands = {"cmp": "compare two types", "join": "join of two types", "meet": "meet of two types"}
    for name, help_text in pair_commands.items():
        pair_p = sub.add_parser(name, parents=[common], help=help_text)
        pair_p.add_argument("tau")
        pair_p.add_argument("rho")

    ext_p = sub.add_parser("ext", parents=[common], help="decide Ext(T, X) = 0 for rank-1 groups")
    ext_p.add_argument("T")
    ext_p.add_argument("X")

    sep_p = sub.add_parser("separate", parents=[common], help="separating witness for tau < rho")
    sep_p.add_argument("tau")
    sep_p.add_argument("rho")

    emb_p = sub.add_parser("embed", parents=[common], help="embed a power set or a finite poset")
    source = emb_p.add_mutually_exclusive_group(required=True)
    source.add_argument("--powerset", type=int, metavar="N")
    source.add_argument("--poset", metavar="FILE")

    st_p = sub.add_parser("selftest", parents=[common], help="run the invariant suites")
    st_p.add_argument("--suite", action="append", choices=ordered_suite_keys(), metavar="KEY",
                      help=f"run only these suites ({', '.join(ordered_suite_keys())})")
    st_p.add_argument("--trials", type=int, default=None, help="cap the trial count of every suite")
    return parser


# ─────────────────────────────────────────────────────────────────────────────
# Dispatch
# ─────────────────────────────────────────────────────────────────────────────
def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    keys = ("modulus", "m_max", "k_max", "prime_count", "output", "seed", "workers", "log_db", "verbose")
    return {key: getattr(args, key) for key in keys}


def dispatch(args: argparse.Namespace, config: SessionConfig, logger: AppLogger) -> CommandOutcome:
    workers = resolve_worker_count(config.workers)
    if args.command == "cmp":
        return run_compare(args.tau, args.rho, config)
    if args.command in ("join", "meet"):
        return run_lattice_op(args.command, args.tau, args.rho, config)
    if args.command == "ext":
        return run_ext(args.T, args.X, config)
    if args.command == "separate":
        return run_separate(args.tau, args.rho, config, workers)
    if args.command == "embed":
        return run_embed(config, powerset=args.powerset, poset_path=args.poset, workers=workers)
    if args.command == "selftest":
        if args.trials is not None and args.trials < 1:
            raise UsageError("--trials must be >= 1")
        return run_selftest(config, logger, args.suite, args.trials, workers)
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        config = load_session_config(args.config_path, _overrides(args))
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_CODES["USAGE"]
    except (ValidationError, FileNotFoundError, ValueError, yaml.YAMLError) as e:
        print(f"{PROJECT_NAME}: invalid configuration: {e}", file=sys.stderr)
        return EXIT_CODES["USAGE"]

    logger = get_logger_from_config(config)
    log_run_environment(logger, args.command)
    logger.log_action(args.command, "start", details=" ".join(argv))

    try:
        outcome = dispatch(args, config, logger)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_CODES["USAGE"]
    except (DSLParseError, InvalidPosetError) as e:
        logger.log_error_with_exception(args.command, "parse failed", e)
        print(f"{PROJECT_NAME}: parse error: {e}", file=sys.stderr)
        return EXIT_CODES["PARSE"]
    except LatticeError as e:
        logger.log_error_with_exception(args.command, "rejected input", e)
        print(f"{PROJECT_NAME}: {e}", file=sys.stderr)
        return EXIT_CODES["USAGE"]
    except InvariantBreach as e:
        logger.log_error_with_exception(args.command, "invariant breach", e)
        print(f"{PROJECT_NAME}: internal error: {e}", file=sys.stderr)
        return EXIT_CODES["INTERNAL"]
    except Exception as e:
        logger.log_error_with_exception(args.command, "unexpected failure", e)
        print(f"{PROJECT_NAME}: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CODES["INTERNAL"]

    print(outcome.render(config.output))
    logger.log_action(args.command, "finish", details=f"exit {outcome.exit_code}")
    return outcome.exit_code
