from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from .automata import (
    CapExceededError,
    FiniteLanguage,
    Nfa,
    enumerate_language,
    equivalent,
    member,
    minimal_dfa,
)
from .config import ConfigError, ToolkitConfig, default_config, load_config, normalize_direction
from .construct import BridgeReport, build_gs, build_star_pair, cross_nfa, saturate_with_report
from .operands import OperandError, load_operand, load_rule_file, load_rule_set
from .regex_parser import RegexSyntaxError
from .text_formats import FormatError, format_word, parse_word, write_automaton, write_words
from .word_ops import (
    ClosureConfig,
    ClosureIterationError,
    OverlapSet,
    bounded_closure_pair,
    bounded_closure_r,
    bounded_closure_u,
    bounded_gs,
)

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path("config.yaml")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_SEMANTIC = 3
EXIT_RESOURCE = 4
EXIT_DIFFER = 5


class UsageError(Exception):
    """Raised instead of exiting when the command line cannot be parsed."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _add_rule_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--rules", default="all", help="Crossover symbols: 'all' or a comma-separated list")
    group.add_argument("--rule-file", type=Path, help="File of x#$x# rules, one per line")


def _add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, help="Write the resulting automaton to this file")
    parser.add_argument("--max-len", type=int, help="Print every accepted word up to this length")
    parser.add_argument("--report", action="store_true", help="Print the bridge report to stderr")
    parser.add_argument("--minimize", action="store_true", help="Replace the result by its minimal DFA")


def _add_direction_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--direction", choices=("one", "two"), help="1GSCO or 2GSCO crossover")


def build_argument_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="gsco-splice",
        description="Crossover, closure and generalized splicing of regular and finite languages.",
    )
    parser.add_argument("--config", type=Path, help="Path to toolkit configuration YAML (default: ./config.yaml)")
    parser.add_argument("--profile", help="Name of the limits profile to use from the configuration")
    parser.add_argument(
        "--log-level",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        type=str.upper,
        help="Logging verbosity (default from configuration)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    cross = commands.add_parser("cross", help="One crossover step between two languages")
    cross.add_argument("first")
    cross.add_argument("second")
    _add_rule_arguments(cross)
    _add_direction_argument(cross)
    _add_output_arguments(cross)

    closure = commands.add_parser("closure", help="Crossover closure of one language")
    closure.add_argument("operand")
    _add_rule_arguments(closure)
    _add_output_arguments(closure)

    star_pair = commands.add_parser("star-pair", help="Crossover of the closures of two languages")
    star_pair.add_argument("first")
    star_pair.add_argument("second")
    _add_rule_arguments(star_pair)
    _add_direction_argument(star_pair)
    star_pair.add_argument("--include-base", action=argparse.BooleanOptionalAction, default=None)
    _add_output_arguments(star_pair)

    splice = commands.add_parser("splice", help="Iterated generalized splicing with x#$x# rules")
    splice.add_argument("first")
    splice.add_argument("second")
    _add_rule_arguments(splice)
    splice.add_argument("--include-base", action=argparse.BooleanOptionalAction, default=None)
    _add_output_arguments(splice)

    member_cmd = commands.add_parser("member", help="Test whether a word is accepted")
    member_cmd.add_argument("operand")
    member_cmd.add_argument("word", help="Word to test ('@eps' for the empty word)")

    enum = commands.add_parser("enum", help="List accepted words in length-lex order")
    enum.add_argument("operand")
    enum.add_argument("--max-len", type=int, help="Longest word to list")

    eqv = commands.add_parser("eqv", help="Compare two languages")
    eqv.add_argument("first")
    eqv.add_argument("second")

    minimize_cmd = commands.add_parser("min", help="Minimal complete DFA of a language")
    minimize_cmd.add_argument("operand")
    minimize_cmd.add_argument("--out", type=Path, help="Write the automaton to this file")

    oracle = commands.add_parser("oracle", help="Bounded word-level closures")
    oracle.add_argument("kind", choices=("closure", "pair", "gs"))
    oracle.add_argument("operands", nargs="+")
    _add_rule_arguments(oracle)
    _add_direction_argument(oracle)
    oracle.add_argument("--max-len", type=int, help="Longest word to report")
    oracle.add_argument("--intermediate-cap", type=int, help="Longest intermediate word kept while iterating")
    oracle.add_argument("--max-iter", type=int, help="Give up after this many rounds")
    oracle.add_argument("--restricted", action="store_true", help="Use the restricted closure for 'closure'")
    return parser


def _resolve_config(args: argparse.Namespace) -> ToolkitConfig:
    if args.config is not None:
        return load_config(args.config, profile=args.profile)
    if DEFAULT_CONFIG_PATH.exists():
        return load_config(DEFAULT_CONFIG_PATH, profile=args.profile)
    if args.profile is not None:
        raise ConfigError(f"Profile '{args.profile}' requested but no configuration file was found.")
    return default_config()


def _rule_set(args: argparse.Namespace) -> OverlapSet:
    if args.rule_file is not None:
        return load_rule_file(args.rule_file)
    return load_rule_set(args.rules)


def _write(text: str, destination: Optional[Path] = None) -> None:
    if destination is None:
        sys.stdout.write(text)
    else:
        destination.write_text(text, encoding="utf-8")


def _emit_automaton(
    args: argparse.Namespace,
    config: ToolkitConfig,
    machine: Nfa,
    report: Optional[BridgeReport] = None,
) -> int:
    if getattr(args, "minimize", False):
        machine = minimal_dfa(machine, config.limits.subset_state_cap).to_nfa()
    if getattr(args, "report", False) and report is not None:
        sys.stderr.write(report.format_table())
    logger.info("Result automaton: %d states, %d transitions", machine.state_count, len(machine.transitions))
    if args.out is not None:
        _write(write_automaton(machine), args.out)
        logger.info("Wrote %s", args.out)
    max_len = getattr(args, "max_len", None)
    if max_len is not None:
        _write(write_words(enumerate_language(machine, max_len, config.limits.enumeration_cap)))
    elif args.out is None:
        _write(write_automaton(machine))
    return EXIT_OK


def _cmd_cross(args: argparse.Namespace, config: ToolkitConfig) -> int:
    direction = normalize_direction(args.direction) if args.direction else config.closure.direction_mode
    machine, report = cross_nfa(load_operand(args.first), load_operand(args.second), _rule_set(args), direction)
    return _emit_automaton(args, config, machine, report)


def _cmd_closure(args: argparse.Namespace, config: ToolkitConfig) -> int:
    machine, report = saturate_with_report(load_operand(args.operand), _rule_set(args))
    return _emit_automaton(args, config, machine, report)


def _cmd_star_pair(args: argparse.Namespace, config: ToolkitConfig) -> int:
    include_base = config.construction.star_pair_include_base if args.include_base is None else args.include_base
    direction = normalize_direction(args.direction) if args.direction else config.closure.direction_mode
    machine, report = build_star_pair(
        load_operand(args.first), load_operand(args.second), _rule_set(args), include_base, direction
    )
    return _emit_automaton(args, config, machine, report)


def _cmd_splice(args: argparse.Namespace, config: ToolkitConfig) -> int:
    include_base = config.construction.splice_include_base if args.include_base is None else args.include_base
    machine, report = build_gs(load_operand(args.first), load_operand(args.second), _rule_set(args), include_base)
    return _emit_automaton(args, config, machine, report)


def _cmd_member(args: argparse.Namespace, config: ToolkitConfig) -> int:
    accepted = member(load_operand(args.operand), parse_word(args.word))
    _write("ACCEPT\n" if accepted else "REJECT\n")
    return EXIT_OK


def _cmd_enum(args: argparse.Namespace, config: ToolkitConfig) -> int:
    max_len = config.construction.default_max_len if args.max_len is None else args.max_len
    words = enumerate_language(load_operand(args.operand), max_len, config.limits.enumeration_cap)
    _write(write_words(words))
    return EXIT_OK


def _cmd_eqv(args: argparse.Namespace, config: ToolkitConfig) -> int:
    result = equivalent(load_operand(args.first), load_operand(args.second), config.limits.pair_state_cap)
    if result:
        _write("EQUIVALENT\n")
        return EXIT_OK
    _write(f"DIFFER {format_word(result.witness or ())}\n")
    return EXIT_DIFFER


def _cmd_min(args: argparse.Namespace, config: ToolkitConfig) -> int:
    machine = minimal_dfa(load_operand(args.operand), config.limits.subset_state_cap).to_nfa()
    return _emit_automaton(args, config, machine)


def _oracle_language(spec: str, cfg: ClosureConfig, config: ToolkitConfig) -> FiniteLanguage:
    return enumerate_language(load_operand(spec), cfg.length_cap, config.limits.enumeration_cap)


def _cmd_oracle(args: argparse.Namespace, config: ToolkitConfig) -> int:
    arity = 1 if args.kind == "closure" else 2
    if len(args.operands) != arity:
        raise UsageError(f"oracle {args.kind} takes {arity} operand(s), got {len(args.operands)}")
    direction = normalize_direction(args.direction) if args.direction else None
    cfg = config.closure.closure_config(args.max_len, args.intermediate_cap, args.max_iter, direction)
    overlaps = _rule_set(args)
    languages = [_oracle_language(spec, cfg, config) for spec in args.operands]
    if args.kind == "closure":
        closure = bounded_closure_r if args.restricted else bounded_closure_u
        result = closure(languages[0], overlaps, cfg)
    elif args.kind == "pair":
        result = bounded_closure_pair(languages[0], languages[1], overlaps, cfg)
    else:
        result = bounded_gs(languages[0], languages[1], overlaps, cfg)
    logger.info("Oracle %s produced %d words up to length %d", args.kind, len(result), cfg.max_len)
    _write(write_words(result))
    return EXIT_OK


_COMMANDS: Dict[str, Callable[[argparse.Namespace, ToolkitConfig], int]] = {
    "cross": _cmd_cross,
    "closure": _cmd_closure,
    "star-pair": _cmd_star_pair,
    "splice": _cmd_splice,
    "member": _cmd_member,
    "enum": _cmd_enum,
    "eqv": _cmd_eqv,
    "min": _cmd_min,
    "oracle": _cmd_oracle,
}


def main(argv: List[str] | None = None) -> int:
    parser = build_argument_parser()
    try:
        args = parser.parse_args(argv)
        config = _resolve_config(args)
    except (UsageError, ConfigError) as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE

    if args.log_level:
        config.log_level = args.log_level
    logging.basicConfig(level=config.log_level_value, format="[%(levelname)s] %(message)s")
    logger.debug("Using limits profile '%s'", config.limits.name)

    try:
        return _COMMANDS[args.command](args, config)
    except (UsageError, OperandError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except (RegexSyntaxError, FormatError) as exc:
        logger.error("Parse error: %s", exc)
        return EXIT_PARSE
    except (CapExceededError, ClosureIterationError) as exc:
        logger.error("Resource limit reached: %s", exc)
        return EXIT_RESOURCE
    except ValueError as exc:
        logger.error("%s", exc)
        return EXIT_SEMANTIC
    except OSError as exc:
        logger.error("File access failed: %s", exc)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - CLI surface
        logger.error("Command '%s' failed: %s", args.command, exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
