"""
Command-line entry point: knotalg {parse,quiver,algebra,check,grading,table}.

Exit codes: 0 success, 1 invalid input or configuration, 2 a structural check failed, 3 grading inconclusive
under --strict.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional

from src.models.exceptions import ConfigError, KnotAlgError
from src.pipeline.knot_algebra_pipeline import KnotAlgebraPipeline
from src.pipeline.run_config import FORMATS, RunConfig

logger = logging.getLogger("knotalg")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CHECK_FAILED = 2
EXIT_INCONCLUSIVE = 3

COMMANDS = ("parse", "quiver", "algebra", "check", "grading", "table")


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    source = parser.add_argument_group("input (exactly one)")
    source.add_argument("--pd", help='PD code, e.g. "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"')
    source.add_argument("--gauss", help='signed Gauss code, e.g. "O1+U2+O3+U1+O2+U3+"')
    source.add_argument("--file", help="file holding a PD or Gauss code")
    source.add_argument("--builtin", help="name from `knotalg table`, e.g. 3_1")

    algebra = parser.add_argument_group("algebra")
    algebra.add_argument("--field", default="ratfunc", help="rational | fp:<p> | ratfunc (default ratfunc)")
    algebra.add_argument("--q", help="value of q for --tau alpha-length outside ratfunc")
    algebra.add_argument("--tau", default="alpha-length", help="alpha-length | const:<v> | file:<path>")
    algebra.add_argument("--variant", default="lambda", choices=["lambda", "monomial"])

    grading = parser.add_argument_group("grading budgets")
    grading.add_argument("--rep-degree-max", type=int, dest="rep_degree_max", help="largest symmetric group degree N")
    grading.add_argument("--search-depth", type=int, dest="search_depth", help="most relator conjugates B")
    grading.add_argument("--conjugator-max", type=int, dest="conjugator_max", help="longest conjugator L")
    grading.add_argument("--max-states", type=int, dest="max_states", help="words visited by one relator search")
    grading.add_argument("--strict", action="store_true", help="exit 3 when grading is inconclusive")

    output = parser.add_argument_group("output")
    output.add_argument("--format", default="json", choices=list(FORMATS))
    output.add_argument("--output", help="write the report to this file")
    output.add_argument("--progress", action="store_true", help="show progress bars")
    output.add_argument("-v", "--verbose", action="store_true", help="debug logging")


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="knotalg", description="Algebras of oriented knot diagrams: build, verify and grade."
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS[:-1]:
        _add_run_options(commands.add_parser(command, help=f"{command} report"))
    table = commands.add_parser("table", help="list the builtin diagrams")
    table.add_argument("--format", default="json", choices=["json", "text"])
    table.add_argument("--output")
    table.add_argument("-v", "--verbose", action="store_true")
    return parser.parse_args(argv)


def render_text(value: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {item}")
        return "\n".join(lines)
    if isinstance(value, list):
        if all(not isinstance(item, (dict, list)) for item in value):
            return f"{pad}{', '.join(str(item) for item in value)}"
        return "\n".join(f"{pad}-\n{render_text(item, indent + 1)}" for item in value)
    return f"{pad}{value}"


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _exit_code(command: str, report: dict, strict: bool) -> int:
    if command == "check" and not report["passed"]:
        return EXIT_CHECK_FAILED
    if command == "grading" and strict and report["inconclusive"]:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = _parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "table":
            report = KnotAlgebraPipeline.table_report()
            text = render_text(report) + "\n" if args.format == "text" else json.dumps(report, indent=2) + "\n"
            _emit(text, args.output)
            return EXIT_OK

        config = RunConfig.from_mapping(vars(args))
        pipeline = KnotAlgebraPipeline(config)
        if config.output_format == "dot":
            if args.command != "quiver":
                raise ConfigError("--format dot is only available for the quiver command")
            _emit(pipeline.quiver_dot(), config.output)
            return EXIT_OK

        report = pipeline.run(args.command)
        if config.output_format == "text":
            text = render_text(report) + "\n"
        else:
            text = json.dumps(report, indent=2) + "\n"
        _emit(text, config.output)
        return _exit_code(args.command, report, config.strict)
    except KnotAlgError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
