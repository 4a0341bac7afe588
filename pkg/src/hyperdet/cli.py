"""
Command line front end.

Every subcommand prints one report on standard output, as text or as JSON
with sorted keys. Exit codes: 0 when every check passes, 1 for usage and
input errors, 2 when an identity check fails, 3 when an enumeration is
refused by the budget.
"""

import functools
import json
import logging
import sys
from dataclasses import replace
from collections.abc import Callable, Sequence
from typing import Any, Optional, TextIO

import click
from click.core import ParameterSource

from .config import EngineConfig
from .exceptions import BudgetExceededError, HyperdetError, IdentityCheckError
from .hypergraph import DeterminantEngine, parse_matrix
from .hypergraph.models import IncidenceStructure, SignProbe
from .hypergraph.permutations import Permutation
from .report_types import CommandReport

logger = logging.getLogger("hyperdet")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_IDENTITY = 2
EXIT_BUDGET = 3


def render_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


def render_text(payload: Any, indent: int = 0) -> str:
    """Indented ``key: value`` lines; multi-line strings become blocks."""
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(payload, dict):
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, dict) and value or isinstance(value, list) and value and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            elif isinstance(value, str) and "\n" in value:
                lines.append(f"{pad}{key}:")
                lines.extend(f"{pad}  {row}" for row in value.splitlines())
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(payload, list):
        for item in payload:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            elif isinstance(item, str) and "\n" in item:
                lines.append(f"{pad}-")
                lines.extend(f"{pad}  {row}" for row in item.splitlines())
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(payload)}")
    return "\n".join(lines)


def _is_flat(value: Any) -> bool:
    """Lists of scalars, or of rows of scalars, print on one line."""
    return isinstance(value, list) and all(
        _is_scalar(item) or isinstance(item, list) and all(_is_scalar(x) for x in item) for item in value
    )


def _is_scalar(value: Any) -> bool:
    if isinstance(value, str):
        return "\n" not in value
    return not isinstance(value, (dict, list))


def _scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, list):
        return json.dumps(value)
    return str(value)


class CliState:
    """Per-invocation settings shared by the subcommands."""

    def __init__(self, config: EngineConfig, output_format: str):
        self.config = config
        self.output_format = output_format
        self.engine = DeterminantEngine(config=config)

    def emit(self, report: CommandReport) -> int:
        if self.output_format == "json":
            click.echo(render_json(report.payload))
        else:
            click.echo(f"[{report.command}]")
            click.echo(render_text(report.payload))
        if report.budget_required is not None:
            click.echo(
                f"Contributor enumeration needs {report.budget_required} visits; budget is {self.config.budget}",
                err=True,
            )
            return EXIT_BUDGET
        if not report.checks_passed:
            logger.error(f"{report.command}: an identity check failed")
            return EXIT_IDENTITY
        return EXIT_OK


def engine_options(command: Callable[..., int]) -> Callable[..., int]:
    """Flags shared by every engine subcommand; they override the environment."""

    @click.option("--budget", type=click.IntRange(min=0), default=None, help="Maximum contributors (or local-search evaluations) one operation may visit")
    @click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker processes; output does not depend on it")
    @click.option("--format", "output_format", type=click.Choice(["text", "json"]), default="text", show_default=True)
    @click.option("--timings", is_flag=True, default=False, help="Attach per-class elapsed seconds")
    @click.option("-v", "--verbose", is_flag=True, default=False, help="Log at INFO level")
    @functools.wraps(command)
    def wrapper(
        budget: Optional[int],
        workers: Optional[int],
        output_format: str,
        timings: bool,
        verbose: bool,
        **kwargs: Any,
    ) -> int:
        config = EngineConfig.from_env().with_overrides(
            budget=budget,
            workers=workers,
            record_timings=timings or None,
            log_level="INFO" if verbose else None,
        )
        _configure_logging(config.log_level)
        return command(CliState(config, output_format), **kwargs)

    return wrapper


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    logger.setLevel(getattr(logging, level, logging.WARNING))
    # Search progress reaches stderr at any log level
    progress = logging.getLogger("hyperdet.progress")
    progress.handlers.clear()
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(message)s"))
    progress.addHandler(handler)
    progress.setLevel(logging.INFO)
    progress.propagate = False


def read_structure(source: TextIO) -> IncidenceStructure:
    return parse_matrix(source.read())


def parse_identifier(text: Optional[str], n: int) -> Optional[Permutation]:
    if text is None:
        return None
    return Permutation.parse(text, n=n)


@click.group()
@click.version_option(package_name="hyperdet")
def cli() -> None:
    """Exact determinants of {±1}-matrices through oriented hypergraph contributors."""


@cli.command()
@click.argument("matrix", type=click.File("r"), default="-")
@engine_options
def det(state: CliState, matrix: TextIO) -> int:
    """Oracle det(H) and det(L), and det(L) counted over all contributors."""
    return state.emit(state.engine.det(read_structure(matrix)))


@cli.command()
@click.argument("matrix", type=click.File("r"), default="-")
@click.option("--class", "class_text", default=None, help='Identifier, e.g. "(1 2 3)" or "[2,3,1]"')
@click.option("--pair", "pair_text", default=None, help="Second identifier: report the adjacency-inverse pair")
@click.option("--transversal", is_flag=True, default=False, help="Reverse every class and check the head classes")
@engine_options
def classes(
    state: CliState,
    matrix: TextIO,
    class_text: Optional[str],
    pair_text: Optional[str],
    transversal: bool,
) -> int:
    """Edge-monic class tallies and the class-count identities."""
    structure = read_structure(matrix)
    alpha = parse_identifier(class_text, structure.size)
    beta = parse_identifier(pair_text, structure.size)
    if beta is not None and alpha is None:
        raise click.UsageError("--pair needs --class")
    return state.emit(state.engine.classes(structure, alpha, beta, transversal))


@cli.command()
@click.argument("matrix", type=click.File("r"), default="-")
@click.option("--general", is_flag=True, default=False, help="Exploratory run on a host that need not be full")
@engine_options
def verify(state: CliState, matrix: TextIO, general: bool) -> int:
    """Every non-edge-monic class sums to zero, with the transposition pairing."""
    return state.emit(state.engine.verify(read_structure(matrix), general=general))


@cli.command()
@click.argument("matrix", type=click.File("r"), default="-")
@engine_options
def reduce(state: CliState, matrix: TextIO) -> int:
    """Standardize, reduce to a {0,1} matrix and check |det H| = 2^(n-1) |det H'|."""
    return state.emit(state.engine.reduce(read_structure(matrix)))


@cli.command()
@click.argument("matrix", type=click.File("r"), default="-")
@engine_options
def probe(state: CliState, matrix: TextIO) -> int:
    """Probe-contributor signs of a standardized matrix, with the round trip."""
    return state.emit(state.engine.probe(read_structure(matrix)))


@cli.command()
@click.option("--probe", "probe_file", type=click.File("r"), required=True, help="SignProbe JSON")
@engine_options
def reconstruct(state: CliState, probe_file: TextIO) -> int:
    """Rebuild the standardized matrix from its probe signs."""
    try:
        sign_probe = SignProbe.model_validate(json.load(probe_file))
    except ValueError as e:
        raise click.BadParameter(f"not a valid sign probe: {e}", param_hint="--probe") from e
    return state.emit(state.engine.reconstruct(sign_probe))


@cli.command()
@click.argument("n", type=click.IntRange(min=1))
@click.option("--local", is_flag=True, default=False, help="Seeded hill climbing instead of exhaustive search")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--objective", type=click.Choice(["oracle", "classes"]), default="oracle", show_default=True)
@engine_options
def search(state: CliState, n: int, local: bool, seed: int, objective: str) -> int:
    """Maximum |det| over standardized n x n {±1}-matrices."""
    evaluations = None
    if local and _budget_given():
        # --budget counts candidate evaluations here, not contributors
        evaluations = state.config.budget
        state = CliState(replace(state.config, budget=EngineConfig.from_env().budget), state.output_format)
    return state.emit(
        state.engine.search_maxdet(n, local=local, seed=seed, budget=evaluations, objective=objective)  # type: ignore[arg-type]
    )


@cli.command()
@click.argument("n", type=click.IntRange(min=1))
@engine_options
def experiment(state: CliState, n: int) -> int:
    """Uniform probe-sign patterns against the exhaustive maximum."""
    return state.emit(state.engine.experiment(n))


@cli.command()
def serve() -> int:
    """Run the MCP tool server over stdio."""
    import asyncio

    from .server import main as server_main

    asyncio.run(server_main())
    return EXIT_OK


def _budget_given() -> bool:
    return click.get_current_context().get_parameter_source("budget") == ParameterSource.COMMANDLINE


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return its exit code."""
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name="hyperdet", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_INPUT
    except click.Abort:
        click.echo("Aborted.", err=True)
        return EXIT_INPUT
    except BudgetExceededError as e:
        click.echo(f"Error: {e}", err=True)
        click.echo(json.dumps({"error": str(e), "required": e.required, "budget": e.budget}, sort_keys=True), err=True)
        return EXIT_BUDGET
    except IdentityCheckError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_IDENTITY
    except HyperdetError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_INPUT
    return result if isinstance(result, int) else EXIT_OK
