from __future__ import annotations

from pathlib import Path

import click
from bfs1d.bench.config import (
    BACKEND_ALIASES,
    DEFAULT_REPETITIONS,
    DEFAULT_RESULTS_CSV,
    FAMILY_ALIASES,
    FRONTIER_ALIASES,
    GRAPHS_DIR,
    ScalingMode,
)
from bfs1d.bench.errors import BenchError, BenchIOError, BenchUsageError
from bfs1d.bench.plan import BenchPlan
from bfs1d.bench.records import read_records
from bfs1d.bench.runner import run_plan
from bfs1d.bench.summary import summarize
from bfs1d.common.logs import setup_logging
from bfs1d.core.config import GraphFamily, MergeTransport, Strategy
from bfs1d.core.errors import CorrectnessViolationError, GraphError
from bfs1d.core.generators import GeneratorSpec, default_edge_prob, generate
from bfs1d.core.io import write_edge_list
from bfs1d.transport import TransportError
from loguru import logger
from pydantic import ValidationError

EXIT_USAGE = 1
EXIT_CORRECTNESS = 3

LOG_LEVELS = ["TRACE", "DEBUG", "INFO", "WARNING", "ERROR"]


class BenchCliError(click.ClickException):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


class BenchGroup(click.Group):
    """Maps harness errors to the documented exit codes."""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise
        except BenchError as e:
            raise BenchCliError(str(e), e.exit_code) from None
        except CorrectnessViolationError as e:
            raise BenchCliError(str(e), EXIT_CORRECTNESS) from None
        except (GraphError, ValidationError) as e:
            raise BenchCliError(str(e), EXIT_USAGE) from None
        except TransportError as e:
            logger.error(f"Rank world failed: {e}")
            raise BenchCliError(str(e), EXIT_USAGE) from None


def _parse_list(value: str, option: str, aliases: dict) -> list:
    items = [item.strip() for item in value.split(",") if item.strip()]
    if not items:
        raise click.BadParameter("At least one value is needed", param_hint=option)
    try:
        return [aliases[item] for item in items]
    except KeyError as e:
        raise click.BadParameter(
            f"Unknown value {e}; choose from {', '.join(aliases)}", param_hint=option
        ) from None


def _parse_ranks(value: str) -> list[int]:
    try:
        return [int(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(
            f"Expected comma-separated integers, got '{value}'", param_hint="--ranks"
        ) from None


def _generator_spec(
    family: str,
    n: int,
    edge_prob: float | None,
    k: int | None,
    rewire_prob: float | None,
    seed: int,
    chunk_size: int | None,
) -> GeneratorSpec:
    return GeneratorSpec(
        family=FAMILY_ALIASES[family],
        n=n,
        edge_prob=edge_prob,
        ring_degree=k,
        rewire_prob=rewire_prob,
        seed=seed,
        chunk_size=chunk_size,
    )


def graph_options(func):
    """Options describing a generated graph, shared by `gen` and `run`."""
    options = [
        click.option(
            "--family",
            type=click.Choice(list(FAMILY_ALIASES)),
            help="Graph family to generate.",
        ),
        click.option("--n", "n", type=int, help="Vertex count."),
        click.option(
            "--edge-prob",
            type=float,
            help="Erdős–Rényi edge probability (default: expected degree 16).",
        ),
        click.option("--k", "k", type=int, help="Watts–Strogatz ring degree (even)."),
        click.option(
            "--rewire-prob", type=float, help="Watts–Strogatz rewiring probability."
        ),
        click.option("--seed", type=int, default=0, show_default=True),
        click.option(
            "--chunk-size", type=int, help="Source vertices generated per chunk."
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group(cls=BenchGroup)
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default=None,
    help="Log level (default: BFS1D_LOG_LEVEL env var, then INFO).",
)
def cli(log_level: str | None) -> None:
    """Distributed 1-D BFS benchmark harness."""
    setup_logging(log_level)


@cli.command()
@graph_options
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Edge-list file to write (default: the data directory).",
)
def gen(
    family: str | None,
    n: int | None,
    edge_prob: float | None,
    k: int | None,
    rewire_prob: float | None,
    seed: int,
    chunk_size: int | None,
    out: Path | None,
) -> None:
    """Generates a graph and writes it as an edge list."""
    if family is None or n is None:
        raise click.UsageError("Both --family and --n are required")

    if FAMILY_ALIASES[family] == GraphFamily.ERDOS_RENYI and edge_prob is None:
        edge_prob = default_edge_prob(n)
    spec = _generator_spec(family, n, edge_prob, k, rewire_prob, seed, chunk_size)
    out = out or GRAPHS_DIR / f"{spec.family.value}_n{n}_seed{seed}.txt"

    edges = generate(spec)
    try:
        write_edge_list(edges, out)
    except OSError as e:
        raise BenchIOError(f"Cannot write graph to '{out}': {e}") from None

    logger.success(f"Graph written: '{out}' (n={n}, edges={edges.edge_count})")
    click.echo(str(out))


@cli.command()
@click.option(
    "--graph",
    "graph_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Edge-list file to load instead of generating a graph.",
)
@graph_options
@click.option("--source", type=int, default=0, show_default=True)
@click.option(
    "--mode",
    type=click.Choice([m.value for m in ScalingMode]),
    default=ScalingMode.STRONG.value,
    show_default=True,
)
@click.option(
    "--per-rank-n", type=int, help="Vertices per rank (weak scaling, n = value * p)."
)
@click.option("--ranks", default="1", show_default=True, help="E.g. '1,2,4'.")
@click.option(
    "--strategy",
    default="baseline,optimized",
    show_default=True,
    help="Comma-separated subset of: baseline, optimized.",
)
@click.option(
    "--frontier",
    default="master,distributed",
    show_default=True,
    help="Comma-separated subset of: master, distributed.",
)
@click.option(
    "--merge",
    type=click.Choice([m.value for m in MergeTransport]),
    default=MergeTransport.COLLECTIVE.value,
    show_default=True,
    help="How master_merge moves frontiers.",
)
@click.option(
    "--backend",
    type=click.Choice(list(BACKEND_ALIASES)),
    default="inproc",
    show_default=True,
)
@click.option("--reps", type=int, default=DEFAULT_REPETITIONS, show_default=True)
@click.option("--timeout", type=float, help="Per-call transport timeout in seconds.")
@click.option(
    "--oracle-limit",
    type=int,
    help="Largest n verified against serial BFS (default: BFS1D_ORACLE_LIMIT).",
)
@click.option(
    "--csv",
    "csv_path",
    type=click.Path(dir_okay=False, path_type=Path),
    default=DEFAULT_RESULTS_CSV,
    show_default=True,
)
def run(
    graph_path: Path | None,
    family: str | None,
    n: int | None,
    edge_prob: float | None,
    k: int | None,
    rewire_prob: float | None,
    seed: int,
    chunk_size: int | None,
    source: int,
    mode: str,
    per_rank_n: int | None,
    ranks: str,
    strategy: str,
    frontier: str,
    merge: str,
    backend: str,
    reps: int,
    timeout: float | None,
    oracle_limit: int | None,
    csv_path: Path,
) -> None:
    """Runs a scaling sweep and writes one CSV row per run."""
    scaling_mode = ScalingMode(mode)

    graph = None
    if family is not None:
        if n is None:
            if scaling_mode != ScalingMode.WEAK or per_rank_n is None:
                raise click.UsageError("--n is required with --family")
            n = per_rank_n
        graph = _generator_spec(family, n, edge_prob, k, rewire_prob, seed, chunk_size)

    plan_kwargs = dict(
        mode=scaling_mode,
        graph=graph,
        graph_path=graph_path,
        per_rank_n=per_rank_n,
        source=source,
        ranks=_parse_ranks(ranks),
        strategies=_parse_list(strategy, "--strategy", {s.value: s for s in Strategy}),
        frontier_modes=_parse_list(frontier, "--frontier", FRONTIER_ALIASES),
        merge_transport=MergeTransport(merge),
        backend=BACKEND_ALIASES[backend],
        repetitions=reps,
        timeout_s=timeout,
        output=csv_path,
    )
    if oracle_limit is not None:
        plan_kwargs["oracle_limit"] = oracle_limit

    try:
        plan = BenchPlan(**plan_kwargs)
    except ValidationError as e:
        raise BenchUsageError(f"Invalid benchmark plan: {e}") from None

    records = run_plan(plan)
    click.echo(summarize(records))


@cli.command(name="summarize")
@click.option(
    "--csv",
    "csv_path",
    type=click.Path(dir_okay=False, path_type=Path),
    default=DEFAULT_RESULTS_CSV,
    show_default=True,
)
def summarize_cmd(csv_path: Path) -> None:
    """Prints the scaling summary of a results CSV."""
    click.echo(summarize(read_records(csv_path)))


def main() -> None:
    from bfs1d.common.common import load_monorepo_dotenv

    load_monorepo_dotenv()

    cli(prog_name="bfs1d")


if __name__ == "__main__":
    main()
