import pathlib
import sys

import rich_click as click

from cyclotomic_bmw.datatypes import CheckReport, RelationModel
from cyclotomic_bmw.ground_ring import DegenerateParameters
from cyclotomic_bmw.utils import (
    emit,
    load_params,
    output_options,
    relations_table,
    relations_tsv,
    render_table,
    report_failures,
    run_config,
)
from cyclotomic_bmw.verification import randomized, w2_checks


@click.group()
def w2():
    """The r-dimensional module of the two-strand algebra."""
    pass


@w2.command("verify")
@click.option("--r", "r", type=click.IntRange(min=1), help="Use generic parameters for this r.")
@click.option(
    "--spec",
    "params_file",
    type=click.Path(exists=True, dir_okay=False, path_type=pathlib.Path),
    help="Parameter file with symbolic or specialized values.",
)
@click.option(
    "--randomized/--symbolic",
    "randomized_mode",
    default=False,
    help="Check at random rational points instead of symbolically.",
)
@click.option("--trials", type=click.IntRange(min=1), help="Number of random points.")
@click.option("--seed", type=int, help="Seed of the random points.")
@click.option("--window", type=click.IntRange(min=0), help="Check E Y^a E for |a| <= WINDOW.")
@click.option("--threads", type=click.IntRange(min=1), help="Worker threads.")
@output_options()
def verify_w2(r, params_file, randomized_mode, trials, seed, window, threads, fmt, output):
    """Build Y, E and G and check every defining relation exactly.

    Exits with status 1 when a relation fails.
    """
    config = run_config(
        format=fmt, trials=trials, seed=seed, window=window, threads=threads
    )
    try:
        if randomized_mode:
            if r is None:
                raise click.UsageError("Randomized checks need --r.")
            results = randomized(
                lambda p: w2_checks(p, config.window),
                r,
                config.trials,
                config.seed,
                config.threads,
            )
        else:
            results = w2_checks(load_params(params_file, r), config.window)
    except DegenerateParameters as exc:
        raise click.BadParameter(str(exc), param_hint="--spec")
    relations = [RelationModel.from_result(result) for result in results]
    report = CheckReport(ok=all(rel.passed for rel in relations), relations=relations)
    match config.format:
        case "json":
            emit(report.model_dump_json(indent=2), output)
        case "tsv":
            emit(relations_tsv(relations), output)
        case "pretty":
            emit(render_table(relations_table(relations, title="W2 relations")), output)
    if not report.ok:
        report_failures(relations)
        sys.exit(1)
