import pathlib

import rich_click as click
from rich import box
from rich.table import Table

from cyclotomic_bmw.datatypes import WeightReport
from cyclotomic_bmw.ground_ring import DegenerateParameters, NonCanonicalRho
from cyclotomic_bmw.multipartitions import tableau_counts
from cyclotomic_bmw.trace_weights import ShapeInconsistency, weight_table
from cyclotomic_bmw.utils import emit, load_params, output_options, render_table, run_config


@click.group()
def weights():
    """Markov trace weights of path idempotents."""
    pass


@weights.command("table")
@click.option("--r", "r", type=click.IntRange(min=1), help="Use generic parameters for this r.")
@click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Tableau length.")
@click.option(
    "--spec",
    "params_file",
    type=click.Path(exists=True, dir_okay=False, path_type=pathlib.Path),
    help="Parameter file with symbolic or specialized values.",
)
@click.option("--threads", type=click.IntRange(min=1), help="Worker threads.")
@output_options()
def weight_table_command(r, n, params_file, threads, fmt, output):
    """Tabulate the weight w_n of every shape of level N.

    All tableaux of one shape share a weight; the table lists it once per
    shape. Weights need the canonical rho.
    """
    config = run_config(format=fmt, threads=threads)
    p = load_params(params_file, r)
    try:
        table = weight_table(n, p, config.threads)
    except (NonCanonicalRho, DegenerateParameters) as exc:
        raise click.BadParameter(str(exc), param_hint="--spec")
    except ShapeInconsistency as exc:
        raise click.ClickException(str(exc))
    report = WeightReport(n=n, r=p.r, weights=table.to_json())
    match config.format:
        case "json":
            emit(report.model_dump_json(indent=2), output)
        case "tsv":
            emit("\n".join(f"{k}\t{v}" for k, v in report.weights.items()), output)
        case "pretty":
            counts = tableau_counts(n, p.r)
            rich_table = Table(box=box.HORIZONTALS, title=f"Weights at level {n}")
            rich_table.add_column("Shape")
            rich_table.add_column("Tableaux", justify="right")
            rich_table.add_column("Weight")
            for shape, weight in table.entries.items():
                rich_table.add_row(shape.label(), str(counts[shape]), str(weight))
            emit(render_table(rich_table), output)
