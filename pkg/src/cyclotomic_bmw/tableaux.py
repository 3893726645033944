import rich_click as click
from rich import box
from rich.table import Table

from cyclotomic_bmw.datatypes import CountReport, TableauxReport
from cyclotomic_bmw.multipartitions import (
    ShapeNotInLevel,
    enumerate_tableaux,
    render_multipartition,
    tableau_counts,
)
from cyclotomic_bmw.utils import emit, output_options, parse_shape, render_table, run_config


@click.group()
def tableaux():
    """Count and list up-down tableaux."""
    pass


@tableaux.command("count")
@click.option("--r", "r", type=click.IntRange(min=1), required=True, help="Number of components.")
@click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Tableau length.")
@output_options()
def count_tableaux(r, n, fmt, output):
    """Count the up-down tableaux of length N for every shape.

    Example:

        cybmw tableaux count --r 1 --n 3

    Shapes are listed by size, then by decreasing count.
    """
    config = run_config(format=fmt)
    counts = dict(
        sorted(tableau_counts(n, r).items(), key=lambda item: (item[0].size, -item[1]))
    )
    report = CountReport(
        total=sum(counts.values()),
        by_shape={shape.label(): count for shape, count in counts.items()},
    )
    match config.format:
        case "json":
            emit(report.model_dump_json(), output)
        case "tsv":
            emit("\n".join(f"{k}\t{v}" for k, v in report.by_shape.items()), output)
        case "pretty":
            table = Table(box=box.HORIZONTALS, title=f"{report.total} tableaux")
            table.add_column("Shape")
            table.add_column("Count", justify="right")
            for shape, count in report.by_shape.items():
                table.add_row(shape, str(count))
            emit(render_table(table), output)


@tableaux.command("list")
@click.option("--r", "r", type=click.IntRange(min=1), required=True, help="Number of components.")
@click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Tableau length.")
@click.option("--shape", help='Only tableaux ending at this shape, e.g. "[[1],[]]".')
@output_options(formats=("json", "pretty"))
def list_tableaux(r, n, shape, fmt, output):
    """List the up-down tableaux of length N in enumeration order."""
    config = run_config(format=fmt)
    target = parse_shape(shape) if shape is not None else None
    try:
        found = enumerate_tableaux(n, r, target)
    except ShapeNotInLevel as exc:
        raise click.BadParameter(str(exc), param_hint="--shape")
    if config.format == "pretty":
        blocks = []
        for tableau in found:
            blocks.append(f"{tableau}\n{render_multipartition(tableau.shape)}")
        emit("\n\n".join(blocks), output)
    else:
        report = TableauxReport(n=n, r=r, tableaux=[t.to_json() for t in found])
        emit(report.model_dump_json(), output)
