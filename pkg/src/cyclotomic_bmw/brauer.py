import pathlib
import sys

import rich_click as click
from rich import box
from rich.table import Table

from cyclotomic_bmw.datatypes import (
    DiagramCountReport,
    DiagramModel,
    GramReport,
    ProductReport,
)
from cyclotomic_bmw.utils import (
    emit,
    err_console,
    load_diagram,
    load_thetas,
    output_options,
    render_table,
    run_config,
)
from cyclotomic_bmw.verification import random_rational, trial_generators
from cyclotomic_bmw.zr_brauer import (
    ParameterMismatch,
    SizeMismatch,
    compose,
    diagram_count_formula,
    enumerate_diagrams,
    gram_determinant,
    gram_matrix,
    symbolic_thetas,
)

diagram_argument = click.Path(exists=True, dir_okay=False, path_type=pathlib.Path)
theta_option = click.option(
    "--theta",
    "theta_file",
    type=click.Path(exists=True, dir_okay=False, path_type=pathlib.Path),
    help='JSON file with the loop parameters, e.g. {"thetas": ["3", "1/2"]}.',
)


@click.group()
def brauer():
    """Z_r-Brauer diagrams: counting, products and the trace form."""
    pass


@brauer.command("count")
@click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Number of strands.")
@click.option("--r", "r", type=click.IntRange(min=1), required=True, help="Label modulus.")
@output_options(formats=("json", "tsv"))
def count_diagrams(n, r, fmt, output):
    """Count the diagrams on N strands and compare with r^n (2n-1)!!."""
    config = run_config(format=fmt)
    report = DiagramCountReport(
        n=n, r=r, count=len(enumerate_diagrams(n, r)), formula=diagram_count_formula(n, r)
    )
    if config.format == "tsv":
        emit(f"{report.n}\t{report.r}\t{report.count}\t{report.formula}", output)
    else:
        emit(report.model_dump_json(), output)


@brauer.command("mul")
@click.argument("first", type=diagram_argument)
@click.argument("second", type=diagram_argument)
@theta_option
@output_options(formats=("json", "pretty"))
def multiply_diagrams(first, second, theta_file, fmt, output):
    """Multiply the diagrams in the files FIRST and SECOND.

    The product stacks SECOND over FIRST. Loop parameters stay symbolic
    (th0, th1, ...) unless --theta gives numbers. A diagram file looks like

    \b
        {"n": 2, "r": 3, "strands": [{"ends": ["t1", "b2"], "label": 1},
                                     {"ends": ["t2", "b1"], "label": 0}]}
    """
    config = run_config(format=fmt)
    a, b = load_diagram(first), load_diagram(second)
    thetas = symbolic_thetas(a.r)
    if theta_file is not None:
        thetas = load_thetas(theta_file)
        if len(thetas) != a.r // 2 + 1:
            raise click.BadParameter(
                f"Expected {a.r // 2 + 1} loop parameters.", param_hint="--theta"
            )
    try:
        scalar, c = compose(a, b, thetas)
    except (SizeMismatch, ParameterMismatch) as exc:
        raise click.UsageError(str(exc))
    report = ProductReport(scalar=str(scalar), diagram=DiagramModel(**c.to_json()))
    if config.format == "pretty":
        emit(f"{report.scalar} * {c}", output)
    else:
        emit(report.model_dump_json(indent=2), output)


@brauer.command("gram")
@click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Number of strands.")
@click.option("--r", "r", type=click.IntRange(min=1), required=True, help="Label modulus.")
@theta_option
@click.option("--seed", type=int, help="Draw random loop parameters from this seed.")
@click.option("--threads", type=click.IntRange(min=1), help="Worker threads.")
@output_options()
def gram(n, r, theta_file, seed, threads, fmt, output):
    """Compute the determinant of the trace form on the diagram basis.

    The trace form is non-degenerate at generic loop parameters; exits with
    status 1 when the determinant vanishes.
    """
    config = run_config(format=fmt, seed=seed, threads=threads)
    if theta_file is not None:
        thetas = load_thetas(theta_file)
    else:
        rng = trial_generators(config.seed, 1)[0]
        thetas = [random_rational(rng) for _ in range(r // 2 + 1)]
    if len(thetas) != r // 2 + 1 or thetas[0] == 0:
        raise click.BadParameter(
            f"Need {r // 2 + 1} loop parameters with theta_0 != 0.", param_hint="--theta"
        )
    rows = gram_matrix(n, r, thetas, config.threads)
    determinant = gram_determinant(rows)
    report = GramReport(
        n=n,
        r=r,
        size=len(rows),
        thetas=[str(theta) for theta in thetas],
        determinant=str(determinant),
        nondegenerate=determinant != 0,
    )
    match config.format:
        case "json":
            emit(report.model_dump_json(indent=2), output)
        case "tsv":
            emit(f"{report.size}\t{report.determinant}", output)
        case "pretty":
            table = Table(box=box.HORIZONTALS, title=f"Trace form, n={n}, r={r}")
            table.add_column("Size", justify="right")
            table.add_column("Loop parameters")
            table.add_column("Determinant")
            table.add_row(str(report.size), ", ".join(report.thetas), report.determinant)
            emit(render_table(table), output)
    if not report.nondegenerate:
        err_console.print("[bold red]The trace form is degenerate.[/bold red]")
        sys.exit(1)
