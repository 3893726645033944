import pathlib
import sys

import rich_click as click
from rich import box
from rich.table import Table

from cyclotomic_bmw.admissibility import check_wilcox_yu
from cyclotomic_bmw.datatypes import (
    AdmissibilityModel,
    DeltaEntry,
    DeltaReport,
    RelationModel,
)
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

params_file_argument = click.argument(
    "params_file",
    required=False,
    type=click.Path(exists=True, dir_okay=False, path_type=pathlib.Path),
)


@click.group()
def params():
    """Check parameter systems and list their loop values."""
    pass


@params.command("check")
@params_file_argument
@click.option("--r", "r", type=click.IntRange(min=1), help="Use generic parameters for this r.")
@click.option("--window", type=click.IntRange(min=0), help="Number of recursion indices to check.")
@output_options()
def check_params(params_file, r, window, fmt, output):
    """Check the admissibility conditions of a parameter system.

    PARAMS_FILE is a JSON file such as

    \b
        {"r": 2, "rho": "canonical", "q": "q", "u": ["u1", "u2"],
         "deltas": ["d0", "d1"]}

    Without explicit deltas the loop values follow from the closed form.
    Exits with status 1 when a relation fails.
    """
    config = run_config(format=fmt, window=window)
    p = load_params(params_file, r)
    try:
        report = check_wilcox_yu(p, recursion_window=config.window)
    except DegenerateParameters as exc:
        raise click.BadParameter(str(exc), param_hint="PARAMS_FILE")
    relations = [RelationModel.from_result(result) for result in report.relations]
    model = AdmissibilityModel(
        ok=report.ok,
        weakly_admissible=report.weakly_admissible,
        wilcox_yu_linear=report.wilcox_yu_1,
        wilcox_yu_rho=report.wilcox_yu_2,
        delta_recursion=report.recursion_3,
        ground_relation=report.ground_relation,
        u_admissible=report.u_admissible,
        relations=relations,
    )
    match config.format:
        case "json":
            emit(model.model_dump_json(indent=2), output)
        case "tsv":
            emit(relations_tsv(relations), output)
        case "pretty":
            emit(render_table(relations_table(relations, title=f"Parameters r={p.r}")), output)
    if not model.ok:
        report_failures(relations)
        sys.exit(1)


@params.command("deltas")
@params_file_argument
@click.option("--r", "r", type=click.IntRange(min=1), help="Use generic parameters for this r.")
@click.option("--from", "start", type=int, default=0, show_default=True, help="First index.")
@click.option("--to", "stop", type=int, default=4, show_default=True, help="Last index.")
@output_options()
def list_deltas(params_file, r, start, stop, fmt, output):
    """List the loop values delta_a and how each one was obtained.

    Sources are closed-form, recursion, explicit and negative-recursion.
    """
    if start > stop:
        raise click.BadParameter("--from must not exceed --to.")
    config = run_config(format=fmt)
    p = load_params(params_file, r)
    try:
        entries = [
            DeltaEntry(index=a, value=str(p.delta(a)), source=p.delta_source(a))
            for a in range(start, stop + 1)
        ]
    except DegenerateParameters as exc:
        raise click.BadParameter(str(exc), param_hint="PARAMS_FILE")
    report = DeltaReport(r=p.r, deltas=entries)
    match config.format:
        case "json":
            emit(report.model_dump_json(indent=2), output)
        case "tsv":
            emit(
                "\n".join(f"{e.index}\t{e.value}\t{e.source}" for e in entries), output
            )
        case "pretty":
            table = Table(box=box.HORIZONTALS)
            table.add_column("a")
            table.add_column("delta_a")
            table.add_column("Source")
            for e in entries:
                table.add_row(str(e.index), e.value, e.source)
            emit(render_table(table), output)
