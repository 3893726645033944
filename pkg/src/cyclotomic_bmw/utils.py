import io
import json
import os
import pathlib
from fractions import Fraction

import rich_click as click
from pydantic import ValidationError
from rich import box
from rich.console import Console
from rich.table import Table

from cyclotomic_bmw import configfile
from cyclotomic_bmw.datatypes import (
    DiagramFile,
    ParamsFile,
    RelationModel,
    RunConfig,
    ThetaFile,
)
from cyclotomic_bmw.ground_ring import DegenerateParameters, GroundParams, canonical_rho
from cyclotomic_bmw.laurent import LaurentRing
from cyclotomic_bmw.multipartitions import InvalidShape, Multipartition
from cyclotomic_bmw.ratfunc import ParseError, RatFunc, parse_ratfunc
from cyclotomic_bmw.zr_brauer import InvalidMatching, ZrBrauerDiagram

THREADS_VARIABLE = "CYBMW_THREADS"

err_console = Console(stderr=True)


def run_config(**flags) -> RunConfig:
    """Merge command-line flags, environment and config file into a RunConfig.

    Flags that are None fall back to CYBMW_THREADS (threads only), then to the
    config file and finally to the built-in defaults.
    """
    stored = configfile.read_config()
    settings = {key: stored[key] for key in configfile.KEYS if key in stored}
    settings.setdefault("threads", os.cpu_count() or 1)
    if THREADS_VARIABLE in os.environ:
        settings["threads"] = os.environ[THREADS_VARIABLE]
    settings.update({key: value for key, value in flags.items() if value is not None})
    try:
        return RunConfig(**settings)
    except ValidationError as exc:
        raise click.BadParameter(_first_error(exc))


def _first_error(exc: ValidationError) -> str:
    error = exc.errors()[0]
    location = ".".join(str(part) for part in error["loc"])
    return f"{location}: {error['msg']}" if location else error["msg"]


def output_options(formats=("json", "tsv", "pretty")):
    """Add --format and --output to a report-producing command."""

    def decorator(f):
        f = click.option(
            "-o",
            "--output",
            type=click.Path(dir_okay=False, path_type=pathlib.Path),
            help="Write the report to this file instead of standard output.",
        )(f)
        f = click.option(
            "-f",
            "--format",
            "fmt",
            type=click.Choice(formats),
            help="Report format; defaults to the configured format.",
        )(f)
        return f

    return decorator


def emit(contents: str, output: pathlib.Path | None):
    if output is None:
        click.echo(contents)
        return
    try:
        output.write_text(contents + "\n", encoding="utf-8")
    except OSError:
        raise click.BadParameter(
            f"Output file {output} cannot be created.", param_hint="--output"
        )


def render_table(table: Table) -> str:
    """Render a rich table to plain text."""
    buffer = io.StringIO()
    Console(file=buffer, width=120, color_system=None).print(table)
    return buffer.getvalue().rstrip("\n")


def relations_table(relations: list[RelationModel], title: str | None = None) -> Table:
    table = Table(box=box.HORIZONTALS, title=title)
    table.add_column("Relation")
    table.add_column("Status")
    table.add_column("Residual")
    for relation in relations:
        name = relation.name
        if relation.description is not None:
            name += f" ({relation.description})"
        if relation.trial is not None:
            name += f" (trial {relation.trial})"
        table.add_row(name, "ok" if relation.passed else "FAILED", relation.residual)
    return table


def relations_tsv(relations: list[RelationModel], section: str | None = None) -> str:
    lines = []
    for relation in relations:
        fields = [relation.name, "ok" if relation.passed else "failed", relation.residual]
        if relation.trial is not None:
            fields.append(str(relation.trial))
        if section is not None:
            fields.insert(0, section)
        lines.append("\t".join(fields))
    return "\n".join(lines)


def report_failures(relations: list[RelationModel]):
    """Print failing relations on stderr."""
    for relation in relations:
        if not relation.passed:
            trial = f" in trial {relation.trial}" if relation.trial is not None else ""
            err_console.print(
                f"[bold red]{relation.name} fails{trial}:[/bold red] {relation.residual}",
                markup=True,
                highlight=False,
            )


def _read_model(path: pathlib.Path, model, hint: str):
    try:
        return model.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError:
        raise click.BadParameter(f"Cannot read {path}.", param_hint=hint)
    except ValidationError as exc:
        raise click.BadParameter(f"{path}: {_first_error(exc)}", param_hint=hint)


def _parse(text: str, ring: LaurentRing, hint: str) -> RatFunc:
    try:
        return parse_ratfunc(text, ring)
    except ParseError as exc:
        raise click.BadParameter(str(exc), param_hint=hint)


def params_from_model(model: ParamsFile) -> GroundParams:
    """Build a parameter system from a validated parameter file.

    Symbolic files are read over Q(q, u1, ..., ur); specialized files give
    rational values for q and the u_j.
    """
    r = model.r
    if model.mode == "symbolic":
        ring = LaurentRing(("q", *(f"u{j}" for j in range(1, r + 1)), "t"))
        u_texts = model.u or [f"u{j}" for j in range(1, r + 1)]
    else:
        ring = LaurentRing(("t",))
        u_texts = model.u
    q = _parse(model.q, ring, "q")
    u = tuple(_parse(text, ring, "u") for text in u_texts)
    if model.rho == "canonical":
        rho = canonical_rho(r, u, q)
    else:
        rho = _parse(model.rho, ring, "rho")
    deltas = None
    if model.deltas is not None:
        deltas = tuple(_parse(text, ring, "deltas") for text in model.deltas)
    try:
        return GroundParams(
            r=r,
            ring=ring,
            q=q,
            u=u,
            rho=rho,
            mode=model.mode,
            initial_deltas=deltas,
        )
    except DegenerateParameters as exc:
        raise click.BadParameter(str(exc), param_hint="PARAMS_FILE")


def load_params(path: pathlib.Path | None, r: int | None) -> GroundParams:
    """Parameters from a file, or generic symbolic parameters for r."""
    if path is not None:
        return params_from_model(_read_model(path, ParamsFile, "PARAMS_FILE"))
    if r is None:
        raise click.UsageError("Give a parameter file or --r.")
    return GroundParams.symbolic(r)


def load_diagram(path: pathlib.Path) -> ZrBrauerDiagram:
    model = _read_model(path, DiagramFile, "DIAGRAM")
    try:
        return ZrBrauerDiagram.from_json(model.model_dump())
    except InvalidMatching as exc:
        raise click.BadParameter(f"{path}: {exc}", param_hint="DIAGRAM")


def load_thetas(path: pathlib.Path) -> list[Fraction]:
    model = _read_model(path, ThetaFile, "--theta")
    try:
        return [Fraction(text) for text in model.thetas]
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(
            f"{path}: loop parameters must be rationals.", param_hint="--theta"
        )


def parse_shape(text: str) -> Multipartition:
    """Read a multipartition such as `[[2,1],[]]`."""
    try:
        data = json.loads(text)
        return Multipartition.from_json(data)
    except (json.JSONDecodeError, TypeError, InvalidShape) as exc:
        raise click.BadParameter(f"Invalid shape {text}: {exc}", param_hint="--shape")
