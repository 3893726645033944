import sys

import jinja2
import rich_click as click

from cyclotomic_bmw.datatypes import RelationModel, SuiteReport
from cyclotomic_bmw.ground_ring import DegenerateParameters
from cyclotomic_bmw.utils import (
    emit,
    output_options,
    relations_tsv,
    report_failures,
    run_config,
)
from cyclotomic_bmw.verification import SampleCounts, verify_all


@click.group()
def verify():
    """Run the verification suite."""
    pass


@verify.command("all")
@click.option("--r", "r", type=click.IntRange(min=1), required=True, help="Label modulus.")
@click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Largest tableau length.")
@click.option(
    "--randomized/--symbolic",
    "randomized_mode",
    default=False,
    help="Check at random rational points instead of symbolically.",
)
@click.option("--trials", type=click.IntRange(min=1), help="Number of random points.")
@click.option("--seed", type=int, help="Seed of the random points and diagrams.")
@click.option("--window", type=click.IntRange(min=0), help="Index window of delta checks.")
@click.option("--threads", type=click.IntRange(min=1), help="Worker threads.")
@click.option(
    "--associativity-samples",
    type=click.IntRange(min=1),
    default=SampleCounts.associativity,
    show_default=True,
    help="Random diagram triples for the product identities.",
)
@click.option(
    "--trace-samples",
    type=click.IntRange(min=1),
    default=SampleCounts.trace,
    show_default=True,
    help="Random diagram pairs for the trace identities.",
)
@click.option(
    "--bimodule-samples",
    type=click.IntRange(min=1),
    default=SampleCounts.bimodule,
    show_default=True,
    help="Random samples for the conditional expectation identities.",
)
@output_options()
def verify_everything(
    r,
    n,
    randomized_mode,
    trials,
    seed,
    window,
    threads,
    associativity_samples,
    trace_samples,
    bimodule_samples,
    fmt,
    output,
):
    """Check every identity of every module for label modulus R up to length N.

    Example:

        cybmw verify all --r 2 --n 3 --seed 42

    The report lists each relation with its residual; exits with status 1
    when a relation fails.
    """
    config = run_config(
        mode="randomized" if randomized_mode else "symbolic",
        format=fmt,
        trials=trials,
        seed=seed,
        window=window,
        threads=threads,
    )
    try:
        sections = verify_all(
            r,
            n,
            mode=config.mode,
            trials=config.trials,
            seed=config.seed,
            threads=config.threads,
            window=config.window,
            samples=SampleCounts(
                associativity=associativity_samples,
                trace=trace_samples,
                bimodule=bimodule_samples,
            ),
        )
    except DegenerateParameters as exc:
        raise click.ClickException(str(exc))
    models = {
        name: [RelationModel.from_result(result) for result in results]
        for name, results in sections.items()
    }
    report = SuiteReport(
        ok=all(rel.passed for relations in models.values() for rel in relations),
        r=r,
        n=n,
        mode=config.mode,
        seed=config.seed,
        trials=config.trials,
        sections=models,
    )
    match config.format:
        case "json":
            emit(report.model_dump_json(indent=2), output)
        case "tsv":
            emit(
                "\n".join(
                    relations_tsv(relations, section=name)
                    for name, relations in models.items()
                ),
                output,
            )
        case "pretty":
            emit(render_report(report), output)
    if not report.ok:
        for relations in models.values():
            report_failures(relations)
        sys.exit(1)


def render_report(report: SuiteReport) -> str:
    """Render the plain-text report template."""
    env = jinja2.Environment(
        loader=jinja2.PackageLoader("cyclotomic_bmw", "templates"),
        trim_blocks=True,
        lstrip_blocks=True,
    )
    template = env.get_template("report.txt")
    return template.render(
        r=report.r,
        n=report.n,
        mode=report.mode,
        seed=report.seed,
        trials=report.trials,
        sections=report.sections,
        ok=report.ok,
    ).rstrip("\n")
