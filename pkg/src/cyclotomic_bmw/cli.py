"""Cyclotomic BMW algebra toolkit.

This command-line application computes exactly with the ground ring of the
cyclotomic BMW algebras: it checks admissibility of parameters, enumerates
up-down tableaux, tabulates Markov trace weights, verifies the relations of
the two-strand module and multiplies Z_r-Brauer diagrams. Every check is
carried out in exact rational arithmetic.
"""

import logging

import rich_click as click
from rich.console import Console
from rich.logging import RichHandler

from cyclotomic_bmw import __version__
from cyclotomic_bmw.brauer import brauer
from cyclotomic_bmw.config import config
from cyclotomic_bmw.params import params
from cyclotomic_bmw.tableaux import tableaux
from cyclotomic_bmw.verify import verify
from cyclotomic_bmw.w2 import w2
from cyclotomic_bmw.weights import weights


@click.group()
@click.version_option(version=__version__)
@click.option("-v", "--verbose", is_flag=True, help="Log progress to standard error.")
def cli(verbose):
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG,
            format="%(message)s",
            handlers=[RichHandler(console=Console(stderr=True))],
        )


cli.add_command(params)
cli.add_command(tableaux)
cli.add_command(weights)
cli.add_command(w2)
cli.add_command(brauer)
cli.add_command(verify)
cli.add_command(config)


if __name__ == "__main__":
    cli()
