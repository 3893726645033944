import rich_click as click
from pydantic import ValidationError
from rich import box, print
from rich.table import Table

from cyclotomic_bmw import configfile
from cyclotomic_bmw.datatypes import RunConfig


@click.group()
def config():
    """Show and change default settings."""
    pass


@config.command("show")
def show_config():
    """List the stored settings."""
    settings = configfile.read_config()
    if not settings:
        print("No settings stored.")
        return
    table = Table(box=box.HORIZONTALS)
    table.add_column("Key")
    table.add_column("Value")
    for key, value in settings.items():
        table.add_row(key, str(value))
    print()
    print(table)


@config.command("set")
@click.argument("key", type=click.Choice(configfile.KEYS))
@click.argument("value")
def set_config(key, value):
    """Store a default for one setting.

    Example:

        cybmw config set trials 50
    """
    try:
        validated = RunConfig(**{key: value})
    except ValidationError as exc:
        raise click.BadParameter(exc.errors()[0]["msg"], param_hint="VALUE")
    settings = configfile.read_config()
    settings[key] = getattr(validated, key)
    configfile.write_config(settings)


@config.command("unset")
@click.argument("key", type=click.Choice(configfile.KEYS))
def unset_config(key):
    """Remove a stored setting."""
    settings = configfile.read_config()
    try:
        del settings[key]
    except KeyError:
        print(f"[bold red]Setting '{key}' is not stored.[/bold red]")
    else:
        configfile.write_config(settings)
        print(f"Setting '{key}' removed.")
