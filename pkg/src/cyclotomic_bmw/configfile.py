import pathlib

import appdirs
import tomli
import tomli_w

APP_NAME = "cyclotomic-bmw"
CONFIG_FILE = "config.toml"

# settings understood by `cybmw config set`; threads defaults to the CPU count
KEYS = ("trials", "seed", "threads", "format", "window")


def read_config() -> dict:
    """Read the user configuration; a missing or corrupted file reads as empty."""
    config_path = get_config_path()
    if not config_path.is_file():
        return {}
    try:
        with open(config_path, "rb") as f:
            return tomli.load(f)
    except (tomli.TOMLDecodeError, UnicodeDecodeError):
        return {}


def write_config(config: dict):
    """Write the user configuration.

    Args:
        config: a dictionary containing the settings.
    """
    # render first: a TOML error must not leave an empty file behind
    contents = tomli_w.dumps(config)
    config_path = get_config_path()
    config_path.parent.mkdir(parents=True, exist_ok=True)
    config_path.write_text(contents, encoding="utf-8")


def get_config_path() -> pathlib.Path:
    """Get path of configuration file."""
    return pathlib.Path(appdirs.user_config_dir(APP_NAME)) / CONFIG_FILE
