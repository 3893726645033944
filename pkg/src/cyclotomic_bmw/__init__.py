import importlib.metadata

try:
    __version__ = importlib.metadata.version("cyclotomic-bmw")
except importlib.metadata.PackageNotFoundError:
    __version__ = None
