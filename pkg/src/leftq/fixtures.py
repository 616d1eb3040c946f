"""Named instances shipped as ``.lq`` files inside the package."""
from __future__ import annotations

from importlib import resources

from .table import parse

_PACKAGE = "leftq.data"


def names() -> list:
    files = resources.files(_PACKAGE)
    return sorted(p.name[:-3] for p in files.iterdir() if p.name.endswith(".lq"))


def text(name) -> str:
    return resources.files(_PACKAGE).joinpath(name + ".lq").read_text()


def load(name):
    return parse(text(name))


def all_fixtures() -> dict:
    return {name: load(name) for name in names()}


def path(name):
    """Filesystem path of a fixture (for handing to the command line)."""
    return resources.files(_PACKAGE).joinpath(name + ".lq")
