"""Access to data files bundled with the package (keyword sets, stopword
lists, opinion lexicon, sample corpus). Assumes a filesystem install."""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path


def data_path(*parts: str) -> Path:
    path = Path(str(files("postmine").joinpath("data", *parts)))
    if not path.exists():
        raise FileNotFoundError(f"bundled data file not found: {path}")
    return path
