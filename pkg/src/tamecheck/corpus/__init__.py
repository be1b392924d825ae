"""Built-in example problems shipped with the package."""

from __future__ import annotations

from importlib import resources

from ..exprparse import DeformationProblem, parse_problem_file


def names() -> list[str]:
    files = resources.files(__name__)
    return sorted(p.name[:-4] for p in files.iterdir() if p.name.endswith(".txt"))


def text(name: str) -> str:
    return resources.files(__name__).joinpath(name + ".txt").read_text(encoding="utf-8")


def load(name: str) -> DeformationProblem:
    if name not in names():
        raise KeyError(name)
    return parse_problem_file(text(name), name)


def describe(name: str) -> str:
    """First comment line of the problem file."""
    for line in text(name).splitlines():
        if line.startswith("#"):
            return line.lstrip("# ").strip()
    return ""
