"""Python bindings for the fqw library.

Results come back as plain dicts and lists, matching the CLI's JSON output.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from . import _core
from ._core import CapExceeded, InputError, InvariantViolation, ParityViolation

__all__ = [
    "CapExceeded",
    "InputError",
    "InvariantViolation",
    "ParityViolation",
    "cones",
    "data_dir",
    "group_info",
    "h1",
    "mds_check",
    "negative_curves",
    "parity",
    "resolve_group",
    "rh_genus",
    "run_cli",
    "search_free_pair",
    "table1_verify",
]


def data_dir() -> Path:
    """FQW_DATA_DIR if set, else the copy shipped with the package, else the build-time default."""
    env = os.environ.get("FQW_DATA_DIR")
    if env:
        return Path(env)
    shipped = Path(__file__).parent / "data" / "groups"
    if shipped.is_dir():
        return shipped
    return Path(_core.default_data_dir())


def resolve_group(group: str | os.PathLike) -> Path:
    """Accepts a path, a file name in the data directory, or a bare name such as "a5"."""
    p = Path(group)
    for candidate in (p, data_dir() / p, data_dir() / f"{p}.json"):
        if candidate.is_file():
            return candidate
    raise InputError(f"group file not found: {group}")


def _sig(s) -> str:
    return s if isinstance(s, str) else ",".join(str(m) for m in s)


def group_info(group) -> dict:
    return json.loads(_core.group_info(str(resolve_group(group))))


def rh_genus(order: int, sig) -> int:
    return _core.rh_genus(order, _sig(sig))


def search_free_pair(group, sig1, sig2, jobs: int = 1) -> dict:
    return json.loads(_core.free_pair(str(resolve_group(group)), _sig(sig1), _sig(sig2), jobs))


def h1(group, sig1, sig2) -> dict:
    return json.loads(_core.h1(str(resolve_group(group)), _sig(sig1), _sig(sig2)))


def parity(order: int, sig1, sig2) -> dict:
    return json.loads(_core.parity(order, _sig(sig1), _sig(sig2)))


def cones(form: str, negatives=()) -> dict:
    return json.loads(_core.cones(form, [tuple(c) for c in negatives]))


def negative_curves(form: str, bound: int, char0: bool = False) -> list[tuple[int, int]]:
    return _core.negative_curves(form, bound, char0)


def mds_check(descriptor: dict) -> dict:
    return json.loads(_core.mds_check(json.dumps(descriptor)))


def table1_verify(row: str = "", jobs: int = 1) -> dict:
    return json.loads(_core.table1_verify(str(data_dir()), row, jobs))


def run_cli(args: list[str]) -> tuple[int, str, str]:
    """Runs the fqw command line in-process; returns (exit code, stdout, stderr)."""
    args = list(args)
    if "--data-dir" not in args:
        args = ["--data-dir", str(data_dir())] + args
    return _core.run_cli(args)
