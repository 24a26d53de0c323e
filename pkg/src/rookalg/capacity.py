"""Configurable capacity limits for the enumeration-heavy operations.

The environment variable ROOKALG_CAPACITY, when set to a non-negative
integer, replaces both built-in alpha limits.  Explicit overrides (CLI
flags, keyword arguments) win over the environment.
"""
from __future__ import annotations

import os

DEFAULT_ROOK_LIMIT = 6    # rook-monoid enumeration and counting identities
DEFAULT_TABLE_LIMIT = 4   # full basis and structure-table builds
ORACLE_DEGREE_LIMIT = 8   # cap on alpha + n for brute-force verification

_ENV_VAR = "ROOKALG_CAPACITY"


def _env_limit() -> int | None:
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return None
    value = int(raw)
    if value < 0:
        raise ValueError(f"{_ENV_VAR} must be non-negative, got {raw!r}")
    return value


def rook_limit(override: int | None = None) -> int:
    if override is not None:
        return override
    env = _env_limit()
    return DEFAULT_ROOK_LIMIT if env is None else env


def table_limit(override: int | None = None) -> int:
    if override is not None:
        return override
    env = _env_limit()
    return DEFAULT_TABLE_LIMIT if env is None else env
