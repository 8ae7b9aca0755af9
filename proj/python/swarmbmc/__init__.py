"""Swarm bounded model checking for the imp mini-language.

Thin convenience layer over the C++ core: `check` and `swarm` return parsed
JSON reports instead of raw strings.
"""

import json

from ._core import (  # noqa: F401
    ParseError,
    Program,
    UnknownFeatureError,
    __version__,
    cli,
    encode_dimacs,
    enumerate_tapes,
    execute,
    parse,
    replay,
    solve_dimacs,
)
from . import _core


def check(program, **kwargs):
    """Bounded model check one variant; returns the outcome report as a dict."""
    return json.loads(_core.check(program, **kwargs))


def swarm(program, **kwargs):
    """Run a feature-omission swarm; returns the report as a dict."""
    return json.loads(_core.swarm(program, **kwargs))


__all__ = [
    "ParseError",
    "Program",
    "UnknownFeatureError",
    "__version__",
    "check",
    "cli",
    "encode_dimacs",
    "enumerate_tapes",
    "execute",
    "parse",
    "replay",
    "solve_dimacs",
    "swarm",
]
