"""Exact obstruction engine for extending vector bundles to formal neighborhoods."""

import json

from ._core import (
    EngineError,
    __version__,
    builtin_names,
    canonicalize,
    cohomology_dim,
    formal_lab,
    generate,
    geometry_lab,
    mc_lab,
)
from . import _core


def validate(scenario_json):
    """Validation entries as a list of dicts."""
    return json.loads(_core.validate(scenario_json))


def obstruct(scenario_json, order=None, window=None, workers=1):
    """Run the pipeline; returns the report bundle as a dict."""
    return json.loads(_core.obstruct(scenario_json, order=order, window=window, workers=workers))


__all__ = [
    "EngineError",
    "__version__",
    "builtin_names",
    "canonicalize",
    "cohomology_dim",
    "formal_lab",
    "generate",
    "geometry_lab",
    "mc_lab",
    "obstruct",
    "validate",
]
