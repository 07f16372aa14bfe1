"""Leontief input-output models with power-law memory (C++ core)."""

import json as _json

from ._fracio import (
    FracioError,
    effective_growth_rate,
    eigenvalues,
    gamma,
    ml,
    perron,
    run_cli,
)
from ._fracio import analyze_json as _analyze_json


def analyze(path):
    """Analysis report of a model file, as a dict."""
    return _json.loads(_analyze_json(str(path)))


__all__ = [
    "FracioError",
    "analyze",
    "effective_growth_rate",
    "eigenvalues",
    "gamma",
    "ml",
    "perron",
    "run_cli",
]
