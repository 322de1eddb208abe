"""Measure-valued Polya urns with derandomized kernel lifts.

The heavy lifting lives in the compiled extension; this package adds small
dict-friendly wrappers around the JSON entry points.
"""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import (
    __version__,
    models_listing as _models_listing_json,
    run_compare_json,
    run_couple_json,
    run_simulate_json,
)


def simulate(config, threads=1):
    """Run the trajectory CSV export for a config dict (or JSON string)."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return run_simulate_json(config, threads)


def couple(config, seeds=1, tol=1e-9):
    """Exact-coupling report for a config dict; returns a dict."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _json.loads(run_couple_json(config, seeds, tol))


def compare(config, alpha=0.01):
    """Distributional-equivalence report for a config dict; returns a dict."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _json.loads(run_compare_json(config, alpha))


def models():
    """Registered models and their parameters as a dict."""
    return _json.loads(_models_listing_json())
