"""Expected-norm bounds for sums of independent random matrices.

Thin wrappers over the C++ core. Every function takes an explicit seed and
returns plain Python data decoded from the core's JSON output.
"""

from __future__ import annotations

import json
from typing import Any, Sequence

try:
    from . import _matcon
except ImportError:  # in-tree build: the extension sits next to the build outputs
    import _matcon  # type: ignore[no-redef]

ModelParseError = _matcon.ModelParseError

__all__ = ["report", "experiment", "run_cli", "dimensional_constant", "ModelParseError"]


def report(model: dict[str, Any] | str, seed: int, samples: int = 200, estimator: str = "mean") -> dict[str, Any]:
    """Bound report for a model given as a dict or JSON text."""
    text = model if isinstance(model, str) else json.dumps(model)
    return json.loads(_matcon.report_json(text, seed, samples, estimator))


def experiment(name: str, seed: int, ds: Sequence[int] = (), n: int = 0, samples: int = 200) -> list[dict[str, Any]]:
    """Runs one of the optimality experiments over a dimension grid; one dict per row."""
    return json.loads(_matcon.experiment_json(name, seed, list(ds), n, samples))


def run_cli(args: Sequence[str]) -> tuple[int, str, str]:
    """Runs the command-line front end in-process; returns (exit code, stdout, stderr)."""
    return _matcon.run_cli(list(args))


def dimensional_constant(d1: int, d2: int) -> float:
    return _matcon.dimensional_constant(d1, d2)
