"""Python bindings for the summa library.

Report-returning functions come back as plain dicts.
"""

import json

from ._summa import (
    SummaError,
    cesaro_means,
    gram_matrix,
    haar_1d,
    model_ids,
    partial_sums,
    psi,
    sequence_ids,
)
from . import _summa

__all__ = [
    "SummaError",
    "cesaro_means",
    "classify_conditions",
    "detect",
    "gram_matrix",
    "haar_1d",
    "model_ids",
    "partial_sums",
    "psi",
    "run",
    "sequence_ids",
]


def detect(sequence, mode="pringsheim", epsilon=1e-6, budget=64):
    return json.loads(_summa.detect_json(sequence, mode, epsilon, budget))


def classify_conditions(model, budget, ratio=0.5, exponent=1.0):
    return json.loads(_summa.classify_json(model, budget, ratio, exponent))


def run(config):
    """Run an experiment config (dict). Returns (exit_code, results_csv, summary)."""
    code, csv, summary = _summa.run_json(json.dumps(config))
    return code, csv, json.loads(summary)
