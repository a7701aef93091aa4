"""Homogeneous locally nilpotent derivations of trinomial algebras."""

import json

from ._trideriv import (
    SCHEMA,
    ParseError,
    Trinomial,
    TriderivError,
    apply_derivation,
    cone_contains,
    elementary_derivation,
    families,
    grading,
    nilpotency,
    normal_form,
    smith_normal_form,
)
from . import _trideriv

__all__ = [
    "SCHEMA",
    "ParseError",
    "Trinomial",
    "TriderivError",
    "analyze",
    "apply_derivation",
    "cone_contains",
    "cone_plot_data",
    "elementary_derivation",
    "families",
    "grading",
    "nilpotency",
    "normal_form",
    "scan",
    "smith_normal_form",
]


def _spec(spec):
    return spec if isinstance(spec, Trinomial) else Trinomial(spec)


def analyze(spec, bound=None, probe_degree=6, basis=None):
    """Classification report as a dict (same layout as `trideriv analyze`)."""
    return json.loads(_trideriv.analyze_json(_spec(spec), bound, probe_degree, basis))


def cone_plot_data(spec, basis=None, probe_degree=6):
    return json.loads(_trideriv.cone_plot_json(_spec(spec), basis, probe_degree))


def scan(max_ni, max_exp, dedupe=False, jobs=1, cap=200000):
    """Returns (rows, summary)."""
    lines, summary = _trideriv.scan_json(max_ni, max_exp, dedupe, jobs, cap)
    rows = [json.loads(line) for line in lines.splitlines()]
    return rows, json.loads(summary)
