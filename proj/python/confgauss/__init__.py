"""Conformal Gauss map, Willmore conservation laws and conformally-CMC classification."""

import json

from ._core import (
    GeometryError,
    act_on_r3,
    act_on_s3,
    classify_vector,
    criterion_count,
    dilation,
    inversion,
    is_so41,
    lorentz_product,
    parse_word,
    rotation,
    run_criterion,
    surface_names,
    translation,
)
from ._core import classify as _classify_json


def classify(surface, params=None, grid=128, word=""):
    """Classify a catalog surface, optionally after a Moebius word; returns a dict."""
    return json.loads(_classify_json(surface, dict(params or {}), grid, word))


__all__ = [
    "GeometryError",
    "act_on_r3",
    "act_on_s3",
    "classify",
    "classify_vector",
    "criterion_count",
    "dilation",
    "inversion",
    "is_so41",
    "lorentz_product",
    "parse_word",
    "rotation",
    "run_criterion",
    "surface_names",
    "translation",
]
