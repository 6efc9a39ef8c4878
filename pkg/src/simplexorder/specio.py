"""JSON interchange for simplexes and Gram matrices.

A spec is either ``{"geometry", "model"?, "vertices", "label"?}`` or
``{"gram", "label"?}``. Hyperbolic vertices may be given on the hyperboloid
(default) or in the Poincare ball (``"model": "poincare"``). Floats go
through Python's shortest round-trip repr, so dumping and re-parsing is
lossless.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import InputError
from .models import Geometry, ModelPoint, hyperboloid_to_poincare, poincare_to_hyperboloid
from .simplex import GramMatrix, Simplex

MODELS = {
    Geometry.SPHERICAL: ("sphere",),
    Geometry.EUCLIDEAN: ("cartesian",),
    Geometry.HYPERBOLIC: ("hyperboloid", "poincare"),
}
VERTEX_KEYS = {"geometry", "model", "vertices", "label"}
GRAM_KEYS = {"gram", "label"}


def _number_matrix(value, path, square=False):
    if not isinstance(value, list) or not value:
        raise InputError("expected a non-empty array of arrays", path)
    width = None
    for i, row in enumerate(value):
        if not isinstance(row, list) or not row:
            raise InputError("expected a non-empty array of numbers", f"{path}[{i}]")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputError(f"row has {len(row)} entries, expected {width}", f"{path}[{i}]")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
                raise InputError("expected a finite number", f"{path}[{i}][{j}]")
    if square and width != len(value):
        raise InputError(f"matrix is {len(value)}x{width}, expected square", path)
    return np.array(value, dtype=float)


def spec_from_dict(obj):
    """Validate a decoded spec and build a :class:`Simplex` or :class:`GramMatrix`."""
    if not isinstance(obj, dict):
        raise InputError("spec must be a JSON object", "$")
    if "label" in obj and not isinstance(obj["label"], str):
        raise InputError("label must be a string", "label")
    if "gram" in obj:
        extra = set(obj) - GRAM_KEYS
        if extra:
            raise InputError(f"unexpected field(s) {sorted(extra)} next to gram", sorted(extra)[0])
        g = _number_matrix(obj["gram"], "gram", square=True)
        if len(g) < 3:
            raise InputError("Gram matrix must be at least 3x3", "gram")
        try:
            return GramMatrix(g)
        except InputError as exc:
            raise InputError(str(exc), "gram") from None
    extra = set(obj) - VERTEX_KEYS
    if extra:
        raise InputError(f"unexpected field(s) {sorted(extra)}", sorted(extra)[0])
    for key in ("geometry", "vertices"):
        if key not in obj:
            raise InputError(f"missing field {key!r} (or give 'gram')", key)
    try:
        geometry = Geometry.parse(obj["geometry"])
    except (InputError, ValueError):
        raise InputError(f"unknown geometry {obj['geometry']!r}", "geometry") from None
    model = obj.get("model", MODELS[geometry][0])
    if model not in MODELS[geometry]:
        raise InputError(f"model {model!r} not allowed for {geometry.value}; "
                         f"use one of {list(MODELS[geometry])}", "model")
    verts = _number_matrix(obj["vertices"], "vertices")
    rows = []
    for i, v in enumerate(verts):
        try:
            if model == "poincare":
                rows.append(poincare_to_hyperboloid(v).coords)
            else:
                rows.append(ModelPoint(geometry, v).coords)
        except InputError as exc:
            raise InputError(str(exc), f"vertices[{i}]") from None
    try:
        return Simplex(geometry, np.array(rows))
    except InputError as exc:
        raise type(exc)(str(exc), "vertices") from None


def parse_simplex_spec(text):
    """Parse UTF-8 JSON text (``str`` or ``bytes``) into a Simplex or GramMatrix."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"spec is not UTF-8: {exc}", "$") from None
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                         "$") from None
    return spec_from_dict(obj)


def _reject_constant(name):
    raise InputError(f"non-finite constant {name} is not allowed", "$")


def _rows(a):
    return [[float(x) for x in row] for row in np.asarray(a)]


def to_spec(obj, label=None, model=None):
    """JSON-ready dict for a :class:`Simplex` or :class:`GramMatrix`."""
    if isinstance(obj, GramMatrix):
        out = {"gram": _rows(obj.matrix)}
    elif isinstance(obj, Simplex):
        model = model or MODELS[obj.geometry][0]
        if model not in MODELS[obj.geometry]:
            raise InputError(f"model {model!r} not allowed for {obj.geometry.value}")
        verts = obj.vertices
        if model == "poincare":
            verts = np.array([hyperboloid_to_poincare(p) for p in obj.points])
        out = {"geometry": obj.geometry.value, "model": model, "vertices": _rows(verts)}
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    if label is not None:
        out["label"] = label
    return out


def dumps(obj, **kwargs):
    """``json.dumps`` that refuses NaN/inf (the output must re-parse)."""
    return json.dumps(obj, allow_nan=False, **kwargs)
