"""JSON ingestion and emission for curvature points, internal data and tori.

Curvature file::

    {"p": 1, "q": 2, "riemann": [...m^4...], "rfperp": [...m x m x q x q...],
     "scalar_curvature": optional, "scalar_laplacian": optional, "volume": optional,
     "boundary": {"L": [...], "rM_normal": optional, "L_trace_lap": optional,
                  "area": optional}}

Complex matrices are nested lists whose leaves are ``[re, im]`` pairs or
plain reals.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .clifford import Dims
from .curvature import BoundaryPoint, CurvaturePoint, InputError
from .internal import InternalSpace, SMParams
from .torus import TorusSpec


def load_json(path) -> dict:
    try:
        with Path(path).open() as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be an object")
    return data


def _require(data: dict, *keys):
    missing = [k for k in keys if k not in data]
    if missing:
        raise InputError(f"missing keys: {missing}")


def _array(value, name) -> np.ndarray:
    try:
        return np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name} is not a numeric array") from exc


def _dims(data: dict) -> Dims:
    _require(data, "p", "q")
    try:
        return Dims(int(data["p"]), int(data["q"]))
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def point_from_dict(data: dict):
    """:class:`CurvaturePoint`, or :class:`BoundaryPoint` if a boundary block is present."""
    d = _dims(data)
    _require(data, "riemann", "rfperp")
    c = CurvaturePoint(d, _array(data["riemann"], "riemann"), _array(data["rfperp"], "rfperp"),
                       scalar_curv=data.get("scalar_curvature"),
                       scalar_laplacian=data.get("scalar_laplacian"))
    b = data.get("boundary")
    if b is None:
        return c
    if not isinstance(b, dict):
        raise InputError("boundary must be an object")
    _require(b, "L")
    return BoundaryPoint(c, _array(b["L"], "L"), b.get("rM_normal"), b.get("L_trace_lap"))


def point_to_dict(point) -> dict:
    b = point if isinstance(point, BoundaryPoint) else None
    c = b.interior if b is not None else point
    out = {"p": c.dims.p, "q": c.dims.q, "riemann": c.riemann.tolist(),
           "rfperp": c.rfperp.tolist(), "scalar_curvature": c.r_M}
    if c.scalar_laplacian is not None:
        out["scalar_laplacian"] = c.scalar_laplacian
    if b is not None:
        out["boundary"] = {"L": b.L.tolist(), "rM_normal": b.r_normal,
                           "L_trace_lap": b.L_trace_lap}
    return out


def sm_params_from_dict(data: dict) -> SMParams:
    try:
        return SMParams.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _complex_array(value, name, ndim) -> np.ndarray:
    try:
        a = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name} is not a numeric array") from exc
    if a.ndim == ndim + 1 and a.shape[-1] == 2:
        return a[..., 0] + 1j * a[..., 1]
    if a.ndim == ndim:
        return a.astype(complex)
    raise InputError(f"{name} has {a.ndim} axes, expected {ndim} (or {ndim + 1} for [re, im])")


def internal_space_from_dict(data: dict) -> InternalSpace:
    _require(data, "n_f", "phi", "gauge", "commutators")
    two = data.get("gauge_two_point")
    try:
        s = InternalSpace(int(data["n_f"]), _complex_array(data["phi"], "phi", 2),
                          _complex_array(data["gauge"], "gauge", 4),
                          _complex_array(data["commutators"], "commutators", 3),
                          None if two is None else _complex_array(two, "gauge_two_point", 4))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if not s.check():
        raise InputError("internal space violates self-adjointness or antisymmetry")
    return s


def torus_from_dict(data: dict) -> TorusSpec:
    d = _dims(data) if "p" in data else Dims(1, 2)
    try:
        return TorusSpec(d, tuple(data.get("periods", (1.0, 1.0, 1.0, 1.0))),
                         float(data.get("cut", 50.0)))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def load_cutoff_samples(path):
    """Sampled cut-off from JSON ``{"s": [...], "values": [...]}``."""
    data = load_json(path)
    _require(data, "s", "values")
    return _array(data["s"], "s"), _array(data["values"], "values")
