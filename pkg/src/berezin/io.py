"""Serialization: the matrix wire format and model descriptors.

A matrix travels as `{"rows": n, "cols": m, "data": [[re, im], ...]}` with
row-major data and one [re, im] pair of IEEE doubles per entry.  Writing uses
repr-style shortest round-trip floats, so a saved matrix re-parses to the
exact same bits.

A model descriptor is `{"kind": "finite", "n": 4}` or
`{"kind": "hardy"|"bergman", "degree": N, "rho": r}` or
`{"kind": "fock", "degree": N, "R": r}`.  The compact string forms
"finite:4", "hardy:15:0.95", "fock:15:3" are accepted on the command line.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import models
from .models import KernelModel


def dump_matrix(a: np.ndarray) -> dict:
    """Matrix -> wire dict."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got ndim={a.ndim}")
    data = [[float(z.real), float(z.imag)] for z in a.reshape(-1)]
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "data": data}


def load_matrix_obj(obj) -> np.ndarray:
    """Wire dict -> matrix, validating shape, keys, and finiteness."""
    if not isinstance(obj, dict):
        raise ValueError("matrix JSON must be an object")
    extra = set(obj) - {"rows", "cols", "data"}
    if extra:
        raise ValueError(f"unknown matrix keys: {sorted(extra)}")
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except KeyError as exc:
        raise ValueError(f"matrix JSON missing key {exc}") from exc
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise ValueError("rows and cols must be positive integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ValueError(
            f"data must list rows*cols = {rows * cols} entries, got "
            f"{len(data) if isinstance(data, list) else type(data).__name__}"
        )
    flat = np.empty(rows * cols, dtype=np.complex128)
    for i, item in enumerate(data):
        if (not isinstance(item, list)) or len(item) != 2:
            raise ValueError(f"data[{i}] must be an [re, im] pair")
        re, im = item
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re, im)):
            raise ValueError(f"data[{i}] entries must be numbers")
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ValueError(f"data[{i}] entries must be finite")
        flat[i] = complex(re, im)
    return flat.reshape(rows, cols)


def save_matrix(path, a: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dump_matrix(a), fh)
        fh.write("\n")


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return load_matrix_obj(json.load(fh))


def model_to_descriptor(model: KernelModel) -> dict:
    if model.kind == "finite":
        return {"kind": "finite", "n": model.dimension}
    if model.kind == "fock":
        return {"kind": "fock", "degree": model.degree, "R": model.radius}
    return {"kind": model.kind, "degree": model.degree, "rho": model.radius}


def model_from_descriptor(obj) -> KernelModel:
    if not isinstance(obj, dict):
        raise ValueError("model descriptor must be an object")
    kind = obj.get("kind")
    if kind == "finite":
        extra = set(obj) - {"kind", "n"}
        if extra:
            raise ValueError(f"unknown model keys: {sorted(extra)}")
        if "n" not in obj:
            raise ValueError("finite model needs n")
        return models.finite(obj["n"])
    if kind in ("hardy", "bergman"):
        extra = set(obj) - {"kind", "degree", "rho"}
        if extra:
            raise ValueError(f"unknown model keys: {sorted(extra)}")
        ctor = models.hardy if kind == "hardy" else models.bergman
        return ctor(
            degree=obj.get("degree", models.DEFAULT_DEGREE),
            rho=obj.get("rho", models.DEFAULT_RHO),
        )
    if kind == "fock":
        extra = set(obj) - {"kind", "degree", "R"}
        if extra:
            raise ValueError(f"unknown model keys: {sorted(extra)}")
        return models.fock(
            degree=obj.get("degree", models.DEFAULT_DEGREE),
            radius=obj.get("R", models.DEFAULT_FOCK_RADIUS),
        )
    raise ValueError(f"unknown model kind {kind!r}")


def parse_model_spec(spec: str) -> KernelModel:
    """Parse compact model strings like finite:4 or hardy:15:0.95."""
    parts = str(spec).strip().split(":")
    kind = parts[0]
    try:
        if kind == "finite":
            if len(parts) != 2:
                raise ValueError("finite model spec is finite:<n>")
            return models.finite(int(parts[1]))
        if kind in ("hardy", "bergman"):
            if len(parts) > 3:
                raise ValueError(f"{kind} model spec is {kind}[:<degree>[:<rho>]]")
            degree = int(parts[1]) if len(parts) > 1 else models.DEFAULT_DEGREE
            rho = float(parts[2]) if len(parts) > 2 else models.DEFAULT_RHO
            ctor = models.hardy if kind == "hardy" else models.bergman
            return ctor(degree=degree, rho=rho)
        if kind == "fock":
            if len(parts) > 3:
                raise ValueError("fock model spec is fock[:<degree>[:<R>]]")
            degree = int(parts[1]) if len(parts) > 1 else models.DEFAULT_DEGREE
            radius = float(parts[2]) if len(parts) > 2 else models.DEFAULT_FOCK_RADIUS
            return models.fock(degree=degree, radius=radius)
    except ValueError as exc:
        raise ValueError(f"bad model spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown model kind {kind!r} in spec {spec!r}")
