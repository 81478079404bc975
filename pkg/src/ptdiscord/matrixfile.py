"""Canonical matrix file format.

A JSON document::

    {"dims": [M, N],
     "matrix": [[[re, im], ...], ...]}

``matrix`` is row-major with composite index ``k = a*N + b``. Optional
``"state_id"`` and ``"spec"`` fields are carried along when present.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import qmat
from .errors import ValidationError
from .tolerances import Tolerances


class MatrixFileError(ValidationError):
    pass


def encode(rho, state_id: str | None = None, spec: dict | None = None) -> dict:
    a = qmat._entries(rho)
    doc = {"dims": list(rho.dims.as_tuple()),
           "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in a]}
    if state_id is not None:
        doc["state_id"] = state_id
    if spec is not None:
        doc["spec"] = spec
    return doc


def dumps(rho, state_id: str | None = None, spec: dict | None = None) -> str:
    return json.dumps(encode(rho, state_id, spec), indent=1, sort_keys=True) + "\n"


def write(path, rho, state_id: str | None = None, spec: dict | None = None) -> None:
    Path(path).write_text(dumps(rho, state_id, spec), encoding="utf-8")


def decode(doc, tol: Tolerances | None = None) -> qmat.DensityMatrix:
    if not isinstance(doc, dict):
        raise MatrixFileError("top level must be an object with 'dims' and 'matrix'")
    for key in ("dims", "matrix"):
        if key not in doc:
            raise MatrixFileError(f"missing field {key!r}")
    dims = doc["dims"]
    if not (isinstance(dims, list) and len(dims) == 2
            and all(isinstance(x, int) and x >= 1 for x in dims)):
        raise MatrixFileError(f"field 'dims': expected [M, N] positive integers, got {dims!r}")
    rows = doc["matrix"]
    if not isinstance(rows, list):
        raise MatrixFileError("field 'matrix': expected a list of rows")
    out = np.empty((len(rows), len(rows)), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(rows):
            raise MatrixFileError(f"field 'matrix' row {i}: expected {len(rows)} entries")
        for j, z in enumerate(row):
            if not (isinstance(z, list) and len(z) == 2
                    and all(isinstance(x, (int, float)) for x in z)):
                raise MatrixFileError(
                    f"field 'matrix' row {i} column {j}: expected [re, im], got {z!r}")
            out[i, j] = complex(z[0], z[1])
    return qmat.validate_density(out, dims, tol)


def loads(text: str, tol: Tolerances | None = None) -> qmat.DensityMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return decode(doc, tol)


def read(path, tol: Tolerances | None = None) -> qmat.DensityMatrix:
    return loads(Path(path).read_text(encoding="utf-8"), tol)
