"""JSON and CSV file formats.

State file::

    {"spin": "3/2", "two_s": 3, "matrix": [[[re, im], ...], ...]}

Rows are ``m = s .. -s``. Floats are written with Python's shortest
round-trip repr, so a dump is reproducible byte for byte.
"""

from __future__ import annotations

import csv
import io as _io
import json

import numpy as np

from .angular import format_spin
from .errors import InputError, ValidationError

__all__ = [
    "dumps",
    "state_to_json",
    "state_from_json",
    "check_hermitian",
    "grid_to_csv",
]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def state_to_json(matrix) -> dict:
    matrix = np.asarray(matrix, dtype=complex)
    two_s = matrix.shape[0] - 1
    rows = [[[float(z.real), float(z.imag)] for z in row] for row in matrix]
    return {"spin": format_spin(two_s), "two_s": int(two_s), "matrix": rows}


def state_from_json(obj) -> np.ndarray:
    """Matrix from a state object; raises :class:`InputError` when malformed."""
    try:
        two_s = int(obj["two_s"])
        rows = obj["matrix"]
        arr = np.array([[complex(float(re), float(im)) for re, im in row] for row in rows])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed state file: {exc}") from None
    if two_s < 0 or arr.shape != (two_s + 1, two_s + 1):
        raise InputError(f"matrix shape {arr.shape} does not match two_s={two_s}")
    return arr


def check_hermitian(matrix, tol: float = 1e-8) -> None:
    resid = float(np.abs(matrix - matrix.conj().T).max())
    if resid > tol:
        raise ValidationError(f"matrix is not Hermitian (residual {resid:.3g})")


def grid_to_csv(rows) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theta", "phi", "value"])
    for theta, phi, value in rows:
        writer.writerow([repr(theta), repr(phi), repr(value)])
    return buf.getvalue()
