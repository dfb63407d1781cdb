"""JSON files for matrices, weight vectors and result bundles.

A matrix is ``{"n": n, "entries": [[[re, im], ...], ...]}`` in row-major
order; readers also accept a bare real number in place of ``[re, im]``.
Writers always emit ``[re, im]`` pairs with 17 significant digits and sorted
keys, so equal inputs give byte-identical files.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .errors import SpinlabError


class FormatError(SpinlabError):
    """A JSON file does not have the expected layout."""


# --------------------------------------------------------------------------
# numbers

def parse_complex(value) -> complex:
    if isinstance(value, bool):
        raise FormatError(f"expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        return complex(value[0], value[1])
    raise FormatError(f"expected a number or [re, im], got {value!r}")


def complex_pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise FormatError(f"expected a square matrix, got shape {M.shape}")
    return {"n": int(M.shape[0]), "entries": [[complex_pair(z) for z in row] for row in M]}


def matrix_from_json(obj) -> np.ndarray:
    if isinstance(obj, dict):
        if "entries" not in obj:
            raise FormatError("matrix object needs an 'entries' field")
        rows = obj["entries"]
        n = obj.get("n", len(rows))
    elif isinstance(obj, list):
        rows, n = obj, len(obj)
    else:
        raise FormatError("a matrix must be an object with 'entries' or a list of rows")
    if len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise FormatError(f"matrix entries do not form an {n} x {n} array")
    return np.array([[parse_complex(v) for v in row] for row in rows], dtype=np.complex128)


def vector_to_json(v) -> list:
    return [complex_pair(z) for z in np.asarray(v, dtype=np.complex128).reshape(-1)]


def vector_from_json(obj) -> np.ndarray:
    if not isinstance(obj, list):
        raise FormatError("a vector must be a list of numbers")
    return np.array([parse_complex(v) for v in obj], dtype=np.complex128)


# --------------------------------------------------------------------------
# deterministic writer

def _encode(obj: Any, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            out.append(json.dumps(str(x)))
        else:
            out.append(format(x + 0.0, ".17g"))
    elif isinstance(obj, (complex, np.complexfloating)):
        _encode(complex_pair(obj), out)
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for k, key in enumerate(sorted(obj, key=str)):
            if k:
                out.append(", ")
            out.append(json.dumps(str(key)) + ": ")
            _encode(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for k, item in enumerate(obj):
            if k:
                out.append(", ")
            _encode(item, out)
        out.append("]")
    elif isinstance(obj, np.ndarray):
        if obj.ndim == 2 and obj.shape[0] == obj.shape[1]:
            _encode(matrix_to_json(obj), out)
        else:
            _encode(obj.tolist(), out)
    else:
        raise FormatError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    out: list[str] = []
    _encode(obj, out)
    return "".join(out) + "\n"


def write_json(path, obj: Any) -> None:
    Path(path).write_text(dumps(obj))


def read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def read_matrix(path) -> np.ndarray:
    return matrix_from_json(read_json(path))


def write_matrix(path, M) -> None:
    write_json(path, matrix_to_json(M))


# --------------------------------------------------------------------------
# bundles

def _field(obj: dict, key: str, path) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"{path}: missing field '{key}'")
    return obj[key]


def spin_bundle(W, d, a=None) -> dict:
    out = {"W": matrix_to_json(W), "d": complex_pair(d)}
    if a is not None:
        out["a"] = complex_pair(a)
    return out


def read_spin_bundle(path) -> tuple[np.ndarray, complex | None]:
    obj = read_json(path)
    if isinstance(obj, dict) and "W" in obj:
        d = parse_complex(obj["d"]) if obj.get("d") is not None else None
        return matrix_from_json(obj["W"]), d
    return matrix_from_json(obj), None


def pair_bundle(A, B, d=None) -> dict:
    out = {"A": matrix_to_json(A), "B": matrix_to_json(B)}
    if d is not None:
        out["d"] = complex_pair(d)
    return out


def read_pair_bundle(path) -> tuple[np.ndarray, np.ndarray, complex | None]:
    obj = read_json(path)
    A = matrix_from_json(_field(obj, "A", path))
    B = matrix_from_json(_field(obj, "B", path))
    d = parse_complex(obj["d"]) if obj.get("d") is not None else None
    return A, B, d


def four_weight_bundle(m) -> dict:
    return {"W1": matrix_to_json(m.W1), "W2": matrix_to_json(m.W2), "W3": matrix_to_json(m.W3),
            "W4": matrix_to_json(m.W4), "d": complex_pair(m.d), "a": complex_pair(m.a)}


def read_four_weight_bundle(path):
    from .jones import FourWeightSpinModel

    obj = read_json(path)
    mats = [matrix_from_json(_field(obj, k, path)) for k in ("W1", "W2", "W3", "W4")]
    return FourWeightSpinModel(*mats, parse_complex(_field(obj, "d", path)), parse_complex(_field(obj, "a", path)))


def nomura_bundle(nd) -> dict:
    return {"dim": nd.dim, "basis": [matrix_to_json(M) for M in nd.basis],
            "theta": [matrix_to_json(T) for T in nd.theta_images]}


def scheme_bundle(schur_basis, theta_pairing=None) -> dict:
    out = {"schur_basis": [matrix_to_json(np.asarray(A).real) for A in schur_basis]}
    if theta_pairing is not None:
        out["theta_pairing"] = [int(j) for j in theta_pairing]
    return out


def read_scheme_bundle(path) -> tuple[list[np.ndarray], tuple | None]:
    obj = read_json(path)
    mats = [matrix_from_json(M) for M in _field(obj, "schur_basis", path)]
    pairing = obj.get("theta_pairing")
    if pairing is not None:
        if not isinstance(pairing, list) or sorted(pairing) != list(range(len(mats))):
            raise FormatError(f"{path}: theta_pairing must be a permutation of 0..{len(mats) - 1}")
        pairing = tuple(int(j) for j in pairing)
    return mats, pairing
