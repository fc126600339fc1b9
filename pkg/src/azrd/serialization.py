"""Repo-wide JSON formats and a deterministic emitter.

Matrix format: {"dim": n, "re": [[...]], "im": [[...]]}. Writers emit full
precision (17 significant digits), so every emitted matrix re-parses to the
exact same doubles. Infinite scalar results are emitted as the string token
"inf" (never the IEEE value) for parser portability.
"""

from __future__ import annotations

import json
import math

import numpy as np


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return {
        "dim": int(m.shape[0]),
        "re": [[float(v) for v in row] for row in m.real],
        "im": [[float(v) for v in row] for row in m.imag],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        dim = int(obj["dim"])
        re = np.array(obj["re"], dtype=np.float64)
        im = np.array(obj["im"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from None
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ValueError(f"matrix JSON shape mismatch: dim={dim}, "
                         f"re {re.shape}, im {im.shape}")
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise ValueError("matrix JSON has non-finite entries")
    return re + 1j * im


def extended_to_json(value: float) -> float | str:
    """A nonnegative extended real as a JSON value ('inf' token for infinity)."""
    v = float(value)
    if math.isnan(v):
        raise ValueError("cannot serialize NaN")
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def extended_from_json(obj) -> float:
    if obj == "inf":
        return math.inf
    if obj == "-inf":
        return -math.inf
    return float(obj)


def _emit(obj, out: list) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            raise ValueError("cannot serialize NaN")
        if math.isinf(v):
            out.append('"inf"' if v > 0 else '"-inf"')
        else:
            out.append(f"{v:.17g}")
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            if i:
                out.append(",")
            out.append(json.dumps(key))
            out.append(":")
            _emit(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, 17-significant-digit floats."""
    out: list[str] = []
    _emit(obj, out)
    return "".join(out)


def dump_file(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
        fh.write("\n")


def load_file(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
