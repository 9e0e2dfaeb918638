"""Canonical JSON: sorted keys, floats at 17 significant digits."""

from __future__ import annotations

import json
import math

import numpy as np


def _encode(obj) -> str:
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError(f"cannot serialize non-finite float {x}")
        if x == 0.0:
            return "0.0"
        s = format(x, ".17g")
        return s if any(ch in s for ch in ".en") else s + ".0"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ",".join(f"{json.dumps(k)}:{_encode(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ",".join(_encode(v) for v in obj) + "]"
    if hasattr(obj, "to_json"):
        return _encode(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return _encode(obj)


def loads(text: str):
    return json.loads(text)
