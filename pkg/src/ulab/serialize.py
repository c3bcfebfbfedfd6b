"""Deterministic JSON/CSV emission with fixed significant-digit formatting."""

from __future__ import annotations

import hashlib
import json

JSON_SIG_DIGITS = 9
CSV_SIG_DIGITS = 6


def round_sig(x: float, sig: int = JSON_SIG_DIGITS) -> float:
    return float(f"{float(x):.{sig}g}")


def _rounded(obj, sig: int):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return round_sig(obj, sig)
    if isinstance(obj, dict):
        return {str(k): _rounded(v, sig) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v, sig) for v in obj]
    # numpy scalars and anything else float-like
    return round_sig(float(obj), sig)


def dumps_json(obj, sig: int = JSON_SIG_DIGITS) -> str:
    """Canonical JSON text: sorted keys, floats at fixed significant digits."""
    return json.dumps(_rounded(obj, sig), sort_keys=True, indent=1) + "\n"


def dumps_json_full(obj) -> str:
    """Canonical JSON text at full float precision (state files round-trip)."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def fingerprint(obj) -> str:
    """sha256 hex digest of the canonical JSON encoding."""
    text = json.dumps(_rounded(obj, JSON_SIG_DIGITS), sort_keys=True,
                      separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def csv_cell(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, (int, str)):
        return str(x)
    return f"{float(x):.{CSV_SIG_DIGITS}g}"


def format_csv(header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(csv_cell(x) for x in row))
    return "\n".join(lines) + "\n"
