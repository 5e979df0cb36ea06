"""Resource caps keeping every enumeration desk-scale.

Defaults: field order q <= 16, ambient dimension n <= 8, and at most
100_000 vertices for materialized Grassmann graphs.  Override globally
via :func:`set_caps`, or with the ``GRASSMANN_LAB_CAPS`` environment
variable, e.g. ``GRASSMANN_LAB_CAPS="q=25,n=10"``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import ValidationError


@dataclass(frozen=True)
class Caps:
    q_max: int = 16
    n_max: int = 8
    graph_vertex_max: int = 100_000


_current = Caps()


def caps() -> Caps:
    return _current


def set_caps(q_max: int | None = None, n_max: int | None = None,
             graph_vertex_max: int | None = None) -> Caps:
    """Replace the active caps; ``None`` keeps the current value."""
    global _current
    updates = {}
    if q_max is not None:
        updates["q_max"] = q_max
    if n_max is not None:
        updates["n_max"] = n_max
    if graph_vertex_max is not None:
        updates["graph_vertex_max"] = graph_vertex_max
    _current = replace(_current, **updates)
    return _current


def caps_from_env(var: str = "GRASSMANN_LAB_CAPS") -> Caps:
    """Apply overrides from a ``key=value`` comma list in the environment."""
    raw = os.environ.get(var)
    if not raw:
        return _current
    known = {"q": "q_max", "n": "n_max", "graph": "graph_vertex_max"}
    updates = {}
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        key, _, value = part.partition("=")
        key = key.strip().lower()
        if key not in known:
            raise ValidationError(f"unknown cap {key!r} in {var}")
        try:
            updates[known[key]] = int(value)
        except ValueError as exc:
            raise ValidationError(f"cap {key!r} in {var} is not an integer") from exc
    return set_caps(**{k: v for k, v in updates.items()})
