"""Hausdorff metric between finite point nets."""

from __future__ import annotations

import math

from .errors import DimensionError, DomainError
from .geometry import Net


def alpha(m: Net, t: Net) -> float:
    """Hausdorff distance: worst nearest-neighbour distance over both nets.

    Plain O(|m|*|t|) double loop; nets are tiny here and clarity wins.
    """
    if m.dim != t.dim:
        raise DimensionError(f"dimension mismatch: {m.dim} vs {t.dim}")
    a = m.coord_list()
    b = t.coord_list()
    forward = max(min(math.dist(x, y) for y in b) for x in a)
    backward = max(min(math.dist(x, y) for x in a) for y in b)
    return max(forward, backward)


def alpha_ball_contains(m: Net, z: Net, r: float) -> bool:
    """Membership of z in the open Hausdorff ball of radius r around m."""
    if r <= 0:
        raise DomainError(f"ball radius must be positive, got {r}")
    return alpha(m, z) < r
