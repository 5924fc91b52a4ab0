"""Exact minimum enclosing balls (Chebyshev centers) of finite Euclidean nets.

The main solver is the incremental randomized move-to-front algorithm with
explicit support-set maintenance; `cheb_oracle` re-derives the same ball by
brute-force enumeration of candidate support subsets and exists purely to
cross-check the solver. `cheb_1d` is the closed-form line case.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateInputError, DimensionError, OracleBudgetError
from .geometry import Net, Point
from .tolerances import TAU_RANK, geom_tol

# Multiplicative slack for the in-ball test inside the incremental solver.
_BALL_EPS = 1e-12

_ORACLE_MAX_POINTS = 12
_ORACLE_MAX_DIM = 6


@dataclass(frozen=True)
class ChebResult:
    """Minimum enclosing ball: center, radius and a support subset.

    Every input point lies within `radius` of `center` (up to tolerance),
    every support point lies on the bounding sphere, the center is a convex
    combination of the support, and `len(support) <= dim + 1`.
    """

    center: Point
    radius: float
    support: tuple[Point, ...]


def _dot(a: Sequence[float], b: Sequence[float]) -> float:
    return sum(x * y for x, y in zip(a, b))


def _solve(matrix: list[list[float]], rhs: list[float]) -> list[float]:
    """Gaussian elimination with partial pivoting on a tiny system.

    Raises DegenerateInputError when a pivot falls below the rank tolerance
    relative to the largest matrix entry (affinely dependent input).
    """
    m = len(rhs)
    a = [row[:] + [r] for row, r in zip(matrix, rhs)]
    scale = max((abs(a[i][j]) for i in range(m) for j in range(m)), default=0.0)
    if scale == 0.0:
        raise DegenerateInputError("zero Gram system")
    for col in range(m):
        piv = max(range(col, m), key=lambda r: abs(a[r][col]))
        if abs(a[piv][col]) <= TAU_RANK * scale:
            raise DegenerateInputError("near-singular circumball system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1.0 / a[col][col]
        for r in range(col + 1, m):
            f = a[r][col] * inv
            if f != 0.0:
                for c in range(col, m + 1):
                    a[r][c] -= f * a[col][c]
    out = [0.0] * m
    for r in range(m - 1, -1, -1):
        s = a[r][m] - sum(a[r][c] * out[c] for c in range(r + 1, m))
        out[r] = s / a[r][r]
    return out


def _circumball(pts: Sequence[tuple[float, ...]]) -> tuple[tuple[float, ...], float]:
    """Smallest sphere through all of `pts` with center in their affine hull."""
    k = len(pts)
    if k == 1:
        return pts[0], 0.0
    if k == 2:
        a, b = pts
        c = tuple((x + y) / 2.0 for x, y in zip(a, b))
        return c, max(math.dist(c, a), math.dist(c, b))
    base = pts[0]
    dirs = [tuple(x - y for x, y in zip(p, base)) for p in pts[1:]]
    m = k - 1
    gram = [[2.0 * _dot(dirs[i], dirs[j]) for j in range(m)] for i in range(m)]
    rhs = [_dot(d, d) for d in dirs]
    lam = _solve(gram, rhs)
    center = list(base)
    for coef, d in zip(lam, dirs):
        for t in range(len(center)):
            center[t] += coef * d[t]
    c = tuple(center)
    return c, max(math.dist(c, p) for p in pts)


def _mtf(pts, order, boundary, dim):
    """Move-to-front Welzl recursion over point indices.

    Returns (center, radius, support index tuple); `order` is permuted in
    place so violators migrate toward the front.
    """
    if boundary:
        center, radius = _circumball([pts[i] for i in boundary])
        support = tuple(boundary)
    else:
        center, radius, support = None, -1.0, ()
    if len(boundary) == dim + 1:
        return center, radius, support
    for i in range(len(order)):
        idx = order[i]
        if center is None or math.dist(pts[idx], center) > radius * (1.0 + _BALL_EPS):
            center, radius, support = _mtf(pts, order[:i], boundary + [idx], dim)
            order.pop(i)
            order.insert(0, idx)
    return center, radius, support


def _affine_weights(pts: Sequence[tuple[float, ...]], target) -> list[float]:
    """Barycentric coordinates of `target` in the affine hull of `pts`."""
    k = len(pts)
    if k == 1:
        return [1.0]
    base = pts[0]
    dirs = [tuple(x - y for x, y in zip(p, base)) for p in pts[1:]]
    m = k - 1
    gram = [[_dot(dirs[i], dirs[j]) for j in range(m)] for i in range(m)]
    rhs = [_dot(d, tuple(x - y for x, y in zip(target, base))) for d in dirs]
    mu = _solve(gram, rhs)
    return [1.0 - sum(mu)] + mu


def support_barycentric(result: ChebResult) -> list[float]:
    """Barycentric coordinates of the center with respect to the support."""
    return _affine_weights([p.coords for p in result.support], result.center.coords)


def _certified_support(pts, center, radius, dim, scale):
    """Pick a lexicographically-least support subset with the hull property.

    Used when the raw boundary set from the solver does not certify
    center-in-hull (only possible for degenerate, e.g. cocircular, inputs);
    Caratheodory guarantees a valid subset of on-sphere points exists.
    """
    tol = geom_tol(scale + radius)
    boundary = sorted(i for i in range(len(pts)) if abs(math.dist(pts[i], center) - radius) <= tol)
    for k in range(1, dim + 2):
        for subset in itertools.combinations(boundary, k):
            sub = [pts[i] for i in subset]
            try:
                weights = _affine_weights(sub, center)
            except DegenerateInputError:
                continue
            if min(weights) < -1e-9:
                continue
            rebuilt = [sum(w * p[t] for w, p in zip(weights, sub)) for t in range(len(center))]
            if math.dist(rebuilt, center) <= tol:
                return subset
    raise DegenerateInputError("no hull-certified support subset found")


def _build_result(net: Net, center, radius, support_idx) -> ChebResult:
    pts = [p.coords for p in net.points]
    scale = max((max(abs(c) for c in p) for p in pts), default=1.0)
    try:
        weights = _affine_weights([pts[i] for i in support_idx], center)
        hull_ok = min(weights) >= -1e-9
    except DegenerateInputError:
        hull_ok = False
    if not hull_ok:
        support_idx = _certified_support(pts, center, radius, net.dim, scale)
    support = tuple(sorted((net.points[i] for i in support_idx), key=lambda p: p.coords))
    return ChebResult(Point(center), radius, support)


def cheb(net: Net, seed: int = 0) -> ChebResult:
    """Minimum enclosing ball of a net.

    Deterministic for a fixed seed: the insertion order is a seeded shuffle
    of the net's canonical point order. Near-singular intermediate support
    solves trigger a reshuffled retry (at most 3) before giving up.
    """
    pts = [p.coords for p in net.points]
    if len(pts) == 1:
        return ChebResult(net.points[0], 0.0, (net.points[0],))
    last_err = None
    for attempt in range(4):
        order = list(range(len(pts)))
        random.Random(f"{seed}:{attempt}").shuffle(order)
        try:
            center, radius, support_idx = _mtf(pts, order, [], net.dim)
        except DegenerateInputError as err:
            last_err = err
            continue
        return _build_result(net, center, radius, support_idx)
    raise DegenerateInputError(f"minimum enclosing ball solve failed: {last_err}")


def cheb_1d(net: Net) -> ChebResult:
    """Closed-form Chebyshev center on the line: midpoint of the extremes."""
    if net.dim != 1:
        raise DimensionError(f"cheb_1d requires dim 1, got {net.dim}")
    pts = net.points
    lo, hi = pts[0], pts[-1]
    if lo.coords == hi.coords:
        return ChebResult(lo, 0.0, (lo,))
    center, radius = _circumball([lo.coords, hi.coords])
    return ChebResult(Point(center), radius, (lo, hi))


def cheb_oracle(net: Net) -> ChebResult:
    """Brute-force minimum enclosing ball by support-subset enumeration.

    Tries every subset of 2..dim+1 points, builds the smallest sphere having
    the subset on its boundary with center in the subset's affine hull, and
    returns the smallest such ball that covers the whole net. Ties keep the
    first candidate in (size, lexicographic) order. Independent of `cheb`.
    """
    n = len(net)
    if n > _ORACLE_MAX_POINTS or net.dim > _ORACLE_MAX_DIM:
        raise OracleBudgetError(
            f"oracle guard: |M|={n} dim={net.dim} exceeds {_ORACLE_MAX_POINTS}/{_ORACLE_MAX_DIM}"
        )
    if n == 1:
        return ChebResult(net.points[0], 0.0, (net.points[0],))
    pts = net.coord_list()
    scale = max(max(abs(c) for c in p) for p in pts)
    best = None
    for k in range(2, min(n, net.dim + 1) + 1):
        for subset in itertools.combinations(range(n), k):
            try:
                center, radius = _circumball([pts[i] for i in subset])
            except DegenerateInputError:
                continue
            if best is not None and radius >= best[0]:
                continue
            tol = geom_tol(scale + radius)
            if all(math.dist(p, center) <= radius + tol for p in pts):
                best = (radius, center, subset)
    if best is None:
        raise DegenerateInputError("oracle found no covering candidate ball")
    return _build_result(net, best[1], best[0], best[2])


def circumball_of_support(points: Sequence[Point]) -> tuple[Point, float]:
    """Equidistant point in the affine hull of up to dim+1 independent points."""
    if not points:
        raise DegenerateInputError("empty support")
    dims = {p.dim for p in points}
    if len(dims) != 1:
        raise DimensionError("support points have mismatched dimensions")
    if len(points) > points[0].dim + 1:
        raise DegenerateInputError(
            f"{len(points)} points cannot be affinely independent in dim {points[0].dim}"
        )
    center, radius = _circumball([p.coords for p in points])
    return Point(center), radius
