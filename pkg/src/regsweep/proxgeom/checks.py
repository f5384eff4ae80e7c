"""Numerical certification of prox-regular geometry.

All checks here are falsifiers, not provers: they sample points and test
the defining inequalities within explicit tolerances, reporting the worst
defect and a witness when something fails.  Sample counts and seeds are
part of the configuration so every run is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from ..errors import OutOfReachError
from .family import Bracket, hausdorff_bracket
from .sets import ProxSet

__all__ = [
    "ProxRegularityReport",
    "prox_regularity_check",
    "segment_distance_check",
    "InteriorVerdict",
    "interior_cone_equiv_check",
    "StabilityResult",
    "stability_constant",
    "projection_stability_check",
    "NormalVector",
    "normal_from_outside",
    "proximal_normal_defect",
    "projection_vi_values",
    "numeric_project",
]


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def projection_vi_values(y, x, zs, r: float) -> np.ndarray:
    """Values of ``<y-x, x-z> + (|y-x|/2r) |x-z|^2`` for test points ``zs``.

    Nonnegative for all ``z`` in the set exactly when ``x`` is the proximal
    projection of ``y`` onto an r-prox-regular set.
    """
    y = np.asarray(y, float)
    x = np.asarray(x, float)
    zs = np.atleast_2d(np.asarray(zs, float))
    diff = x - zs
    lin = diff @ (y - x)
    quad = np.einsum("ij,ij->i", diff, diff)
    return lin + (np.linalg.norm(y - x) / (2.0 * r)) * quad


@dataclass
class ProxRegularityReport:
    """Outcome of sampling the reach and projection inequalities at radius r."""

    r: float
    probes: int
    passed: bool
    worst_reach_defect: float
    worst_vi: float
    violation: dict | None = None


def _tube_samples(s: ProxSet, r: float, count: int, rng) -> list:
    lo, hi = s.bbox()
    lo, hi = np.asarray(lo, float) - r, np.asarray(hi, float) + r
    pts = []
    attempts = 0
    cap = 500 * count + 1000
    while len(pts) < count and attempts < cap:
        attempts += 1
        y = rng.uniform(lo, hi)
        d = s.distance(y)
        if 0.0 < d < 0.995 * r:
            pts.append((y, d))
    return pts


def prox_regularity_check(
    s: ProxSet,
    r: float,
    *,
    probes: int = 200,
    z_count: int = 64,
    seed: int = 0,
    reach_tol: float = 1e-7,
    vi_tol: float = 1e-9,
) -> ProxRegularityReport:
    """Sample the r-prox-regularity of a set at a candidate radius ``r``.

    For probe points ``y`` in the tube ``0 < dist(y) < r`` with nearest point
    ``x``, checks that the point ``x + (r/d)(y - x)`` lies at distance exactly
    ``r`` from the set, and that the projection inequality holds against
    sampled set points.  A failure report includes the witnessing probe.
    """
    rng = _rng(seed)
    zs = s.boundary_sample(z_count, rng)
    if s.special_points():
        zs = np.concatenate([zs, np.asarray(s.special_points())])
    worst_reach = 0.0
    worst_vi = math.inf
    violation = None
    samples = _tube_samples(s, r, probes, rng)
    for y, d in samples:
        x = s.nearest_point(y)
        far = x + (r / d) * (y - x)
        reach_defect = abs(s.distance(far) - r)
        vi_min = float(np.min(projection_vi_values(y, x, zs, r)))
        scale = (1.0 + d) * (1.0 + float(np.max(np.linalg.norm(zs - x, axis=1))) ** 2)
        worst_reach = max(worst_reach, reach_defect)
        worst_vi = min(worst_vi, vi_min)
        if violation is None and (reach_defect > reach_tol * (1 + r) or vi_min < -vi_tol * scale):
            violation = {
                "probe": y.tolist(),
                "distance": d,
                "reach_defect": reach_defect,
                "vi_min": vi_min,
            }
    passed = violation is None and bool(samples)
    return ProxRegularityReport(
        r=r,
        probes=len(samples),
        passed=passed,
        worst_reach_defect=worst_reach,
        worst_vi=worst_vi if samples else 0.0,
        violation=violation,
    )


def segment_distance_check(s: ProxSet, y, *, r: float | None = None, samples: int = 64) -> float:
    """Max defect of ``dist(x + (t/d)(y-x)) = t`` along the outward segment.

    Requires ``0 < dist(y) < r``; returns the largest ``|dist - t|`` over a
    grid of ``t`` in ``[0, r]``.
    """
    y = np.asarray(y, dtype=float)
    r = s.r if r is None else float(r)
    if not math.isfinite(r):
        raise ValueError("need a finite radius")
    d = s.distance(y)
    if not (0.0 < d < r):
        raise ValueError(f"need 0 < dist(y)={d:g} < r={r:g}")
    x = s.nearest_point(y)
    ts = np.linspace(0.0, r, samples)
    defect = 0.0
    for t in ts:
        p = x + (t / d) * (y - x)
        defect = max(defect, abs(s.distance(p) - t))
    return defect


@dataclass
class InteriorVerdict:
    """Result of testing the interior-ball and interior-cone conditions.

    ``e4b_pass`` reports the R-free ball condition
    ``|x - xbar|^2 + rho^2 < 2 r rho`` with ``B_{3 rho}(xbar)`` inside the
    set; ``e4_pass`` additionally requires ``|x - xbar| < R rho``;
    ``cone_pass`` reports the cone condition: for a grid of ``alpha`` in
    (0, 1], the tube ``x + alpha (xbar - x) + alpha B_rho`` stays inside.
    The two conditions ``e4b`` and ``cone`` are equivalent in the small-rho
    regime and must agree there.
    """

    rho: float
    R: float
    e4_pass: bool
    e4b_pass: bool
    cone_pass: bool
    failures: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.e4b_pass == self.cone_pass


def interior_cone_equiv_check(
    s: ProxSet,
    rho: float,
    R: float,
    *,
    r: float | None = None,
    x_count: int = 40,
    sphere_count: int = 32,
    alphas=(1.0, 0.5, 0.25, 0.125, 0.0625),
    seed: int = 0,
    tol: float = 1e-9,
) -> InteriorVerdict:
    """Test the equivalence of the interior ball and cone conditions at (rho, R)."""
    r = s.r if r is None else float(r)
    if not math.isfinite(r):
        raise ValueError("need a finite prox radius")
    if R < 3.0 or not (0.0 < rho < 2.0 * r / (1.0 + R * R)):
        raise ValueError(f"(rho={rho:g}, R={R:g}) inadmissible for r={r:g}")
    rng = _rng(seed)
    xs = list(s.boundary_sample(x_count, rng))
    xs.extend(s.special_points())
    angles = np.linspace(0.0, 2.0 * np.pi, sphere_count, endpoint=False)
    if s.dim == 2:
        sphere = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    else:
        sphere = rng.normal(size=(sphere_count, s.dim))
        sphere /= np.linalg.norm(sphere, axis=1, keepdims=True)
    cap = 1.25 * max(R * rho, math.sqrt(2.0 * r * rho)) + 3.0 * rho
    e4 = e4b = cone = True
    failures = []
    for x in xs:
        x = np.asarray(x, dtype=float)
        xbar = s.interior_witness(x, rho, cap)
        if xbar is None:
            e4 = e4b = cone = False
            failures.append({"x": x.tolist(), "reason": "no admissible witness found"})
            continue
        gap = float(np.linalg.norm(x - xbar))
        ball_ok = all(
            s.contains(xbar + 3.0 * rho * z, tol * (1.0 + 3.0 * rho)) for z in sphere
        ) and s.clearance(xbar) >= 3.0 * rho - tol * (1.0 + 3.0 * rho)
        this_e4b = ball_ok and gap * gap + rho * rho < 2.0 * r * rho
        this_e4 = this_e4b and gap < R * rho
        this_cone = ball_ok
        if this_cone:
            for alpha in alphas:
                base = x + alpha * (xbar - x)
                for z in sphere:
                    if not s.contains(base + alpha * rho * z, tol * (1.0 + rho)):
                        this_cone = False
                        break
                if not this_cone:
                    break
        if not this_e4b:
            failures.append(
                {
                    "x": x.tolist(),
                    "xbar": xbar.tolist(),
                    "reason": "ball condition fails",
                    "lhs |x-xbar|^2 + rho^2": gap * gap + rho * rho,
                    "rhs 2 r rho": 2.0 * r * rho,
                }
            )
        e4 = e4 and this_e4
        e4b = e4b and this_e4b
        cone = cone and this_cone
    return InteriorVerdict(rho=rho, R=R, e4_pass=e4, e4b_pass=e4b, cone_pass=cone, failures=failures)


def stability_constant(r: float) -> float:
    """Constant in the projection-stability bound.

    From the prox-regular projection inequality and Young's inequality one
    gets ``E^2 <= 8 Y^2 + 10 D^2 + 4 r D`` for projections of points within
    r/2 of two sets at Hausdorff distance D, so ``max(10, 4r)`` works for
    the combined form ``E^2 <= C (Y^2 + D^2 + D)``.
    """
    return max(10.0, 4.0 * r)


@dataclass
class StabilityResult:
    lhs: float
    rhs: float
    constant: float
    d_h: Bracket

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.slack >= 0.0


def projection_stability_check(
    s1: ProxSet,
    s2: ProxSet,
    y1,
    y2,
    *,
    d_h: Bracket | None = None,
    r: float | None = None,
) -> StabilityResult:
    """Verify that nearby points project to nearby points across nearby sets.

    Checks ``|z1 - z2|^2 <= C (|y1 - y2|^2 + d_H^2 + d_H)`` with the derived
    constant :func:`stability_constant`, using the upper end of the Hausdorff
    bracket.  Requires ``dist(y_i, Z_i) <= r/2``.
    """
    if r is None:
        r = min(s1.r, s2.r)
    if not math.isfinite(r):
        raise ValueError("supply a finite r for convex sets")
    y1 = np.asarray(y1, float)
    y2 = np.asarray(y2, float)
    for s, y in ((s1, y1), (s2, y2)):
        d = s.distance(y)
        if d > r / 2.0:
            raise OutOfReachError(d, r / 2.0, y)
    if d_h is None:
        d_h = hausdorff_bracket(s1, s2)
    z1 = s1.nearest_point(y1)
    z2 = s2.nearest_point(y2)
    C = stability_constant(r)
    lhs = float(np.dot(z1 - z2, z1 - z2))
    dd = d_h.hi
    rhs = C * (float(np.dot(y1 - y2, y1 - y2)) + dd * dd + dd)
    return StabilityResult(lhs=lhs, rhs=rhs, constant=C, d_h=d_h)


@dataclass(frozen=True)
class NormalVector:
    """Unit proximal normal direction anchored at a boundary point."""

    base: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        n = float(np.linalg.norm(self.direction))
        if abs(n - 1.0) > 1e-9:
            raise ValueError("direction must be a unit vector")


def normal_from_outside(s: ProxSet, y) -> NormalVector:
    """Proximal normal extracted from an outside point via its projection."""
    y = np.asarray(y, dtype=float)
    d = s.distance(y)
    if d <= 0.0:
        raise ValueError("y must lie strictly outside the set")
    x = s.nearest_point(y)
    return NormalVector(base=x, direction=(y - x) / d)


def proximal_normal_defect(
    s: ProxSet, nv: NormalVector, *, r: float | None = None, z_count: int = 256, seed: int = 0
) -> float:
    """Most negative value of ``<xi, x-z> + |x-z|^2 / (2r)`` over sampled z.

    Nonnegative (within tolerance) exactly when the direction lies in the
    proximal normal cone at the base point.
    """
    r = s.r if r is None else float(r)
    zs = s.boundary_sample(z_count, _rng(seed))
    diff = nv.base - zs
    vals = diff @ nv.direction + np.einsum("ij,ij->i", diff, diff) / (2.0 * r)
    return float(np.min(vals))


def numeric_project(s: ProxSet, y, *, starts: int = 6, boundary_count: int = 512, seed: int = 0):
    """Fallback nearest-point solver for sets without an analytic projection.

    Multi-start constrained minimisation of ``|p - y|^2`` subject to
    ``clearance(p) >= 0``, seeded from the nearest boundary samples.  Used to
    cross-validate analytic projections; deterministic for a fixed seed.
    """
    y = np.asarray(y, dtype=float)
    pts = s.boundary_sample(boundary_count, _rng(seed))
    order = np.argsort(np.linalg.norm(pts - y, axis=1))
    best = None
    best_d = math.inf
    for idx in order[:starts]:
        res = minimize(
            lambda p: float(np.dot(p - y, p - y)),
            pts[idx],
            method="SLSQP",
            constraints=[{"type": "ineq", "fun": lambda p: s.clearance(p)}],
            options={"maxiter": 200, "ftol": 1e-14},
        )
        cand = res.x
        if s.clearance(cand) >= -1e-9:
            d = float(np.linalg.norm(cand - y))
            if d < best_d:
                best, best_d = cand, d
    if best is None:
        raise RuntimeError("numeric projection failed from all starts")
    return best
