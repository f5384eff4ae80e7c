"""Catalog of closed prox-regular subsets of R^n with exact geometry.

Every set provides an exact Euclidean distance, a nearest-point map, a
signed clearance (depth inside the set, negative outside), deterministic
boundary sampling, and an interior-witness finder used by the uniform
non-empty-interior checks.  The prox radius ``r`` is the radius within
which nearest points are unique; convex sets carry ``r = inf``.
"""

from __future__ import annotations

import abc
import math
from typing import Sequence

import numpy as np

from ..errors import OutOfReachError

__all__ = [
    "ProxSet",
    "Ball",
    "Box",
    "HalfSpace",
    "ConvexIntersection",
    "BallComplement",
    "TwoBallsUnion",
    "Crescent",
    "CuspPair",
    "RotatedSet",
    "TranslatedSet",
]


def _unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ValueError("zero vector has no direction")
    return v / n


def _circle_points(center, radius, angles) -> np.ndarray:
    return np.asarray(center) + radius * np.stack([np.cos(angles), np.sin(angles)], axis=-1)


class ProxSet(abc.ABC):
    """Closed r-prox-regular set contract."""

    r: float
    dim: int

    @abc.abstractmethod
    def distance(self, y) -> float:
        """Exact Euclidean distance; zero inside the set."""

    @abc.abstractmethod
    def _nearest(self, y: np.ndarray) -> np.ndarray:
        """A nearest point for y strictly outside the set."""

    @abc.abstractmethod
    def clearance(self, p) -> float:
        """Signed depth: distance to the complement inside, -distance outside."""

    @abc.abstractmethod
    def boundary_sample(self, count: int, rng) -> np.ndarray:
        """``count`` boundary points, deterministic for a fixed generator."""

    @abc.abstractmethod
    def bbox(self):
        """Finite axis-aligned box ``(lo, hi)`` of interest for samplers."""

    def contains(self, y, tol: float = 1e-9) -> bool:
        return self.distance(y) <= tol

    def nearest_point(self, y) -> np.ndarray:
        """A nearest point of the set; unique only within the reach tube."""
        y = np.asarray(y, dtype=float)
        if self.distance(y) == 0.0:
            return y.copy()
        return self._nearest(y)

    def project(self, y) -> np.ndarray:
        """Proximal projection, defined for ``distance(y) < r``."""
        y = np.asarray(y, dtype=float)
        d = self.distance(y)
        if d == 0.0:
            return y.copy()
        if d >= self.r:
            raise OutOfReachError(d, self.r, y)
        return self._nearest(y)

    def special_points(self) -> list:
        """Distinguished boundary points (corners, cusp tips) for checks."""
        return []

    def interior_witness(self, x, rho: float, cap: float | None = None):
        """Nearest point whose ``3*rho`` ball fits inside the set, or None.

        Searches within distance ``cap`` of ``x`` (a generous default is
        derived from the set size).  Sets with analytic structure override
        this with closed forms.
        """
        return self._witness_search(np.asarray(x, dtype=float), float(rho), cap)

    def _witness_search(self, x: np.ndarray, rho: float, cap: float | None):
        target = 3.0 * rho
        if self.clearance(x) >= target:
            return x.copy()
        if cap is None:
            lo, hi = self.bbox()
            cap = float(np.linalg.norm(np.asarray(hi) - np.asarray(lo)))
        if self.dim == 2:
            angles = np.linspace(0.0, 2.0 * np.pi, 64, endpoint=False)
            dirs = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        else:
            eye = np.eye(self.dim)
            dirs = np.concatenate([eye, -eye])
        radii = np.linspace(0.0, cap, 97)[1:]
        best = None
        best_dist = np.inf
        slack = 1e-12 * (1.0 + target)
        for t in radii:
            if t >= best_dist:
                break
            for d in dirs:
                p = x + t * d
                if self.clearance(p) >= target - slack:
                    if t < best_dist:
                        best, best_dist = p, t
        return best


class Ball(ProxSet):
    """Closed Euclidean ball; convex, hence prox-regular for every radius."""

    def __init__(self, center, radius: float, r: float = math.inf):
        self.center = np.asarray(center, dtype=float)
        self.radius = float(radius)
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        self.r = float(r)
        self.dim = self.center.size

    def distance(self, y) -> float:
        return max(float(np.linalg.norm(np.asarray(y, dtype=float) - self.center)) - self.radius, 0.0)

    def clearance(self, p) -> float:
        return self.radius - float(np.linalg.norm(np.asarray(p, dtype=float) - self.center))

    def _nearest(self, y):
        return self.center + self.radius * _unit(y - self.center)

    def boundary_sample(self, count, rng):
        rng = np.random.default_rng(rng)
        if self.dim == 2:
            return _circle_points(self.center, self.radius, rng.uniform(0, 2 * np.pi, count))
        g = rng.normal(size=(count, self.dim))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        return self.center + self.radius * g

    def bbox(self):
        return self.center - self.radius, self.center + self.radius

    def interior_witness(self, x, rho, cap=None):
        target = 3.0 * rho
        if self.radius < target:
            return None
        x = np.asarray(x, dtype=float)
        v = x - self.center
        n = float(np.linalg.norm(v))
        s = min(n, self.radius - target)
        if n == 0.0:
            return self.center.copy()
        return self.center + s * (v / n)


class Box(ProxSet):
    """Axis-aligned closed box; convex."""

    def __init__(self, lo, hi, r: float = math.inf):
        self.lo = np.asarray(lo, dtype=float)
        self.hi = np.asarray(hi, dtype=float)
        if self.lo.shape != self.hi.shape or np.any(self.lo >= self.hi):
            raise ValueError("need lo < hi componentwise")
        self.r = float(r)
        self.dim = self.lo.size

    def distance(self, y) -> float:
        y = np.asarray(y, dtype=float)
        excess = np.maximum(y - self.hi, 0.0) + np.maximum(self.lo - y, 0.0)
        return float(np.linalg.norm(excess))

    def clearance(self, p) -> float:
        p = np.asarray(p, dtype=float)
        inside = float(np.min(np.minimum(p - self.lo, self.hi - p)))
        if inside >= 0.0:
            return inside
        return -self.distance(p)

    def _nearest(self, y):
        return np.clip(y, self.lo, self.hi)

    def boundary_sample(self, count, rng):
        rng = np.random.default_rng(rng)
        extent = self.hi - self.lo
        # pick a face with probability proportional to its area
        areas = []
        for i in range(self.dim):
            others = np.delete(extent, i)
            a = float(np.prod(others)) if others.size else 1.0
            areas.extend([a, a])
        areas = np.asarray(areas)
        faces = rng.choice(2 * self.dim, size=count, p=areas / areas.sum())
        pts = self.lo + rng.uniform(size=(count, self.dim)) * extent
        for k, face in enumerate(faces):
            i, side = divmod(int(face), 2)
            pts[k, i] = self.hi[i] if side else self.lo[i]
        return pts

    def bbox(self):
        return self.lo.copy(), self.hi.copy()

    def interior_witness(self, x, rho, cap=None):
        target = 3.0 * rho
        if np.any(self.lo + target > self.hi - target):
            return None
        return np.clip(np.asarray(x, dtype=float), self.lo + target, self.hi - target)


class HalfSpace(ProxSet):
    """Closed half-space ``{ y : <normal, y> <= offset }``; convex, unbounded."""

    def __init__(self, normal, offset: float, r: float = math.inf, extent: float = 8.0):
        n = np.asarray(normal, dtype=float)
        scale = float(np.linalg.norm(n))
        if scale == 0:
            raise ValueError("normal must be nonzero")
        self.normal = n / scale
        self.offset = float(offset) / scale
        self.r = float(r)
        self.dim = n.size
        self.extent = float(extent)
        self._anchor = self.offset * self.normal

    def _gap(self, y) -> float:
        return float(np.dot(self.normal, np.asarray(y, dtype=float))) - self.offset

    def distance(self, y) -> float:
        return max(self._gap(y), 0.0)

    def clearance(self, p) -> float:
        return -self._gap(p)

    def _nearest(self, y):
        return y - self._gap(y) * self.normal

    def boundary_sample(self, count, rng):
        rng = np.random.default_rng(rng)
        basis = _tangent_basis(self.normal)
        coeffs = rng.uniform(-self.extent, self.extent, size=(count, self.dim - 1))
        return self._anchor + coeffs @ basis

    def bbox(self):
        pad = self.extent
        return self._anchor - pad, self._anchor + pad

    def interior_witness(self, x, rho, cap=None):
        x = np.asarray(x, dtype=float)
        need = max(0.0, 3.0 * rho - self.clearance(x))
        return x - need * self.normal


def _tangent_basis(normal: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the hyperplane orthogonal to ``normal``."""
    n = normal.size
    mats = np.eye(n) - np.outer(normal, normal)
    q, _ = np.linalg.qr(mats)
    cols = [q[:, i] for i in range(n) if abs(np.dot(q[:, i], normal)) < 0.5]
    return np.stack(cols[: n - 1])


class ConvexIntersection(ProxSet):
    """Intersection of convex sets, projected by Dykstra's algorithm."""

    def __init__(self, parts: Sequence[ProxSet], r: float = math.inf, max_iter: int = 500, tol: float = 1e-12):
        if not parts:
            raise ValueError("need at least one part")
        self.parts = list(parts)
        self.r = float(r)
        self.dim = parts[0].dim
        self.max_iter = max_iter
        self.tol = tol

    def _dykstra(self, y: np.ndarray) -> np.ndarray:
        x = y.copy()
        corrections = [np.zeros_like(y) for _ in self.parts]
        for _ in range(self.max_iter):
            x_before = x.copy()
            for i, part in enumerate(self.parts):
                z = x + corrections[i]
                x = part.project(z)
                corrections[i] = z - x
            if np.linalg.norm(x - x_before) <= self.tol * (1.0 + np.linalg.norm(x)):
                break
        return x

    def distance(self, y) -> float:
        y = np.asarray(y, dtype=float)
        if all(p.contains(y, 0.0) for p in self.parts):
            return 0.0
        return float(np.linalg.norm(y - self._dykstra(y)))

    def clearance(self, p) -> float:
        depths = [part.clearance(p) for part in self.parts]
        worst = min(depths)
        if worst >= 0.0:
            return worst
        return -self.distance(p)

    def _nearest(self, y):
        return self._dykstra(y)

    def boundary_sample(self, count, rng):
        rng = np.random.default_rng(rng)
        pts = []
        attempts = 0
        while len(pts) < count and attempts < 200 * count + 1000:
            attempts += 1
            part = self.parts[int(rng.integers(len(self.parts)))]
            cand = part.boundary_sample(1, rng)[0]
            if all(q.contains(cand, 1e-9) for q in self.parts):
                pts.append(cand)
        if len(pts) < count:
            raise RuntimeError("boundary sampling failed; parts may barely intersect")
        return np.asarray(pts)

    def bbox(self):
        los, his = zip(*(p.bbox() for p in self.parts))
        return np.max(np.asarray(los), axis=0), np.min(np.asarray(his), axis=0)


class BallComplement(ProxSet):
    """Closure of the complement of an open ball: ``{ |y - c| >= a }``.

    Prox-regular with reach exactly ``a``: the ball's center is the first
    point with a non-unique nearest point.
    """

    def __init__(self, center, radius: float):
        self.center = np.asarray(center, dtype=float)
        self.radius = float(radius)
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        self.r = self.radius
        self.dim = self.center.size

    def distance(self, y) -> float:
        return max(self.radius - float(np.linalg.norm(np.asarray(y, dtype=float) - self.center)), 0.0)

    def clearance(self, p) -> float:
        return float(np.linalg.norm(np.asarray(p, dtype=float) - self.center)) - self.radius

    def _nearest(self, y):
        v = y - self.center
        n = float(np.linalg.norm(v))
        if n == 0.0:
            # center: every boundary point is nearest; unreachable via project()
            v = np.zeros(self.dim)
            v[0] = 1.0
            return self.center + self.radius * v
        return self.center + self.radius * (v / n)

    def boundary_sample(self, count, rng):
        rng = np.random.default_rng(rng)
        if self.dim == 2:
            return _circle_points(self.center, self.radius, rng.uniform(0, 2 * np.pi, count))
        g = rng.normal(size=(count, self.dim))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        return self.center + self.radius * g

    def bbox(self):
        pad = 2.0 * self.radius
        return self.center - pad, self.center + pad

    def interior_witness(self, x, rho, cap=None):
        x = np.asarray(x, dtype=float)
        v = x - self.center
        n = float(np.linalg.norm(v))
        if n == 0.0:
            return None
        s = max(n, self.radius + 3.0 * rho)
        return self.center + s * (v / n)


class TwoBallsUnion(ProxSet):
    """Union of two disjoint closed balls; prox-regular with half the gap."""

    def __init__(self, center1, radius1: float, center2, radius2: float):
        self.b1 = Ball(center1, radius1)
        self.b2 = Ball(center2, radius2)
        gap = float(np.linalg.norm(self.b1.center - self.b2.center)) - radius1 - radius2
        if gap <= 0:
            raise ValueError("balls must be disjoint with a positive gap")
        self.r = gap / 2.0
        self.dim = self.b1.dim

    def distance(self, y) -> float:
        return min(self.b1.distance(y), self.b2.distance(y))

    def clearance(self, p) -> float:
        c = max(self.b1.clearance(p), self.b2.clearance(p))
        if c >= 0.0:
            return c
        return -self.distance(p)

    def _nearest(self, y):
        if self.b1.distance(y) <= self.b2.distance(y):
            return self.b1._nearest(y)
        return self.b2._nearest(y)

    def boundary_sample(self, count, rng):
        rng = np.random.default_rng(rng)
        w1 = self.b1.radius / (self.b1.radius + self.b2.radius)
        n1 = int(round(count * w1))
        return np.concatenate(
            [self.b1.boundary_sample(n1, rng), self.b2.boundary_sample(count - n1, rng)]
        )

    def bbox(self):
        lo1, hi1 = self.b1.bbox()
        lo2, hi2 = self.b2.bbox()
        return np.minimum(lo1, lo2) - self.r, np.maximum(hi1, hi2) + self.r

    def interior_witness(self, x, rho, cap=None):
        home = self.b1 if self.b1.clearance(x) >= self.b2.clearance(x) else self.b2
        return home.interior_witness(x, rho, cap)


class Crescent(ProxSet):
    """Planar lune: a closed disc minus an open disc.

    Supports both the overlapping configuration (two corner points where the
    circles cross) and a hole strictly inside the disc.  Distances and
    nearest points are exact: the boundary is a union of two circular arcs,
    and the nearest point on an arc is the radial point when admissible and
    a corner otherwise.
    """

    def __init__(self, center, radius: float, hole_center, hole_radius: float, r: float):
        self.c1 = np.asarray(center, dtype=float)
        self.a1 = float(radius)
        self.c2 = np.asarray(hole_center, dtype=float)
        self.a2 = float(hole_radius)
        if self.c1.size != 2 or self.c2.size != 2:
            raise ValueError("crescent is a planar set")
        d = float(np.linalg.norm(self.c2 - self.c1))
        if d + self.a2 <= self.a1:
            self._corners = np.empty((0, 2))
        elif abs(self.a1 - self.a2) < d < self.a1 + self.a2:
            ex = (self.c2 - self.c1) / d
            ey = np.array([-ex[1], ex[0]])
            along = (d * d + self.a1**2 - self.a2**2) / (2.0 * d)
            h = math.sqrt(max(self.a1**2 - along**2, 0.0))
            base = self.c1 + along * ex
            self._corners = np.stack([base + h * ey, base - h * ey])
        else:
            raise ValueError("hole must overlap the disc or lie strictly inside it")
        if np.linalg.norm(self.c1 - self.c2) >= self.a1 + self.a2:
            raise ValueError("hole does not touch the disc; use Ball instead")
        self.r = float(r)
        self.dim = 2

    def _inside(self, y: np.ndarray) -> bool:
        return (
            float(np.linalg.norm(y - self.c1)) <= self.a1
            and float(np.linalg.norm(y - self.c2)) >= self.a2
        )

    def _candidates(self, y: np.ndarray) -> np.ndarray:
        cands = [c for c in self._corners]
        v1 = y - self.c1
        n1 = float(np.linalg.norm(v1))
        if n1 > 0.0:
            p = self.c1 + self.a1 * (v1 / n1)
            if float(np.linalg.norm(p - self.c2)) >= self.a2:
                cands.append(p)
        v2 = y - self.c2
        n2 = float(np.linalg.norm(v2))
        if n2 > 0.0:
            p = self.c2 + self.a2 * (v2 / n2)
            if float(np.linalg.norm(p - self.c1)) <= self.a1:
                cands.append(p)
        if not cands:
            raise RuntimeError("no nearest-point candidate; degenerate query")
        return np.asarray(cands)

    def distance(self, y) -> float:
        y = np.asarray(y, dtype=float)
        if self._inside(y):
            return 0.0
        c = self._candidates(y)
        return float(np.min(np.linalg.norm(c - y, axis=1)))

    def clearance(self, p) -> float:
        p = np.asarray(p, dtype=float)
        depth = min(
            self.a1 - float(np.linalg.norm(p - self.c1)),
            float(np.linalg.norm(p - self.c2)) - self.a2,
        )
        if depth >= 0.0:
            return depth
        return -self.distance(p)

    def _nearest(self, y):
        c = self._candidates(y)
        return c[int(np.argmin(np.linalg.norm(c - y, axis=1)))]

    def boundary_sample(self, count, rng):
        rng = np.random.default_rng(rng)
        pts = []
        attempts = 0
        while len(pts) < count and attempts < 200 * count + 1000:
            attempts += 1
            if rng.uniform() < 0.5:
                p = _circle_points(self.c1, self.a1, rng.uniform(0, 2 * np.pi))
                if float(np.linalg.norm(p - self.c2)) >= self.a2:
                    pts.append(p)
            else:
                p = _circle_points(self.c2, self.a2, rng.uniform(0, 2 * np.pi))
                if float(np.linalg.norm(p - self.c1)) <= self.a1:
                    pts.append(p)
        if len(pts) < count:
            raise RuntimeError("boundary sampling failed for crescent")
        return np.asarray(pts)

    def bbox(self):
        return self.c1 - self.a1 - self.r, self.c1 + self.a1 + self.r

    def special_points(self):
        return [c.copy() for c in self._corners]


class CuspPair(ProxSet):
    """Complement of two open discs of radius ``a`` tangent at the origin.

    The discs sit at ``(0, +-a)``, so the set pinches to a cusp at the
    origin: the region between the discs has width ~ x^2/(2a) and no ball of
    fixed radius fits near the tip.  Prox-regular with reach ``a``, it is
    the standard example violating the uniform non-empty-interior condition.
    """

    def __init__(self, disc_radius: float = 1.0):
        self.a = float(disc_radius)
        if self.a <= 0:
            raise ValueError("disc radius must be positive")
        self.c_up = np.array([0.0, self.a])
        self.c_dn = np.array([0.0, -self.a])
        self.r = self.a
        self.dim = 2

    def distance(self, y) -> float:
        y = np.asarray(y, dtype=float)
        d_up = self.a - float(np.linalg.norm(y - self.c_up))
        d_dn = self.a - float(np.linalg.norm(y - self.c_dn))
        return max(d_up, d_dn, 0.0)

    def clearance(self, p) -> float:
        p = np.asarray(p, dtype=float)
        c = min(
            float(np.linalg.norm(p - self.c_up)) - self.a,
            float(np.linalg.norm(p - self.c_dn)) - self.a,
        )
        return c

    def _nearest(self, y):
        center = self.c_up if np.linalg.norm(y - self.c_up) < self.a else self.c_dn
        v = y - center
        n = float(np.linalg.norm(v))
        if n == 0.0:
            return center + self.a * np.array([1.0, 0.0])
        return center + self.a * (v / n)

    def boundary_sample(self, count, rng):
        rng = np.random.default_rng(rng)
        n1 = count // 2
        return np.concatenate(
            [
                _circle_points(self.c_up, self.a, rng.uniform(0, 2 * np.pi, n1)),
                _circle_points(self.c_dn, self.a, rng.uniform(0, 2 * np.pi, count - n1)),
            ]
        )

    def bbox(self):
        return np.array([-2.0 * self.a, -3.0 * self.a]), np.array([2.0 * self.a, 3.0 * self.a])

    def special_points(self):
        return [np.zeros(2)]

    @property
    def tip(self) -> np.ndarray:
        return np.zeros(2)

    def interior_witness(self, x, rho, cap=None):
        x = np.asarray(x, dtype=float)
        target = 3.0 * rho
        if self.clearance(x) >= target:
            return x.copy()
        # closest admissible centers on the cusp axis
        s = math.sqrt(6.0 * self.a * rho + 9.0 * rho * rho)
        cands = [np.array([s, 0.0]), np.array([-s, 0.0])]
        generic = self._witness_search(x, rho, cap)
        if generic is not None:
            cands.append(generic)
        cands = [c for c in cands if self.clearance(c) >= target - 1e-12 * (1 + target)]
        if not cands:
            return None
        return min(cands, key=lambda c: float(np.linalg.norm(c - x)))


class RotatedSet(ProxSet):
    """Planar set rotated by ``angle`` about ``pivot``."""

    def __init__(self, base: ProxSet, angle: float, pivot=(0.0, 0.0)):
        if base.dim != 2:
            raise ValueError("rotation wrapper is planar")
        self.base = base
        self.angle = float(angle)
        self.pivot = np.asarray(pivot, dtype=float)
        c, s = math.cos(self.angle), math.sin(self.angle)
        self._rot = np.array([[c, -s], [s, c]])
        self.r = base.r
        self.dim = 2

    def _to_base(self, y: np.ndarray) -> np.ndarray:
        return self.pivot + (np.asarray(y, dtype=float) - self.pivot) @ self._rot

    def _from_base(self, p: np.ndarray) -> np.ndarray:
        return self.pivot + (np.asarray(p, dtype=float) - self.pivot) @ self._rot.T

    def distance(self, y) -> float:
        return self.base.distance(self._to_base(y))

    def clearance(self, p) -> float:
        return self.base.clearance(self._to_base(p))

    def _nearest(self, y):
        return self._from_base(self.base._nearest(self._to_base(y)))

    def boundary_sample(self, count, rng):
        return np.asarray([self._from_base(p) for p in self.base.boundary_sample(count, rng)])

    def bbox(self):
        lo, hi = self.base.bbox()
        corners = np.asarray(
            [self._from_base(np.array([a, b])) for a in (lo[0], hi[0]) for b in (lo[1], hi[1])]
        )
        return corners.min(axis=0), corners.max(axis=0)

    def special_points(self):
        return [self._from_base(p) for p in self.base.special_points()]

    def interior_witness(self, x, rho, cap=None):
        w = self.base.interior_witness(self._to_base(x), rho, cap)
        return None if w is None else self._from_base(w)


class TranslatedSet(ProxSet):
    """Set shifted by a fixed vector."""

    def __init__(self, base: ProxSet, shift):
        self.base = base
        self.shift = np.asarray(shift, dtype=float)
        if self.shift.size != base.dim:
            raise ValueError("shift dimension mismatch")
        self.r = base.r
        self.dim = base.dim

    def distance(self, y) -> float:
        return self.base.distance(np.asarray(y, dtype=float) - self.shift)

    def clearance(self, p) -> float:
        return self.base.clearance(np.asarray(p, dtype=float) - self.shift)

    def _nearest(self, y):
        return self.base._nearest(np.asarray(y, dtype=float) - self.shift) + self.shift

    def boundary_sample(self, count, rng):
        return self.base.boundary_sample(count, rng) + self.shift

    def bbox(self):
        lo, hi = self.base.bbox()
        return lo + self.shift, hi + self.shift

    def special_points(self):
        return [p + self.shift for p in self.base.special_points()]

    def interior_witness(self, x, rho, cap=None):
        w = self.base.interior_witness(np.asarray(x, dtype=float) - self.shift, rho, cap)
        return None if w is None else w + self.shift
