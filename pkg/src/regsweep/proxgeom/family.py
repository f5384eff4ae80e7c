"""Parametric families of prox-regular sets with Hausdorff-distance control.

A family maps a parameter ``w`` to a set ``Z(w)`` and reports the Hausdorff
distance between members as a bracket: exact where the geometry is analytic
(concentric balls, translates of a bounded set) and a certified enclosure
otherwise.  Safety checks downstream always consume the upper end of the
bracket; violation assertions consume the lower end.
"""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass

import numpy as np

from .sets import Ball, ProxSet, RotatedSet, TranslatedSet

__all__ = [
    "Bracket",
    "InteriorParams",
    "ParamFamily",
    "FixedFamily",
    "ConcentricBallFamily",
    "TranslationFamily",
    "RotationFamily",
    "hausdorff",
    "hausdorff_bracket",
    "cover_net",
]


@dataclass(frozen=True)
class Bracket:
    """Certified enclosure ``lo <= value <= hi`` of a nonnegative quantity."""

    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi + 1e-15 * (1.0 + abs(self.hi)):
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: float) -> "Bracket":
        return cls(float(value), float(value))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        return self.width <= 1e-12 * (1.0 + abs(self.hi))


@dataclass(frozen=True)
class InteriorParams:
    """Uniform non-empty-interior parameters shared by a family.

    ``rho`` is the inner-ball scale, ``R`` bounds the witness offset in
    units of ``rho``; admissibility requires ``R >= 3`` and
    ``rho < 2 r / (1 + R^2)``.
    """

    rho: float
    R: float

    def validate(self, r: float) -> None:
        if not self.R >= 3.0:
            raise ValueError(f"R must be at least 3, got {self.R}")
        if not (0.0 < self.rho < 2.0 * r / (1.0 + self.R**2)):
            raise ValueError(
                f"rho={self.rho:g} outside (0, {2.0 * r / (1.0 + self.R ** 2):g}) for r={r:g}, R={self.R:g}"
            )


class ParamFamily(abc.ABC):
    """Map ``w -> Z(w)`` with a continuity modulus for the Hausdorff distance."""

    interior: InteriorParams | None = None
    lipschitz: float | None = None

    @abc.abstractmethod
    def set_at(self, w) -> ProxSet: ...

    @abc.abstractmethod
    def hausdorff(self, w1, w2) -> Bracket: ...

    def contains_param(self, w) -> bool:
        return True

    def modulus(self, eps: float) -> float:
        """Spacing ``delta`` with ``d_H(Z(w1), Z(w2)) < eps`` for ``|w1-w2| < delta``."""
        if self.lipschitz is None:
            raise ValueError("family has no Lipschitz constant; supply a custom modulus")
        if self.lipschitz == 0.0:
            return math.inf
        return eps / self.lipschitz


class FixedFamily(ParamFamily):
    """Constant family: the parameter is ignored."""

    def __init__(self, base: ProxSet, interior: InteriorParams | None = None):
        self.base = base
        self.interior = interior
        self.lipschitz = 0.0
        if interior is not None and math.isfinite(base.r):
            interior.validate(base.r)

    def set_at(self, w) -> ProxSet:
        return self.base

    def hausdorff(self, w1, w2) -> Bracket:
        return Bracket.exact(0.0)


class ConcentricBallFamily(ParamFamily):
    """Balls of radius ``w`` about a fixed center; ``d_H`` equals ``|w1 - w2|``."""

    def __init__(self, center, r: float = math.inf, radius_range=(0.0, math.inf)):
        self.center = np.asarray(center, dtype=float)
        self.r = float(r)
        self.radius_range = (float(radius_range[0]), float(radius_range[1]))
        self.lipschitz = 1.0

    def set_at(self, w) -> ProxSet:
        return Ball(self.center, _scalar(w), r=self.r)

    def contains_param(self, w) -> bool:
        lo, hi = self.radius_range
        return lo < _scalar(w) <= hi or (lo <= _scalar(w) <= hi and _scalar(w) > 0)

    def hausdorff(self, w1, w2) -> Bracket:
        return Bracket.exact(abs(_scalar(w1) - _scalar(w2)))


class TranslationFamily(ParamFamily):
    """Translates of a bounded base set; ``d_H`` equals the shift distance."""

    def __init__(self, base: ProxSet, interior: InteriorParams | None = None):
        self.base = base
        self.interior = interior
        self.lipschitz = 1.0
        if interior is not None and math.isfinite(base.r):
            interior.validate(base.r)

    def set_at(self, w) -> ProxSet:
        return TranslatedSet(self.base, np.asarray(w, dtype=float))

    def hausdorff(self, w1, w2) -> Bracket:
        return Bracket.exact(float(np.linalg.norm(np.asarray(w1, float) - np.asarray(w2, float))))


class RotationFamily(ParamFamily):
    """Rotations of a planar set about a pivot, parametrised by the angle.

    The chord bound ``2 sin(|dw|/2) * radius_bound`` certifies the upper end
    of the Hausdorff bracket; the trivial lower end is 0.  ``radius_bound``
    must dominate the distance from the pivot to every point of the set.
    """

    def __init__(
        self,
        base: ProxSet,
        pivot=(0.0, 0.0),
        radius_bound: float | None = None,
        interior: InteriorParams | None = None,
    ):
        self.base = base
        self.pivot = np.asarray(pivot, dtype=float)
        if radius_bound is None:
            lo, hi = base.bbox()
            corners = np.asarray([[a, b] for a in (lo[0], hi[0]) for b in (lo[1], hi[1])])
            radius_bound = float(np.max(np.linalg.norm(corners - self.pivot, axis=1)))
        self.radius_bound = float(radius_bound)
        self.lipschitz = self.radius_bound
        self.interior = interior
        if interior is not None and math.isfinite(base.r):
            interior.validate(base.r)

    def set_at(self, w) -> ProxSet:
        return RotatedSet(self.base, _scalar(w), self.pivot)

    def hausdorff(self, w1, w2) -> Bracket:
        dw = abs(_scalar(w1) - _scalar(w2))
        hi = 2.0 * math.sin(min(dw, math.pi) / 2.0) * self.radius_bound
        return Bracket(0.0, hi)

    def hausdorff_sampled(self, w1, w2, count: int = 2000, seed: int = 0) -> Bracket:
        """Tighter bracket with a sampled lower end (slower)."""
        upper = self.hausdorff(w1, w2).hi
        z1, z2 = self.set_at(w1), self.set_at(w2)
        rng = np.random.default_rng(seed)
        pts1 = z1.boundary_sample(count, rng)
        pts2 = z2.boundary_sample(count, rng)
        lo = max(
            max(z2.distance(p) for p in pts1),
            max(z1.distance(p) for p in pts2),
        )
        return Bracket(min(lo, upper), upper)


def _scalar(w) -> float:
    arr = np.asarray(w, dtype=float)
    if arr.size != 1:
        raise ValueError("expected a scalar parameter")
    return float(arr.reshape(()))


def hausdorff(family: ParamFamily, w1, w2) -> Bracket:
    """Hausdorff distance bracket between two members of a family."""
    if not (family.contains_param(w1) and family.contains_param(w2)):
        raise ValueError("parameter outside the family's domain")
    return family.hausdorff(w1, w2)


def cover_net(s: ProxSet, target: int = 20000):
    """Grid net of a bounded set: points of the set within ``h`` of any set point."""
    lo, hi = s.bbox()
    lo, hi = np.asarray(lo, float), np.asarray(hi, float)
    extent = hi - lo
    if not np.all(np.isfinite(extent)):
        raise ValueError("cover net needs a bounded set")
    n = s.dim
    per_axis = max(2, int(round(target ** (1.0 / n))))
    axes = [np.linspace(lo[i], hi[i], per_axis) for i in range(n)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    spacing = float(np.max(extent / (per_axis - 1)))
    h = spacing * math.sqrt(n)
    inside = np.asarray([s.distance(p) <= 1e-12 for p in mesh])
    return mesh[inside], h


def hausdorff_bracket(s1: ProxSet, s2: ProxSet, target: int = 20000) -> Bracket:
    """Certified two-sided Hausdorff bracket for bounded sets via cover nets."""
    pts1, h1 = cover_net(s1, target)
    pts2, h2 = cover_net(s2, target)
    if pts1.size == 0 or pts2.size == 0:
        raise ValueError("cover net found no points; bbox may be wrong")
    sup1 = max(s2.distance(p) for p in pts1)
    sup2 = max(s1.distance(p) for p in pts2)
    lo = max(sup1, sup2)
    return Bracket(lo, lo + max(h1, h2))
