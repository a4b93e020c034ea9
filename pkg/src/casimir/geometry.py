"""Bodies, their quadrature rules, and separation bookkeeping."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Union

import numpy as np
from scipy.special import roots_legendre

from .errors import DomainError, OverlapError, SingularityError
from .susceptibility import SusceptibilityModel

__all__ = [
    "Interval",
    "RingShell",
    "SphereShell",
    "Ball",
    "PointCloud",
    "Shape",
    "Body",
    "QuadratureSpec",
    "body_dim",
    "body_center",
    "translate",
    "quadrature_nodes",
    "halved",
    "min_separation",
    "sphere_point_distance",
]


def _vec(values, dim, name):
    arr = np.asarray(values, dtype=float).reshape(-1)
    if arr.shape != (dim,) or not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be a finite {dim}-vector, got {values!r}")
    return tuple(float(v) for v in arr)


def _radius(radius):
    if not (math.isfinite(radius) and radius > 0):
        raise DomainError(f"radius must be > 0, got {radius!r}")


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.b > self.a):
            raise DomainError(f"interval needs a < b, got [{self.a}, {self.b}]")


@dataclass(frozen=True)
class RingShell:
    """Circle of given radius carrying a line density ``chi delta(r - radius)``."""

    radius: float
    center: tuple = (0.0, 0.0)

    def __post_init__(self):
        _radius(self.radius)
        object.__setattr__(self, "center", _vec(self.center, 2, "center"))


@dataclass(frozen=True)
class SphereShell:
    """Sphere carrying a surface density ``chi delta(r - radius)``."""

    radius: float
    center: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        _radius(self.radius)
        object.__setattr__(self, "center", _vec(self.center, 3, "center"))


@dataclass(frozen=True)
class Ball:
    radius: float
    center: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        _radius(self.radius)
        object.__setattr__(self, "center", _vec(self.center, 3, "center"))


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Explicit nodes (shape (n, d)) with positive measure weights."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        if nodes.ndim == 1:
            nodes = nodes[:, None]
        weights = np.array(self.weights, dtype=float).reshape(-1)
        if nodes.ndim != 2 or nodes.shape[0] < 1 or nodes.shape[1] not in (1, 2, 3):
            raise DomainError("point cloud nodes must have shape (n, d) with n >= 1, d in 1..3")
        if weights.shape[0] != nodes.shape[0]:
            raise DomainError("point cloud needs one weight per node")
        if not (np.all(np.isfinite(nodes)) and np.all(weights > 0) and np.all(np.isfinite(weights))):
            raise DomainError("point cloud nodes must be finite and weights > 0")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)


Shape = Union[Interval, RingShell, SphereShell, Ball, PointCloud]


@dataclass(frozen=True, eq=False)
class Body:
    shape: Shape
    chi: SusceptibilityModel


@dataclass(frozen=True)
class QuadratureSpec:
    """Discretisation orders for building body nodes.

    Parameters
    ----------
    angular_order : int
        Azimuthal points for rings and spheres.
    radial_order : int
        Gauss points across an interval, the polar Gauss order on spheres,
        and the radial order in balls (where it also sets the polar order).
    mc_samples, seed : int
        Uniform random points for balls when positive; 0 keeps the Gauss rule.
    """

    angular_order: int = 32
    radial_order: int = 16
    mc_samples: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.angular_order < 1 or self.radial_order < 1:
            raise DomainError("quadrature orders must be >= 1")
        if self.mc_samples < 0:
            raise DomainError("mc_samples must be >= 0")


def halved(spec: QuadratureSpec) -> QuadratureSpec:
    """Coarser companion rule used for quadrature error estimates."""
    return replace(
        spec,
        angular_order=max(1, spec.angular_order // 2),
        radial_order=max(1, spec.radial_order // 2),
        mc_samples=spec.mc_samples // 2,
    )


def body_dim(body: Body | Shape) -> int:
    shape = body.shape if isinstance(body, Body) else body
    if isinstance(shape, Interval):
        return 1
    if isinstance(shape, RingShell):
        return 2
    if isinstance(shape, (SphereShell, Ball)):
        return 3
    return shape.nodes.shape[1]


def body_center(body: Body) -> np.ndarray:
    shape = body.shape
    if isinstance(shape, Interval):
        return np.array([0.5 * (shape.a + shape.b)])
    if isinstance(shape, PointCloud):
        return shape.weights @ shape.nodes / shape.weights.sum()
    return np.array(shape.center)


def translate(body: Body, shift) -> Body:
    """Rigidly move a body by ``shift``."""
    shift = np.asarray(shift, dtype=float).reshape(-1)
    shape = body.shape
    if isinstance(shape, Interval):
        s = float(shift[0])
        new = Interval(shape.a + s, shape.b + s)
    elif isinstance(shape, PointCloud):
        new = PointCloud(shape.nodes + shift, shape.weights)
    else:
        new = replace(shape, center=tuple(np.array(shape.center) + shift))
    return Body(new, body.chi)


def _gauss(n, lo, hi):
    x, w = roots_legendre(n)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def _unit_sphere_rule(n_theta, n_phi):
    ct, wt = roots_legendre(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    st = np.sqrt(1.0 - ct * ct)
    ct_g, phi_g = np.meshgrid(ct, phi, indexing="ij")
    st_g = np.broadcast_to(st[:, None], ct_g.shape)
    pts = np.stack([st_g * np.cos(phi_g), st_g * np.sin(phi_g), ct_g], axis=-1).reshape(-1, 3)
    w = np.repeat(wt, n_phi) * (2.0 * np.pi / n_phi)
    return pts, w


def quadrature_nodes(body: Body, spec: QuadratureSpec) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (n, d) and positive weights integrating over the body's measure.

    Shells carry their surface measure (``radius dtheta`` for rings,
    ``radius^2 dOmega`` for spheres). Periodic angles use the trapezoid rule,
    everything else Gauss-Legendre.
    """
    shape = body.shape
    if isinstance(shape, Interval):
        x, w = _gauss(spec.radial_order, shape.a, shape.b)
        return x[:, None], w
    if isinstance(shape, RingShell):
        n = spec.angular_order
        theta = 2.0 * np.pi * np.arange(n) / n
        pts = np.column_stack([np.cos(theta), np.sin(theta)]) * shape.radius + np.array(shape.center)
        return pts, np.full(n, shape.radius * 2.0 * np.pi / n)
    if isinstance(shape, SphereShell):
        pts, w = _unit_sphere_rule(spec.radial_order, spec.angular_order)
        return pts * shape.radius + np.array(shape.center), w * shape.radius ** 2
    if isinstance(shape, Ball):
        if spec.mc_samples > 0:
            rng = np.random.default_rng(spec.seed)
            m = spec.mc_samples
            direction = rng.standard_normal((m, 3))
            direction /= np.linalg.norm(direction, axis=1)[:, None]
            rad = shape.radius * rng.random(m) ** (1.0 / 3.0)
            volume = 4.0 / 3.0 * np.pi * shape.radius ** 3
            return direction * rad[:, None] + np.array(shape.center), np.full(m, volume / m)
        rad, wr = _gauss(spec.radial_order, 0.0, shape.radius)
        pts, w = _unit_sphere_rule(spec.radial_order, spec.angular_order)
        nodes = (rad[:, None, None] * pts[None, :, :]).reshape(-1, 3) + np.array(shape.center)
        weights = ((wr * rad * rad)[:, None] * w[None, :]).reshape(-1)
        return nodes, weights
    return np.array(shape.nodes), np.array(shape.weights)


def _round_shape(shape):
    return isinstance(shape, (RingShell, SphereShell, Ball))


def _point_to_shape(points: np.ndarray, shape: Shape) -> np.ndarray:
    if isinstance(shape, Interval):
        x = points[:, 0]
        return np.maximum.reduce([shape.a - x, x - shape.b, np.zeros_like(x)])
    if isinstance(shape, PointCloud):
        diff = points[:, None, :] - shape.nodes[None, :, :]
        return np.linalg.norm(diff, axis=-1).min(axis=1)
    dist = np.linalg.norm(points - np.array(shape.center), axis=1)
    if isinstance(shape, Ball):
        return np.maximum(dist - shape.radius, 0.0)
    return np.abs(dist - shape.radius)


def min_separation(body_a: Body, body_b: Body) -> float:
    """Smallest distance between the supports; raises ``OverlapError`` if <= 0.

    Round shapes must be mutually exterior (centre distance larger than the
    sum of radii), as the closed-form results assume.
    """
    sa, sb = body_a.shape, body_b.shape
    if body_dim(sa) != body_dim(sb):
        raise DomainError("bodies live in different spatial dimensions")
    if isinstance(sa, Interval) and isinstance(sb, Interval):
        sep = max(sb.a - sa.b, sa.a - sb.b)
        where = "bodies[1].a"
    elif _round_shape(sa) and _round_shape(sb):
        sep = float(np.linalg.norm(np.subtract(sb.center, sa.center))) - sa.radius - sb.radius
        where = "bodies[1].center"
    elif isinstance(sa, PointCloud):
        sep = float(_point_to_shape(sa.nodes, sb).min())
        where = "bodies[0].nodes"
    elif isinstance(sb, PointCloud):
        sep = float(_point_to_shape(sb.nodes, sa).min())
        where = "bodies[1].nodes"
    else:
        raise DomainError(f"no separation rule for {type(sa).__name__} and {type(sb).__name__}")
    if not sep > 0:
        raise OverlapError(f"bodies overlap or touch (separation {sep:.6g}); check {where}")
    return sep


def sphere_point_distance(R, a, b, theta, theta_p, phi, phi_p):
    """Distance between a point on sphere ``a`` (centre 0) and one on sphere ``b``.

    Sphere ``b`` is centred at ``R`` on the z axis; both polar angles are
    measured from that axis.
    """
    if not R > 0:
        raise DomainError(f"R must be > 0, got {R!r}")
    cos_g = np.cos(theta) * np.cos(theta_p) + np.sin(theta) * np.sin(theta_p) * np.cos(phi - phi_p)
    rad = R * R + a * a + b * b - 2.0 * a * b * cos_g - 2.0 * R * (a * np.cos(theta) - b * np.cos(theta_p))
    if np.any(rad < -1e-12 * (R + a + b) ** 2):
        raise SingularityError("negative radicand in sphere point distance")
    return np.sqrt(np.maximum(rad, 0.0))
