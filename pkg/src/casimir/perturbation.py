"""Perturbative interaction energies and forces between weakly coupled bodies.

Three routes are provided:

* ``pair_energy``: lowest (second) order in the susceptibilities, evaluated by
  quadrature over the two bodies and reduced over frequencies;
* ``series_energy`` / ``logdet_energy``: arbitrary order on a node grid, as
  traces of powers of ``G X`` or its resummed log-determinant;
* ``energy_1d_intervals``: the closed interval formula in one dimension,
  including self energies.

Sign convention: ``E = T sum_l [ln det(1 + G X) - sum_b ln det(1 + G_b X_b)]``
so that the order-two term is ``-T sum_l sum_ij w_i w_j chi_i chi_j K(nu, r_ij)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .errors import ConditioningError, ConvergenceError, DomainError, SingularityError
from .geometry import (
    Body,
    Interval,
    QuadratureSpec,
    body_center,
    body_dim,
    halved,
    min_separation,
    quadrature_nodes,
    translate,
)
from .kernels import EM, FieldKind, Proca, Scalar, dyadic_blocks, kernel_array, spatial_dim
from .special import bessel_k0
from .susceptibility import Constant, eval_chi_imag, is_zero
from .thermal import FiniteT, ThermalSpec, ZeroT, default_zero_mode, thermal_reduce

__all__ = [
    "EnergyResult",
    "Scene",
    "MAX_SCALAR_NODES",
    "MAX_DYADIC_NODES",
    "pair_energy",
    "energy_1d_intervals",
    "interval_self_summand",
    "interval_cross_summand",
    "interval_parameters",
    "series_energy",
    "logdet_energy",
    "force",
    "force_with_errors",
    "place_at",
    "scene_energy",
]

MAX_SCALAR_NODES = 2000
MAX_DYADIC_NODES = 600

Branch = Literal["static", "bessel"]


@dataclass
class EnergyResult:
    """Energy with its error budget.

    Attributes
    ----------
    energy : float
        Interaction energy in natural units.
    quad_error : float
        ``|E(spec) - E(halved spec)|``; zero for explicit point clouds.
    thermal_tail : float
        Bound on the truncated part of the frequency sum or integral.
    diagnostics : dict
        Node counts, evaluation counts and flags.
    """

    energy: float
    quad_error: float = 0.0
    thermal_tail: float = 0.0
    diagnostics: dict = field(default_factory=dict)


def _check_kind_dim(kind: FieldKind, bodies) -> None:
    want = spatial_dim(kind)
    for i, body in enumerate(bodies):
        if body_dim(body) != want:
            raise DomainError(
                f"bodies[{i}] lives in {body_dim(body)} dimensions but the field needs {want}")


def _body_key(body: Body, nodes, weights):
    return (nodes.tobytes(), weights.tobytes(), repr(body.chi))


def _zero_mode(kind: FieldKind, thermal: ThermalSpec):
    if isinstance(thermal, FiniteT) and thermal.zero_mode is not None:
        return thermal.zero_mode
    return default_zero_mode(kind)


def _nu_floor(kind: FieldKind) -> float:
    return kind.mass if isinstance(kind, Proca) else 0.0


def _distances(xa, xb):
    return np.linalg.norm(xa[:, None, :] - xb[None, :, :], axis=-1)


def _default_branch(body_a: Body, body_b: Body) -> Branch:
    both_constant = isinstance(body_a.chi, Constant) and isinstance(body_b.chi, Constant)
    return "static" if both_constant else "bessel"


def pair_energy(body_a: Body, body_b: Body, kind: FieldKind, thermal: ThermalSpec,
                quad: QuadratureSpec = QuadratureSpec(), branch: Branch | None = None) -> EnergyResult:
    """Lowest-order interaction energy of two bodies.

    ``E = -reduce_nu sum_{i in A, j in B} w_i w_j chi_A(i nu) chi_B(i nu) K(nu, r_ij)``
    with the frequency reduction given by ``thermal``. Self energies are not
    included.

    Parameters
    ----------
    body_a, body_b : Body
        Non-overlapping bodies of the field's spatial dimension.
    kind : FieldKind
    thermal : ZeroT or FiniteT
    quad : QuadratureSpec
        Fine rule; the halved rule supplies ``quad_error``.
    branch : {"static", "bessel"}, optional
        Only for the 2D scalar at zero temperature. ``"static"`` applies the
        frequency-integrated kernel ``1/(32 pi^3 r^2)`` and needs constant
        susceptibilities; ``"bessel"`` integrates ``K0^2/(4 pi^2)`` over
        frequency. Defaults to static when both susceptibilities are constant.

    Returns
    -------
    EnergyResult
    """
    _check_kind_dim(kind, (body_a, body_b))
    sep = min_separation(body_a, body_b)
    diagnostics: dict = {"min_separation": sep}
    if isinstance(kind, Proca) and kind.mass > 0:
        diagnostics["below_mass_gap"] = "excluded"
    if is_zero(body_a.chi) or is_zero(body_b.chi):
        diagnostics["zero_susceptibility"] = True
        return EnergyResult(0.0, 0.0, 0.0, diagnostics)

    coarse = halved(quad)
    xa, wa = quadrature_nodes(body_a, quad)
    xb, wb = quadrature_nodes(body_b, quad)
    if _body_key(body_b, xb, wb) < _body_key(body_a, xa, wa):
        body_a, body_b = body_b, body_a
        xa, wa, xb, wb = xb, wb, xa, wa
    xa_c, wa_c = quadrature_nodes(body_a, coarse)
    xb_c, wb_c = quadrature_nodes(body_b, coarse)
    r_f, w_f = _distances(xa, xb), np.outer(wa, wb)
    r_c, w_c = _distances(xa_c, xb_c), np.outer(wa_c, wb_c)
    diagnostics.update(nodes_a=len(wa), nodes_b=len(wb))

    is_2d = isinstance(kind, Scalar) and kind.dim == 2
    if is_2d and isinstance(thermal, ZeroT):
        branch = branch or _default_branch(body_a, body_b)
        diagnostics["branch"] = branch
        if branch == "static":
            if not (isinstance(body_a.chi, Constant) and isinstance(body_b.chi, Constant)):
                raise DomainError("the static 2D branch needs frequency-independent susceptibilities")
            pref = body_a.chi.chi0 * body_b.chi.chi0 / (32.0 * math.pi ** 3)
            fine = -pref * float(np.sum(w_f / (r_f * r_f)))
            rough = -pref * float(np.sum(w_c / (r_c * r_c)))
            return EnergyResult(fine, abs(fine - rough), 0.0, diagnostics)
        if branch != "bessel":
            raise DomainError(f"branch must be 'static' or 'bessel', got {branch!r}")
    elif branch is not None:
        raise DomainError("branch only applies to the 2D scalar field at zero temperature")

    def integrand(nus):
        nus = np.atleast_1d(nus)
        out = np.empty((len(nus), 2))
        chis = eval_chi_imag(body_a.chi, nus) * eval_chi_imag(body_b.chi, nus)
        for i, nu in enumerate(nus):
            out[i, 0] = chis[i] * np.sum(w_f * kernel_array(kind, float(nu), r_f))
            out[i, 1] = chis[i] * np.sum(w_c * kernel_array(kind, float(nu), r_c))
        return out

    res = thermal_reduce(integrand, thermal, decay_scale=2.0 * sep,
                         zero_mode=_zero_mode(kind, thermal), nu_floor=_nu_floor(kind))
    fine, rough = -float(res.value[0]), -float(res.value[1])
    diagnostics.update(evaluations=res.evaluations, capped=res.capped)
    if isinstance(thermal, FiniteT):
        diagnostics["zero_mode"] = _zero_mode(kind, thermal)
    return EnergyResult(fine, abs(fine - rough), float(res.tail_bound[0]), diagnostics)


# ---------------------------------------------------------------------------
# one dimension, closed interval formula


def interval_parameters(a: float, b: float, c: float, d: float):
    """Centre distance ``r`` and half widths ``r'`` (second body), ``r''`` (first body)."""
    if not (a < b < c < d):
        raise DomainError(f"intervals need a < b < c < d, got {a}, {b}, {c}, {d}")
    return 0.5 * (c + d - a - b), 0.5 * (d - c), 0.5 * (b - a)


def _phi(x):
    # e^{-x} - 1 + x, accurate for small x
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < 1e-2
    xs = x[small]
    out[small] = xs * xs * (0.5 - xs * (1.0 / 6.0 - xs * (1.0 / 24.0 - xs / 120.0)))
    xl = x[~small]
    out[~small] = np.expm1(-xl) + xl
    return out


def interval_self_summand(nu, width: float, chi_values):
    """Self term ``-chi^2 (e^{-x} - 1 + x) / (2 nu^2)``, ``x = 2 nu width``; ``nu = 0`` gives ``-chi^2 width^2``."""
    nu = np.asarray(nu, dtype=float)
    chi = np.asarray(chi_values, dtype=float)
    out = np.empty(np.broadcast(nu, chi).shape)
    nu_b, chi_b = np.broadcast_arrays(nu, chi)
    zero = nu_b == 0
    out[zero] = -chi_b[zero] ** 2 * width * width
    nz = ~zero
    out[nz] = -chi_b[nz] ** 2 * _phi(2.0 * nu_b[nz] * width) / (2.0 * nu_b[nz] ** 2)
    return out


def interval_cross_summand(nu, r: float, r1: float, r2: float, chi_product):
    """Cross term ``-chi1 chi2 e^{-2 nu r} sinh(2 nu r') sinh(2 nu r'') / nu^2``.

    The ``nu = 0`` limit is ``-4 chi1 chi2 r' r''``.
    """
    nu = np.asarray(nu, dtype=float)
    nu_b, cp = np.broadcast_arrays(nu, np.asarray(chi_product, dtype=float))
    out = np.empty(nu_b.shape)
    zero = nu_b == 0
    out[zero] = -4.0 * cp[zero] * r1 * r2
    nz = ~zero
    n = nu_b[nz]
    big = 2.0 * n * max(r1, r2) > 300.0
    val = np.empty_like(n)
    nb = n[~big]
    val[~big] = np.exp(-2.0 * nb * r) * np.sinh(2.0 * nb * r1) * np.sinh(2.0 * nb * r2) / (nb * nb)
    ng = n[big]
    # sinh(x) sinh(y) e^{-z} as a sum of decaying exponentials
    val[big] = 0.25 * (np.exp(-2.0 * ng * (r - r1 - r2)) - np.exp(-2.0 * ng * (r - r1 + r2))
                       - np.exp(-2.0 * ng * (r + r1 - r2)) + np.exp(-2.0 * ng * (r + r1 + r2))) / (ng * ng)
    out[nz] = -cp[nz] * val
    return out


def energy_1d_intervals(a: float, b: float, c: float, d: float, chi1, chi2, thermal: ThermalSpec,
                        include_self: bool = True) -> EnergyResult:
    """Closed interval formula for bodies on ``[a, b]`` and ``[c, d]``.

    ``E = -reduce_nu [self_1 + self_2 + cross]`` with the summands of
    ``interval_self_summand`` and ``interval_cross_summand``. The self and
    cross parts are reduced separately and reported in ``diagnostics``; the
    self parts do not depend on the separation and cancel in forces.

    Self energies diverge for frequency-independent susceptibilities (the
    summand falls off as ``1/nu``); that case raises ``ConvergenceError``
    unless ``include_self`` is false.
    """
    r, r1, r2 = interval_parameters(a, b, c, d)
    thermal_kw = dict(zero_mode=_zero_mode(Scalar(1), thermal))

    def cross(nus):
        cp = eval_chi_imag(chi1, nus) * eval_chi_imag(chi2, nus)
        return interval_cross_summand(nus, r, r1, r2, cp)

    res = thermal_reduce(cross, thermal, decay_scale=2.0 * (r - r1 - r2), **thermal_kw)
    cross_part = -res.value
    tail = res.tail_bound
    diagnostics = {"r": r, "r_prime": r1, "r_double_prime": r2, "cross_energy": cross_part}
    self_parts = []
    if include_self:
        for width, model in ((2.0 * r2, chi1), (2.0 * r1, chi2)):
            if is_zero(model):
                self_parts.append(0.0)
                continue
            if isinstance(model, Constant):
                raise ConvergenceError(
                    "interval self energy diverges for a frequency-independent susceptibility; "
                    "use a Lorentz model or include_self=False")
            s = thermal_reduce(lambda nus, w=width, m=model: interval_self_summand(nus, w, eval_chi_imag(m, nus)),
                               thermal, decay_scale=None, **thermal_kw)
            self_parts.append(-s.value)
            tail += s.tail_bound
        diagnostics["self_energy_1"], diagnostics["self_energy_2"] = self_parts
    total = math.fsum([cross_part, *self_parts])
    return EnergyResult(total, 0.0, tail, diagnostics)


# ---------------------------------------------------------------------------
# node-grid expansion and log-determinant


def _grid(bodies, kind, quad):
    _check_kind_dim(kind, bodies)
    for i in range(len(bodies)):
        for j in range(i + 1, len(bodies)):
            min_separation(bodies[i], bodies[j])
    packed = []
    for body in bodies:
        x, w = quadrature_nodes(body, quad)
        packed.append((body, x, w))
    packed.sort(key=lambda item: _body_key(*item))
    dyadic = isinstance(kind, (EM, Proca))
    total = sum(len(w) for _, _, w in packed)
    cap = MAX_DYADIC_NODES if dyadic else MAX_SCALAR_NODES
    if total > cap:
        raise DomainError(f"{total} nodes exceed the dense linear algebra cap of {cap}")
    x = np.concatenate([p[1] for p in packed])
    w = np.concatenate([p[2] for p in packed])
    labels = np.concatenate([np.full(len(p[2]), i) for i, p in enumerate(packed)])
    diff = x[:, None, :] - x[None, :, :]
    r = np.linalg.norm(diff, axis=-1)
    off = ~np.eye(len(w), dtype=bool)
    if np.any(r[off] == 0):
        raise SingularityError("coincident nodes on the grid")
    return [p[0] for p in packed], x, w, labels, diff, r, dyadic


def _scalar_green(kind: Scalar, nu, r):
    if kind.dim == 1:
        return np.exp(-nu * r) / (2.0 * nu)
    if kind.dim == 2:
        return bessel_k0(nu * r) / (2.0 * math.pi)
    return np.exp(-nu * r) / (4.0 * math.pi * r)


def _coupling_matrix(bodies, kind, nu, w, labels, diff, r, dyadic):
    n = len(w)
    chi_nodes = np.empty(n)
    for i, body in enumerate(bodies):
        chi_nodes[labels == i] = eval_chi_imag(body.chi, nu)
    scale = chi_nodes * w
    if dyadic:
        safe = diff.copy()
        idx = np.arange(n)
        safe[idx, idx, 0] = 1.0
        blocks = dyadic_blocks(kind, nu, safe)
        blocks[idx, idx] = 0.0
        blocks = blocks * scale[None, :, None, None]
        return blocks.transpose(0, 2, 1, 3).reshape(3 * n, 3 * n), np.repeat(labels, 3)
    if isinstance(kind, Scalar) and kind.dim in (1, 2) and nu == 0:
        raise DomainError(f"{kind.dim}D scalar Green's function diverges at nu = 0")
    rr = r.copy()
    np.fill_diagonal(rr, 1.0)
    g = _scalar_green(kind, nu, rr)
    np.fill_diagonal(g, 0.0)
    return g * scale[None, :], labels


def _interaction_traces(m, d, n_max):
    """``tr M^n - tr D^n`` for ``n = 1..n_max`` with ``D`` the block diagonal of ``M``.

    Uses ``M^n - D^n = sum_k M^k O D^(n-1-k)`` (``O = M - D``) so every term
    carries an inter-body factor and nothing cancels.
    """
    o = m - d
    eye = np.eye(m.shape[0])
    m_pows = [eye]
    d_pows = [eye]
    for _ in range(1, n_max):
        m_pows.append(m_pows[-1] @ m)
        d_pows.append(d_pows[-1] @ d)
    out = np.empty(n_max)
    for n in range(1, n_max + 1):
        acc = [float(np.sum((m_pows[k] @ o) * d_pows[n - 1 - k].T)) for k in range(n)]
        out[n - 1] = math.fsum(acc)
    return out


def _lu_checked(a, what):
    lu, piv = lu_factor(a, check_finite=True)
    diag = np.diag(lu)
    mag = np.abs(diag)
    if np.any(diag == 0) or mag.min() < 1e-13 * mag.max():
        raise ConditioningError(f"{what} is numerically singular")
    return lu, piv, diag


def _interaction_logdet(m, d, lab, n_body):
    """``ln det(1 + M) - ln det(1 + D)`` as ``ln det(1 + (1 + D)^-1 O)``."""
    n = m.shape[0]
    o = m - d
    nmat = np.empty_like(m)
    for b in range(n_body):
        sel = lab == b
        lu, piv, _ = _lu_checked(np.eye(int(sel.sum())) + m[np.ix_(sel, sel)], "1 + G X of one body")
        nmat[sel] = lu_solve((lu, piv), o[sel])
    if np.linalg.norm(nmat) < 0.5:
        # log series; the trace of N is zero, and terms shrink geometrically
        terms = []
        p = nmat
        for k in range(2, 400):
            p = p @ nmat
            terms.append((-1.0) ** (k + 1) * np.trace(p) / k)
            if k > 3 and abs(terms[-1]) + abs(terms[-2]) <= 1e-17 * abs(math.fsum(terms)):
                break
        return math.fsum(terms)
    _, _, diag = _lu_checked(np.eye(n) + nmat, "1 + G X")
    if np.count_nonzero(diag < 0) % 2:
        raise ConditioningError("1 + G X has a negative determinant; coupling too strong")
    return math.fsum(np.log(np.abs(diag)))


def _grid_integrand(bodies, kind, quad, n_max, with_logdet):
    bodies, x, w, labels, diff, r, dyadic = _grid(bodies, kind, quad)
    n_body = len(bodies)
    signs = np.array([(-1.0) ** (k + 1) / k for k in range(1, n_max + 1)])

    def f(nus):
        nus = np.atleast_1d(nus)
        width = n_max + (1 if with_logdet else 0)
        out = np.empty((len(nus), width))
        for i, nu in enumerate(nus):
            m, lab = _coupling_matrix(bodies, kind, float(nu), w, labels, diff, r, dyadic)
            d = np.where(lab[:, None] == lab[None, :], m, 0.0)
            if n_max:
                out[i, :n_max] = signs * _interaction_traces(m, d, n_max)
            if with_logdet:
                out[i, n_max] = _interaction_logdet(m, d, lab, n_body)
        return out

    seps = [min_separation(bodies[i], bodies[j])
            for i in range(n_body) for j in range(i + 1, n_body)]
    return f, (2.0 * min(seps) if seps else None), len(w)


def series_energy(bodies, n_max: int, kind: FieldKind, thermal: ThermalSpec,
                  quad: QuadratureSpec = QuadratureSpec()) -> list[EnergyResult]:
    """Interaction part of each order ``n = 1..n_max`` of the trace-log expansion.

    Order ``n`` is ``reduce_nu (-1)^{n+1}/n [tr M^n - sum_b tr M_b^n]`` with
    ``M_ij = G(x_i - x_j) chi_j w_j`` off the diagonal and zero on it (3x3
    blocks for vector fields). The reduction uses ``T sum_l`` or the
    ``(1/2 pi) int dnu`` rule of ``thermal``; order 1 is identically zero.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    if len(bodies) < 1:
        raise DomainError("need at least one body")
    f, decay, n_nodes = _grid_integrand(bodies, kind, quad, n_max, with_logdet=False)
    if len(bodies) == 1:
        return [EnergyResult(0.0, 0.0, 0.0, {"order": n, "nodes": n_nodes}) for n in range(1, n_max + 1)]
    res = thermal_reduce(f, thermal, decay_scale=decay, zero_mode=_zero_mode(kind, thermal),
                         nu_floor=_nu_floor(kind))
    out = []
    for k in range(n_max):
        value = 0.0 if k == 0 else float(res.value[k])
        out.append(EnergyResult(value, 0.0, float(res.tail_bound[k]) if k else 0.0,
                                {"order": k + 1, "nodes": n_nodes, "evaluations": res.evaluations,
                                 "capped": res.capped}))
    return out


def logdet_energy(bodies, kind: FieldKind, thermal: ThermalSpec,
                  quad: QuadratureSpec = QuadratureSpec()) -> EnergyResult:
    """Resummed interaction energy ``reduce_nu [ln det(1 + M) - sum_b ln det(1 + M_b)]``."""
    if len(bodies) < 1:
        raise DomainError("need at least one body")
    f, decay, n_nodes = _grid_integrand(bodies, kind, quad, 0, with_logdet=True)
    if len(bodies) == 1:
        return EnergyResult(0.0, 0.0, 0.0, {"nodes": n_nodes})
    res = thermal_reduce(f, thermal, decay_scale=decay, zero_mode=_zero_mode(kind, thermal),
                         nu_floor=_nu_floor(kind))
    return EnergyResult(float(res.value[0]), 0.0, float(res.tail_bound[0]),
                        {"nodes": n_nodes, "evaluations": res.evaluations, "capped": res.capped})


# ---------------------------------------------------------------------------
# forces


@dataclass(frozen=True)
class Scene:
    """Two bodies, a field and an evaluation plan.

    The separation parameter ``R`` is the distance between body centres; the
    second body is moved along the line joining the centres (the last axis if
    they coincide).
    """

    body_a: Body
    body_b: Body
    kind: FieldKind
    thermal: ThermalSpec
    quad: QuadratureSpec = QuadratureSpec()
    branch: Branch | None = None


def _axis(scene: Scene) -> np.ndarray:
    ca, cb = body_center(scene.body_a), body_center(scene.body_b)
    delta = cb - ca
    norm = float(np.linalg.norm(delta))
    if norm == 0:
        axis = np.zeros_like(delta)
        axis[-1] = 1.0
        return axis
    return delta / norm


def place_at(scene: Scene, R: float) -> Scene:
    """Scene with the second body moved to centre distance ``R``."""
    if not R > 0:
        raise DomainError(f"separation R must be > 0, got {R!r}")
    ca, cb = body_center(scene.body_a), body_center(scene.body_b)
    shift = ca + R * _axis(scene) - cb
    return replace(scene, body_b=translate(scene.body_b, shift))


def _is_interval_scene(scene: Scene) -> bool:
    return (isinstance(scene.kind, Scalar) and scene.kind.dim == 1
            and isinstance(scene.body_a.shape, Interval) and isinstance(scene.body_b.shape, Interval))


def _ordered_intervals(scene: Scene):
    a, b = scene.body_a, scene.body_b
    if a.shape.a > b.shape.a:
        a, b = b, a
    return a, b


def scene_energy(scene: Scene) -> EnergyResult:
    """Interaction energy of a scene; interval pairs use the closed interval formula without self terms."""
    if _is_interval_scene(scene):
        lo, hi = _ordered_intervals(scene)
        return energy_1d_intervals(lo.shape.a, lo.shape.b, hi.shape.a, hi.shape.b,
                                   lo.chi, hi.chi, scene.thermal, include_self=False)
    return pair_energy(scene.body_a, scene.body_b, scene.kind, scene.thermal, scene.quad, scene.branch)


def _analytic_1d_force(scene: Scene):
    lo, hi = _ordered_intervals(scene)
    r, r1, r2 = interval_parameters(lo.shape.a, lo.shape.b, hi.shape.a, hi.shape.b)

    def summand(nus):
        cp = eval_chi_imag(lo.chi, nus) * eval_chi_imag(hi.chi, nus)
        # d/dr of the cross summand is -2 nu times it
        return -2.0 * np.asarray(nus) * interval_cross_summand(nus, r, r1, r2, cp)

    res = thermal_reduce(summand, scene.thermal, decay_scale=2.0 * (r - r1 - r2),
                         zero_mode=_zero_mode(Scalar(1), scene.thermal))
    return -res.value, 0.0, res.tail_bound


def force_with_errors(scene: Scene, R: float, dR: float, richardson: bool = False,
                      method: Literal["auto", "analytic", "difference"] = "auto"):
    """Force ``F = dE/dR`` with error estimates ``(F, quad_error, thermal_tail)``.

    For two intervals in one dimension the energy is the closed interval
    formula; ``method="analytic"`` (the default there) sums its exact
    derivative. Everything else uses the central difference
    ``[E(R + dR) - E(R - dR)] / (2 dR)``, optionally Richardson-extrapolated
    with step ``dR/2``.
    """
    if not dR > 0:
        raise DomainError(f"dR must be > 0, got {dR!r}")
    if method not in ("auto", "analytic", "difference"):
        raise DomainError(f"unknown force method {method!r}")
    if method == "analytic" and not _is_interval_scene(scene):
        raise DomainError("the analytic force path is only available for two 1D intervals")
    if _is_interval_scene(scene) and method in ("auto", "analytic"):
        return _analytic_1d_force(place_at(scene, R))

    # overlap check before any work
    place_at(scene, R - dR)

    def central(h):
        ep = scene_energy(place_at(scene, R + h))
        em = scene_energy(place_at(scene, R - h))
        value = (ep.energy - em.energy) / (2.0 * h)
        return value, (ep.quad_error + em.quad_error) / (2.0 * h), (ep.thermal_tail + em.thermal_tail) / (2.0 * h)

    f1, q1, t1 = central(dR)
    if not richardson:
        return f1, q1, t1
    f2, q2, t2 = central(0.5 * dR)
    return (4.0 * f2 - f1) / 3.0, (4.0 * q2 + q1) / 3.0, (4.0 * t2 + t1) / 3.0


def force(scene: Scene, R: float, dR: float, richardson: bool = False,
          method: Literal["auto", "analytic", "difference"] = "auto") -> float:
    """Force ``F = dE/dR`` at centre distance ``R``; see ``force_with_errors``."""
    return float(force_with_errors(scene, R, dR, richardson, method)[0])
