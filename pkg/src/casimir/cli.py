"""Command-line front end: ``casimir <task> --config scene.json [--out file] [--threads N]``.

Exit codes
----------
0
    Success.
1
    ``validate`` ran and at least one gated check failed.
2
    The configuration is invalid (schema or physical invariant), or the
    engine rejected an input.
3
    A sum, integral or determinant failed to converge or is ill-conditioned.

The CSV goes to standard output (or ``--out``); a one-line summary goes to
standard error. The thread count for the linear-algebra backend is taken from
``--threads``, else from ``CASIMIR_THREADS``; it is applied before the
numerical modules are imported and is best effort.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from importlib import resources

from jsonschema import Draft202012Validator

from .errors import CasimirError, ConditioningError, ConvergenceError, DomainError

__all__ = ["ConfigError", "SceneConfig", "SweepGrid", "parse_config", "run", "main", "TASKS", "FIELD_KINDS"]

TASKS = ("energy", "force", "sweep", "series", "validate")
FIELD_KINDS = ("scalar", "em", "proca")
THREAD_ENV = "CASIMIR_THREADS"
_BLAS_ENV = ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS")


class ConfigError(DomainError):
    """Invalid configuration; ``errors`` holds ``"path: message"`` strings."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class SweepGrid:
    parameter: str
    min: float
    max: float
    points: int
    scale: str = "log"

    def values(self):
        import numpy as np

        if self.points == 1:
            return [float(self.min)]
        if self.scale == "log":
            return [float(v) for v in np.geomspace(self.min, self.max, self.points)]
        return [float(v) for v in np.linspace(self.min, self.max, self.points)]


@dataclass
class SceneConfig:
    """Validated scene: engine objects plus the task plan."""

    kind: object
    bodies: list
    thermal: object
    quad: object
    task: str | None = None
    branch: str | None = None
    sweep: SweepGrid | None = None
    force: dict = field(default_factory=dict)
    n_max: int = 4
    raw: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# parsing


def _schema():
    text = resources.files("casimir").joinpath("data/scene.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "(document)"


def _schema_messages(error) -> list[str]:
    path = list(error.absolute_path)
    if error.validator == "required":
        missing = [p for p in error.validator_value if isinstance(error.instance, dict) and p not in error.instance]
        return [f"{_path(path + [m])}: required field is missing" for m in missing]
    if error.validator == "additionalProperties":
        extra = sorted(set(error.instance) - set(error.schema.get("properties", {})))
        return [f"{_path(path + [e])}: unknown field" for e in extra]
    if error.validator == "enum":
        allowed = ", ".join(str(v) for v in error.validator_value)
        what = "field kind" if path == ["field", "kind"] else "value"
        return [f"{_path(path)}: unknown {what} {error.instance!r}; allowed: {allowed}"]
    return [f"{_path(path)}: {error.message}"]


def _body_field(body_cfg) -> str:
    return {"interval": "a", "points": "nodes"}.get(body_cfg["shape"], "center")


def _build_chi(cfg):
    from .susceptibility import Constant, Lorentz

    if cfg["model"] == "constant":
        return Constant(float(cfg["chi0"]))
    return Lorentz(float(cfg["chi0"]), float(cfg["omega0"]), float(cfg.get("gamma", 0.0)))


def _build_body(cfg):
    from .geometry import Ball, Body, Interval, PointCloud, RingShell, SphereShell

    shape = cfg["shape"]
    if shape == "interval":
        geom = Interval(float(cfg["a"]), float(cfg["b"]))
    elif shape == "ring":
        geom = RingShell(float(cfg["radius"]), tuple(cfg["center"]))
    elif shape == "sphere":
        geom = SphereShell(float(cfg["radius"]), tuple(cfg["center"]))
    elif shape == "ball":
        geom = Ball(float(cfg["radius"]), tuple(cfg["center"]))
    else:
        geom = PointCloud(cfg["nodes"], cfg["weights"])
    return Body(geom, _build_chi(cfg["chi"]))


def _build_kind(cfg):
    from .kernels import EM, Proca, Scalar

    if cfg["kind"] == "scalar":
        return Scalar(int(cfg["dim"]))
    if cfg["kind"] == "em":
        return EM()
    return Proca(float(cfg["mass"]))


def _build_thermal(cfg):
    from .thermal import FiniteT, ZeroT

    if cfg.get("mode", "zero") == "zero":
        return ZeroT(float(cfg.get("nu_min", 0.0)), float(cfg.get("rel_tol", 1e-10)))
    return FiniteT(float(cfg["T"]), cfg.get("zero_mode"), float(cfg.get("rel_tol", 1e-12)),
                   int(cfg.get("l_max_cap", 100_000)))


def parse_config(text: str, task: str | None = None) -> SceneConfig:
    """Validate a JSON scene and build the engine objects.

    Raises ``ConfigError`` listing every problem with a path such as
    ``bodies[1].center``. Schema errors are reported together; physical
    invariants (interval order, overlaps, dimensions) are checked afterwards.
    """
    from .geometry import QuadratureSpec, body_dim, min_separation
    from .kernels import spatial_dim

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"(document): invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"]) from None
    validator = Draft202012Validator(_schema())
    messages = []
    for err in sorted(validator.iter_errors(data), key=lambda e: (list(map(str, e.absolute_path)), e.message)):
        messages.extend(_schema_messages(err))
    if messages:
        raise ConfigError(sorted(set(messages)))

    if task is not None and "task" in data and data["task"] != task:
        raise ConfigError([f"task: config is for {data['task']!r} but {task!r} was requested"])

    errors = []
    try:
        kind = _build_kind(data["field"])
    except DomainError as exc:
        raise ConfigError([f"field: {exc}"]) from None
    bodies = []
    for i, cfg in enumerate(data["bodies"]):
        try:
            body = _build_body(cfg)
        except DomainError as exc:
            errors.append(f"bodies[{i}].{_field_of_error(cfg, exc)}: {exc}")
            continue
        if body_dim(body) != spatial_dim(kind):
            errors.append(f"bodies[{i}].{_body_field(cfg)}: body is {body_dim(body)}D but the field lives in "
                          f"{spatial_dim(kind)}D")
            continue
        bodies.append((i, body))
    if not errors:
        for x, (i, bi) in enumerate(bodies):
            for j, bj in bodies[x + 1:]:
                try:
                    min_separation(bi, bj)
                except CasimirError as exc:
                    where = _body_field(data["bodies"][j])
                    errors.append(f"bodies[{j}].{where}: {str(exc).split(';')[0]} with bodies[{i}]")
    try:
        thermal = _build_thermal(data.get("thermal", {"mode": "zero"}))
    except DomainError as exc:
        errors.append(f"thermal: {exc}")
    try:
        quad = QuadratureSpec(**data.get("quadrature", {}))
    except DomainError as exc:
        errors.append(f"quadrature: {exc}")
    sweep = None
    if "sweep" in data:
        s = data["sweep"]
        if s["max"] < s["min"]:
            errors.append("sweep.max: must be >= sweep.min")
        sweep = SweepGrid(s["parameter"], float(s["min"]), float(s["max"]), int(s["points"]), s.get("scale", "log"))
    if errors:
        raise ConfigError(errors)
    return SceneConfig(kind=kind, bodies=[b for _, b in bodies], thermal=thermal, quad=quad,
                       task=data.get("task"), branch=data.get("branch"), sweep=sweep,
                       force=dict(data.get("force", {})), n_max=int(data.get("series", {}).get("n_max", 4)),
                       raw=data)


def _field_of_error(cfg, exc) -> str:
    text = str(exc)
    for name in ("radius", "center", "nodes", "weights", "chi0", "omega0", "gamma"):
        if name in text:
            return f"chi.{name}" if name in ("chi0", "omega0", "gamma") else name
    if cfg["shape"] == "interval":
        return "b"
    return _body_field(cfg)


# ---------------------------------------------------------------------------
# oracles


def _energy_oracle(scene):
    """Closed-form energy for scenes that have one, else ``None``."""
    from . import closedform as cf
    from .geometry import RingShell, SphereShell, body_center
    from .kernels import EM, Scalar
    from .susceptibility import Constant
    from .thermal import ZeroT

    a, b = scene.body_a, scene.body_b
    if not (isinstance(a.chi, Constant) and isinstance(b.chi, Constant) and isinstance(scene.thermal, ZeroT)):
        return None
    if type(a.shape) is not type(b.shape):
        return None
    R = float(((body_center(b) - body_center(a)) ** 2).sum() ** 0.5)
    ra, rb = getattr(a.shape, "radius", None), getattr(b.shape, "radius", None)
    if isinstance(a.shape, SphereShell):
        geom = cf.SpherePairGeometry(ra, rb, R)
        if isinstance(scene.kind, EM):
            return cf.energy_em_spheres(geom, a.chi.chi0, b.chi.chi0)
        if scene.kind == Scalar(3):
            return cf.energy_spheres_3d_scalar(geom, a.chi.chi0, b.chi.chi0)
    if isinstance(a.shape, RingShell) and scene.kind == Scalar(2) and scene.branch in (None, "static"):
        return cf.energy_rings_2d(ra, rb, R, a.chi.chi0, b.chi.chi0)
    return None


def _force_oracle(scene, R, dR, richardson, method):
    from . import closedform as cf
    from .perturbation import _is_interval_scene, _ordered_intervals, interval_parameters, place_at
    from .susceptibility import Constant
    from .thermal import FiniteT

    if _is_interval_scene(scene):
        lo, hi = _ordered_intervals(place_at(scene, R))
        a, b, c, d = lo.shape.a, lo.shape.b, hi.shape.a, hi.shape.b
        if isinstance(scene.thermal, FiniteT):
            return cf.force_1d_finite_t(*interval_parameters(a, b, c, d), lo.chi, hi.chi, scene.thermal.T)
        if isinstance(lo.chi, Constant) and isinstance(hi.chi, Constant):
            return cf.force_1d_zero_t(a, b, c, d, lo.chi.chi0, hi.chi.chi0)
        return None
    if _energy_oracle(scene) is None:
        return None

    # same difference scheme on the closed form
    def central(h):
        return (_energy_oracle(place_at(scene, R + h)) - _energy_oracle(place_at(scene, R - h))) / (2.0 * h)

    f1 = central(dR)
    return (4.0 * central(0.5 * dR) - f1) / 3.0 if richardson else f1


# ---------------------------------------------------------------------------
# tasks


def _fmt(x) -> str:
    # + 0.0 folds -0.0 into 0.0
    return "" if x is None else f"{float(x) + 0.0:.16e}"


def _row(parameter, value, qerr, terr, oracle):
    dev = None
    if oracle is not None:
        dev = abs(value - oracle) / abs(oracle) if oracle != 0 else abs(value)
    return [parameter if isinstance(parameter, str) else _fmt(parameter),
            _fmt(value), _fmt(qerr), _fmt(terr), _fmt(oracle), _fmt(dev)]


def _two_body_scene(cfg):
    from .perturbation import Scene

    if len(cfg.bodies) != 2:
        raise ConfigError([f"bodies: this task needs exactly two bodies, got {len(cfg.bodies)}"])
    return Scene(cfg.bodies[0], cfg.bodies[1], cfg.kind, cfg.thermal, cfg.quad, cfg.branch)


def _separation(scene) -> float:
    from .geometry import body_center

    return float(((body_center(scene.body_b) - body_center(scene.body_a)) ** 2).sum() ** 0.5)


def _task_energy(cfg):
    from .perturbation import scene_energy

    scene = _two_body_scene(cfg)
    res = scene_energy(scene)
    header = ["R", "energy", "quad_error", "thermal_tail", "oracle", "rel_deviation"]
    return header, [_row(_separation(scene), res.energy, res.quad_error, res.thermal_tail, _energy_oracle(scene))]


def _task_force(cfg):
    from .perturbation import force_with_errors

    scene = _two_body_scene(cfg)
    R = float(cfg.force.get("R", _separation(scene)))
    dR = float(cfg.force.get("dR", 1e-3 * R))
    richardson = bool(cfg.force.get("richardson", True))
    method = cfg.force.get("method", "auto")
    try:
        value, qerr, terr = force_with_errors(scene, R, dR, richardson, method)
    except CasimirError as exc:
        if isinstance(exc, (ConvergenceError, ConditioningError)):
            raise
        raise ConfigError([f"force: {exc}"]) from None
    header = ["R", "force", "quad_error", "thermal_tail", "oracle", "rel_deviation"]
    return header, [_row(R, value, qerr, terr, _force_oracle(scene, R, dR, richardson, method))]


def _task_sweep(cfg):
    from dataclasses import replace

    from .errors import OverlapError
    from .geometry import min_separation
    from .perturbation import place_at, scene_energy
    from .thermal import FiniteT

    if cfg.sweep is None:
        raise ConfigError(["sweep: required field is missing for the sweep task"])
    scene = _two_body_scene(cfg)
    grid = cfg.sweep.values()
    scenes = []
    for value in grid:
        if cfg.sweep.parameter == "R":
            try:
                s = place_at(scene, value)
                min_separation(s.body_a, s.body_b)
            except OverlapError:
                raise ConfigError([f"sweep.min: bodies overlap at R = {value:.6g}"]) from None
        else:
            t = cfg.thermal
            s = replace(scene, thermal=FiniteT(value, t.zero_mode, t.rel_tol, t.l_max_cap) if isinstance(t, FiniteT)
                        else FiniteT(value))
        scenes.append(s)
    rows = []
    for value, s in zip(grid, scenes):
        res = scene_energy(s)
        rows.append(_row(value, res.energy, res.quad_error, res.thermal_tail, _energy_oracle(s)))
    return [cfg.sweep.parameter, "energy", "quad_error", "thermal_tail", "oracle", "rel_deviation"], rows


def _task_series(cfg):
    import math

    from .perturbation import logdet_energy, series_energy

    orders = series_energy(cfg.bodies, cfg.n_max, cfg.kind, cfg.thermal, cfg.quad)
    rows = [_row(str(r.diagnostics["order"]), r.energy, r.quad_error, r.thermal_tail, None) for r in orders]
    ld = logdet_energy(cfg.bodies, cfg.kind, cfg.thermal, cfg.quad)
    total = math.fsum(r.energy for r in orders)
    rows.append(_row("sum", total, 0.0, math.fsum(r.thermal_tail for r in orders), ld.energy))
    return ["order", "energy", "quad_error", "thermal_tail", "oracle", "rel_deviation"], rows


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def run(task: str, cfg: SceneConfig | None = None) -> tuple[int, str, str]:
    """Execute a task; returns ``(exit_code, csv_text, summary)``."""
    if task == "validate":
        from .validate import all_passed, report_csv, validate_all

        rows = validate_all()
        counts = {s: sum(r.status == s for r in rows) for s in ("PASS", "FAIL", "INFO")}
        failed = ", ".join(r.name for r in rows if r.status == "FAIL")
        summary = f"validate: {counts['PASS']} pass, {counts['FAIL']} fail, {counts['INFO']} info"
        if failed:
            summary += f"; failed: {failed}"
        return (0 if all_passed(rows) else 1), report_csv(rows), summary
    handlers = {"energy": _task_energy, "force": _task_force, "sweep": _task_sweep, "series": _task_series}
    if task not in handlers:
        raise ConfigError([f"task: unknown task {task!r}; allowed: {', '.join(TASKS)}"])
    if cfg is None:
        raise ConfigError([f"(document): the {task} task needs --config"])
    header, rows = handlers[task](cfg)
    return 0, _csv_text(header, rows), f"{task}: {len(rows)} row(s)"


# ---------------------------------------------------------------------------
# entry point


def _apply_threads(n) -> None:
    if n is None:
        n = os.environ.get(THREAD_ENV)
    if n is None:
        return
    try:
        count = int(n)
    except ValueError:
        raise ConfigError([f"threads: expected a positive integer, got {n!r}"]) from None
    if count < 1:
        raise ConfigError([f"threads: expected a positive integer, got {n!r}"])
    for name in _BLAS_ENV:
        os.environ[name] = str(count)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="casimir", description="Perturbative Casimir energies and forces.")
    p.add_argument("task", choices=TASKS)
    p.add_argument("--config", help="JSON scene file (not needed for validate)")
    p.add_argument("--out", help="write CSV here instead of standard output")
    p.add_argument("--threads", type=int, help=f"linear-algebra threads (overrides {THREAD_ENV})")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    start = time.perf_counter()
    try:
        _apply_threads(args.threads)
        cfg = None
        if args.config is not None:
            try:
                with open(args.config, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError([f"(document): cannot read {args.config}: {exc.strerror}"]) from None
            cfg = parse_config(text, task=args.task)
        code, text, summary = run(args.task, cfg)
    except ConfigError as exc:
        for msg in exc.errors:
            print(f"error: {msg}", file=sys.stderr)
        return 2
    except (ConvergenceError, ConditioningError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except CasimirError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"{summary} ({time.perf_counter() - start:.2f} s)", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
