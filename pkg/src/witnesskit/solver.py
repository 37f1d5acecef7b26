"""Homotopy continuation for square polynomial systems.

The tracker follows zero paths of a homotopy H(x; t) as the real parameter t
moves monotonically from 1 to ``t_end`` (0 by default), using an Euler
predictor and a Newton corrector with adaptive step length.  Endpoints are
polished by Newton's method and certified with an alpha-theoretic test: a
point is accepted as ``certified`` only when

    alpha = beta * gamma_bound < (13 - 3*sqrt(17)) / 4

with beta the Newton step length and gamma_bound a conservative bound on the
higher-derivative ratio.  ``certified=False`` is inconclusive, never a
disproof.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, SingularJacobian, StartPointError
from .polysys import Polynomial, PolySystem
from .seeding import subsystem_rng, unit_gamma

__all__ = [
    "ALPHA_THRESHOLD",
    "DIVERGENCE_RADIUS",
    "SINGULAR_CONDITION",
    "TrackerSettings",
    "PathStatus",
    "PathResult",
    "Certificate",
    "Homotopy",
    "ParametricHomotopy",
    "Solution",
    "PathSummary",
    "SolveResult",
    "newton_step",
    "newton_refine",
    "newton_update_norms",
    "alpha_number",
    "bezout_start",
    "track_path",
    "solve_total_degree",
]

ALPHA_THRESHOLD = (13.0 - 3.0 * math.sqrt(17.0)) / 4.0
DIVERGENCE_RADIUS = 1e8
SINGULAR_CONDITION = 1e10
DEDUP_TOL = 1e-6


def _require_square(system: PolySystem) -> None:
    if system.num_polys != system.num_vars:
        raise DimensionMismatch(
            f"square system required, got {system.num_polys} equations in "
            f"{system.num_vars} variables"
        )


def _point(point: Sequence[complex], n: int) -> np.ndarray:
    x = np.asarray(point, dtype=np.complex128)
    if x.shape != (n,):
        raise DimensionMismatch(f"point of length {n} required")
    return x


# -- Newton ------------------------------------------------------------------


def newton_step(system: PolySystem, point: Sequence[complex]) -> np.ndarray:
    """One Newton iterate x - DF(x)^{-1} F(x), via a linear solve."""
    _require_square(system)
    x = _point(point, system.num_vars)
    value, jac = system.eval_with_jacobian(x)
    try:
        delta = np.linalg.solve(jac, value)
    except np.linalg.LinAlgError as exc:
        raise SingularJacobian("Jacobian is singular at the given point") from exc
    if not np.all(np.isfinite(delta)):
        raise SingularJacobian("Newton linear solve produced non-finite values")
    return x - delta


def newton_refine(
    system: PolySystem,
    point: Sequence[complex],
    tol: float = 1e-12,
    max_iters: int = 20,
) -> tuple[np.ndarray, bool, int]:
    """Iterate Newton until the update norm drops below ``tol``.

    Returns (point, converged, iterations used).  An exact root converges
    in at most one iteration because its first update is zero.
    """
    x = _point(point, system.num_vars)
    for it in range(1, max_iters + 1):
        nxt = newton_step(system, x)
        step = np.linalg.norm(nxt - x)
        x = nxt
        if step < tol:
            return x, True, it
    return x, False, max_iters


def newton_update_norms(
    system: PolySystem, point: Sequence[complex], count: int
) -> list[float]:
    """Norms of the next ``count`` Newton updates from ``point``."""
    x = _point(point, system.num_vars)
    norms = []
    for _ in range(count):
        nxt = newton_step(system, x)
        norms.append(float(np.linalg.norm(nxt - x)))
        x = nxt
    return norms


# -- alpha certification ------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Result of the alpha test at a candidate root."""

    alpha: float
    beta: float
    gamma_bound: float
    certified: bool


def _derivative_tensor_bound(system: PolySystem, abs_x: np.ndarray, k: int) -> float:
    """Upper bound for the norm of the order-k derivative tensor at |x|.

    Sums absolute coefficient magnitudes of every order-k partial, evaluated
    at the absolute values of the coordinates, counting ordered index tuples.
    """
    n = system.num_vars
    total = 0.0
    for combo in itertools.combinations_with_replacement(range(n), k):
        kappa = np.zeros(n, dtype=np.int64)
        for j in combo:
            kappa[j] += 1
        mult = math.factorial(k)
        for c in kappa:
            mult //= math.factorial(int(c))
        for p in system.polys:
            if p.degree < k or p.num_terms == 0:
                continue
            exps = p._exps
            ok = np.all(exps >= kappa[None, :], axis=1)
            if not ok.any():
                continue
            sub = exps[ok].astype(np.float64)
            vals = np.abs(p._coeffs[ok]).astype(np.float64)
            for j in range(n):
                kj = int(kappa[j])
                if kj == 0:
                    continue
                e = sub[:, j]
                ff = np.ones_like(e)
                for r in range(kj):
                    ff *= e - r
                vals *= ff * abs_x[j] ** (e - kj)
            total += mult * float(vals.sum())
    return total


def alpha_number(system: PolySystem, point: Sequence[complex]) -> Certificate:
    """Alpha test at ``point``; sound-conservative, never optimistic.

    A linear system has no higher derivatives, so gamma_bound is 0 and any
    solvable point certifies.
    """
    _require_square(system)
    x = _point(point, system.num_vars)
    value, jac = system.eval_with_jacobian(x)
    try:
        newton_delta = np.linalg.solve(jac, value)
        svals = np.linalg.svd(jac, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise SingularJacobian("Jacobian is singular at the given point") from exc
    smin = float(svals[-1])
    if smin <= 0.0 or not np.all(np.isfinite(newton_delta)):
        raise SingularJacobian("Jacobian is numerically singular at the given point")
    beta = float(np.linalg.norm(newton_delta))
    inv_norm = 1.0 / smin
    abs_x = np.abs(x)
    maxdeg = max((p.degree for p in system.polys), default=0)
    gamma_bound = 0.0
    for k in range(2, maxdeg + 1):
        bound_k = _derivative_tensor_bound(system, abs_x, k)
        if bound_k > 0.0:
            gamma_k = (inv_norm * bound_k / math.factorial(k)) ** (1.0 / (k - 1))
            gamma_bound = max(gamma_bound, gamma_k)
    alpha = beta * gamma_bound
    return Certificate(
        alpha=alpha,
        beta=beta,
        gamma_bound=gamma_bound,
        certified=bool(alpha < ALPHA_THRESHOLD),
    )


# -- start systems -------------------------------------------------------------


def bezout_start(degrees: Sequence[int]) -> tuple[PolySystem, list[np.ndarray]]:
    """Total-degree start system x_i^{d_i} - 1 with its full root grid.

    Start points enumerate the Cartesian product of d_i-th roots of unity in
    a fixed deterministic order, prod(d_i) points in total.
    """
    degs = [int(d) for d in degrees]
    if not degs or any(d < 1 for d in degs):
        raise DimensionMismatch("degrees must be positive integers")
    n = len(degs)
    polys = []
    for i, d in enumerate(degs):
        e = [0] * n
        e[i] = d
        polys.append(Polynomial(n, [(tuple(e), 1.0), ((0,) * n, -1.0)]))
    roots = [
        [np.exp(2j * np.pi * k / d) for k in range(d)] for d in degs
    ]
    points = [np.array(combo, dtype=np.complex128) for combo in itertools.product(*roots)]
    return PolySystem(polys, num_vars=n), points


# -- homotopies ----------------------------------------------------------------


class Homotopy:
    """Convex blend H(x; t) = (1-t) target(x) + t gamma start(x).

    At t=1 the zero set is the start system's (gamma only rescales it);
    at t=0 it is the target's.
    """

    __slots__ = ("target", "start", "gamma")

    def __init__(self, target: PolySystem, start: PolySystem, gamma: complex):
        _require_square(target)
        _require_square(start)
        if target.num_vars != start.num_vars:
            raise DimensionMismatch("target and start must share variables")
        self.target = target
        self.start = start
        self.gamma = complex(gamma)

    @property
    def num_vars(self) -> int:
        return self.target.num_vars

    def eval_all(self, x: np.ndarray, t: float):
        ft, jt = self.target.eval_with_jacobian(x)
        fs, js = self.start.eval_with_jacobian(x)
        g = self.gamma
        h = (1.0 - t) * ft + t * g * fs
        hx = (1.0 - t) * jt + t * g * js
        ht = -ft + g * fs
        return h, hx, ht

    def system_at(self, t: float) -> PolySystem:
        if t == 0.0:
            return self.target
        polys = [
            (1.0 - t) * pt + (t * self.gamma) * ps
            for pt, ps in zip(self.target.polys, self.start.polys)
        ]
        return PolySystem(polys, num_vars=self.num_vars)


class ParametricHomotopy:
    """A homotopy whose coefficients depend polynomially on t.

    Wraps a square-in-x system in n+1 variables where the last variable is
    the path parameter t.
    """

    __slots__ = ("system",)

    def __init__(self, system: PolySystem):
        if system.num_polys != system.num_vars - 1:
            raise DimensionMismatch(
                "parametric homotopy needs n equations in n variables plus t"
            )
        self.system = system

    @property
    def num_vars(self) -> int:
        return self.system.num_vars - 1

    def eval_all(self, x: np.ndarray, t: float):
        y = np.concatenate([x, [t]]).astype(np.complex128)
        value, jac = self.system.eval_with_jacobian(y)
        return value, jac[:, :-1], jac[:, -1]

    def system_at(self, t: float) -> PolySystem:
        return self.system.substitute_last(t)


# -- tracking ------------------------------------------------------------------


@dataclass(frozen=True)
class TrackerSettings:
    """Adaptive step control knobs for :func:`track_path`."""

    initial_step: float = 0.1
    min_step: float = 1e-11
    corrector_tol: float = 1e-9
    newton_max_iters: int = 4
    max_steps: int = 20000
    t_end: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.min_step <= self.initial_step < 1.0):
            raise ValueError("require 0 < min_step <= initial_step < 1")
        if not (0.0 <= self.t_end < 1.0):
            raise ValueError("require 0 <= t_end < 1")
        if self.corrector_tol <= 0.0:
            raise ValueError("corrector_tol must be positive")
        if self.newton_max_iters < 1 or self.max_steps < 1:
            raise ValueError("iteration budgets must be at least 1")


class PathStatus(str, enum.Enum):
    SUCCESS = "success"
    DIVERGED = "diverged"
    STEP_LIMIT = "step_limit"
    SINGULAR_ENDPOINT = "singular_endpoint"


@dataclass(frozen=True)
class PathResult:
    status: PathStatus
    endpoint: np.ndarray
    t_reached: float
    steps_taken: int
    endpoint_condition: float
    residual: float


def _correct(homotopy, x: np.ndarray, t: float, tol: float, max_iters: int):
    # acceptance is scale-aware: far out on a diverging path the rounding
    # noise of evaluation grows with |x|, and an absolute test would stall
    # the path before it can cross the divergence radius
    for _ in range(max_iters):
        value, hx, _ = homotopy.eval_all(x, t)
        if not (np.all(np.isfinite(value)) and np.all(np.isfinite(hx))):
            return x, False
        try:
            dx = np.linalg.solve(hx, -value)
        except np.linalg.LinAlgError:
            return x, False
        x = x + dx
        if not np.all(np.isfinite(x)):
            return x, False
        if np.linalg.norm(dx) < tol * max(1.0, float(np.linalg.norm(x))):
            return x, True
    return x, False


def track_path(
    homotopy, start: Sequence[complex], settings: TrackerSettings | None = None
) -> PathResult:
    """Track one zero path from t=1 down to ``settings.t_end``.

    The predictor solves H_x dx = -H_t dt; the corrector runs Newton at the
    new t.  The step halves after a corrector failure and doubles after four
    consecutive accepted steps, clamped to [min_step, initial_step].
    """
    s = settings or TrackerSettings()
    x = _point(np.asarray(start, dtype=np.complex128), homotopy.num_vars)
    value, _, _ = homotopy.eval_all(x, 1.0)
    if np.linalg.norm(value) >= s.corrector_tol * max(1.0, float(np.linalg.norm(x))):
        raise StartPointError(
            f"start point residual {np.linalg.norm(value):.3e} exceeds corrector_tol"
        )
    t = 1.0
    step = s.initial_step
    accepted = 0
    streak = 0
    attempts = 0

    def finish(status: PathStatus, xf, tf) -> PathResult:
        val, hx, _ = homotopy.eval_all(xf, tf)
        residual = float(np.linalg.norm(val))
        cond = float("inf")
        if np.all(np.isfinite(hx)):
            try:
                cond = float(np.linalg.cond(hx))
            except np.linalg.LinAlgError:
                pass
        return PathResult(status, xf, float(tf), accepted, cond, residual)

    while t > s.t_end:
        if attempts >= s.max_steps:
            return finish(PathStatus.STEP_LIMIT, x, t)
        attempts += 1
        dt = min(step, t - s.t_end)
        value, hx, ht = homotopy.eval_all(x, t)
        predicted = None
        if np.all(np.isfinite(hx)) and np.all(np.isfinite(ht)):
            try:
                velocity = np.linalg.solve(hx, -ht)
                predicted = x - velocity * dt
            except np.linalg.LinAlgError:
                predicted = None
        ok = False
        if predicted is not None and np.all(np.isfinite(predicted)):
            corrected, ok = _correct(
                homotopy, predicted, t - dt, s.corrector_tol, s.newton_max_iters
            )
        if ok:
            x = corrected
            t = t - dt
            accepted += 1
            streak += 1
            if np.linalg.norm(x) > DIVERGENCE_RADIUS:
                return finish(PathStatus.DIVERGED, x, t)
            if streak >= 4:
                step = min(step * 2.0, s.initial_step)
                streak = 0
        else:
            streak = 0
            step = step / 2.0
            if step < s.min_step:
                return finish(PathStatus.STEP_LIMIT, x, t)

    # polish at t_end before judging the endpoint
    x, _ = _correct(homotopy, x, s.t_end, s.corrector_tol, 2 * s.newton_max_iters)
    result = finish(PathStatus.SUCCESS, x, s.t_end)
    if result.residual >= s.corrector_tol:
        return replace(result, status=PathStatus.STEP_LIMIT)
    if not np.isfinite(result.endpoint_condition) or result.endpoint_condition > SINGULAR_CONDITION:
        return replace(result, status=PathStatus.SINGULAR_ENDPOINT)
    return result


# -- total-degree solving -------------------------------------------------------


@dataclass(frozen=True)
class Solution:
    point: np.ndarray
    certificate: Certificate
    multiplicity: int
    residual: float


@dataclass(frozen=True)
class PathSummary:
    paths: int
    success: int
    diverged: int
    singular: int
    step_limit: int
    seed: int


@dataclass(frozen=True)
class SolveResult:
    solutions: tuple[Solution, ...]
    summary: PathSummary
    path_results: tuple[PathResult, ...]


def _coord_key(point: np.ndarray) -> tuple[float, ...]:
    key: list[float] = []
    for z in point:
        key.extend((float(z.real), float(z.imag)))
    return tuple(key)


def normalized_distance(a: np.ndarray, b: np.ndarray) -> float:
    scale = 1.0 + max(float(np.linalg.norm(a)), float(np.linalg.norm(b)))
    return float(np.linalg.norm(a - b)) / scale


def dedup_points(
    points: Sequence[np.ndarray],
    residuals: Sequence[float],
    tol: float = DEDUP_TOL,
) -> list[tuple[np.ndarray, float, int]]:
    """Merge near-identical points; keep the representative with the
    smallest residual and count how many raw points merged into it."""
    reps: list[tuple[np.ndarray, float, int]] = []
    for p, r in zip(points, residuals):
        for i, (q, rq, mult) in enumerate(reps):
            if normalized_distance(p, q) < tol:
                if r < rq:
                    reps[i] = (p, r, mult + 1)
                else:
                    reps[i] = (q, rq, mult + 1)
                break
        else:
            reps.append((p, r, 1))
    return reps


def solve_total_degree(
    target: PolySystem,
    seed: int,
    settings: TrackerSettings | None = None,
) -> SolveResult:
    """Solve a square system by a total-degree homotopy from a Bezout start.

    Tracks prod(d_i) paths, drops failures, merges duplicate endpoints with
    multiplicity counts, Newton-refines and alpha-certifies the survivors,
    and returns them sorted by coordinates.  Path failures are reported in
    the summary, never raised.
    """
    _require_square(target)
    degrees = target.degrees()
    if any(d < 1 for d in degrees):
        raise DimensionMismatch("every equation must have positive degree")
    rng = subsystem_rng(seed, "solver.gamma")
    gamma = unit_gamma(rng)
    start_system, start_points = bezout_start(degrees)
    homotopy = Homotopy(target, start_system, gamma)
    results = [track_path(homotopy, p, settings) for p in start_points]

    counts = {status: 0 for status in PathStatus}
    for r in results:
        counts[r.status] += 1
    summary = PathSummary(
        paths=len(results),
        success=counts[PathStatus.SUCCESS],
        diverged=counts[PathStatus.DIVERGED],
        singular=counts[PathStatus.SINGULAR_ENDPOINT],
        step_limit=counts[PathStatus.STEP_LIMIT],
        seed=int(seed),
    )

    refined: list[np.ndarray] = []
    residuals: list[float] = []
    for r in results:
        if r.status is not PathStatus.SUCCESS:
            continue
        point = r.endpoint
        try:
            point, _, _ = newton_refine(target, point)
        except SingularJacobian:
            pass
        refined.append(point)
        residuals.append(float(np.linalg.norm(target.evaluate(point))))

    solutions = []
    for point, residual, mult in dedup_points(refined, residuals):
        try:
            cert = alpha_number(target, point)
        except SingularJacobian:
            cert = Certificate(alpha=float("inf"), beta=float("inf"), gamma_bound=float("inf"), certified=False)
        solutions.append(Solution(point, cert, mult, residual))
    solutions.sort(key=lambda sol: _coord_key(sol.point))
    return SolveResult(tuple(solutions), summary, tuple(results))
