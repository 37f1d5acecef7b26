"""Witness sets for positive-dimensional solution sets in affine space.

A witness set for a k-dimensional variety V = Z(F) in C^n is the data
(F, L, W) where L is a generic codimension-k affine-linear slice and
W = V intersect L is a finite point set.  Slices move by continuation:
tracking W along

    H(x; t) = [ R F(x) ; (1 - t) L'(x) + t gamma L(x) ]

from t=1 to t=0 carries the witness points onto the new slice L'.  The
square subsystem R F (a random full-rank mix of the input equations) stays
fixed along the path, so paths never leave Z(R F).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    Inconclusive,
    SingularJacobian,
    StartPointError,
    TrackingFailure,
)
from .polysys import Polynomial, PolySystem, system_from_dict, system_to_dict
from .seeding import complex_gaussian, spawn_seed, subsystem_rng, unit_gamma
from .solver import (
    Certificate,
    ParametricHomotopy,
    PathStatus,
    TrackerSettings,
    _coord_key,
    alpha_number,
    dedup_points,
    newton_refine,
    solve_total_degree,
    track_path,
)

__all__ = [
    "LinearSlice",
    "WitnessSet",
    "random_slice",
    "slice_through_point",
    "witness_compute",
    "witness_move",
    "witness_sample",
    "witness_membership",
    "product_witness",
    "witness_to_dict",
    "witness_from_dict",
]

FILTER_TOL = 1e-6
MATCH_TOL = 1e-6


class LinearSlice:
    """k affine-linear forms on C^n, stored as a k x (n+1) matrix.

    Column 0 holds the constant terms; columns 1..n hold the coefficients
    of x_1..x_n.  The linear part must have full row rank.
    """

    __slots__ = ("forms", "codim", "num_vars")

    def __init__(self, forms: np.ndarray):
        forms = np.array(forms, dtype=np.complex128)
        if forms.ndim != 2 or forms.shape[1] < 1:
            raise DimensionMismatch("slice must be a k x (n+1) matrix")
        k, n = forms.shape[0], forms.shape[1] - 1
        if k > n:
            raise DimensionMismatch("slice codimension exceeds ambient dimension")
        if k:
            svals = np.linalg.svd(forms[:, 1:], compute_uv=False)
            if svals[-1] < 1e-12 * max(1.0, svals[0]):
                raise DimensionMismatch("slice linear part is rank deficient")
        forms.flags.writeable = False
        object.__setattr__(self, "forms", forms)
        object.__setattr__(self, "codim", k)
        object.__setattr__(self, "num_vars", n)

    def __setattr__(self, name, value):
        raise AttributeError("LinearSlice is immutable")

    def evaluate(self, point: Sequence[complex]) -> np.ndarray:
        x = np.asarray(point, dtype=np.complex128)
        if x.shape != (self.num_vars,):
            raise DimensionMismatch("point length does not match slice")
        return self.forms[:, 0] + self.forms[:, 1:] @ x

    def polynomials(self) -> list[Polynomial]:
        out = []
        n = self.num_vars
        for row in self.forms:
            terms = [((0,) * n, row[0])]
            for j in range(n):
                e = [0] * n
                e[j] = 1
                terms.append((tuple(e), row[j + 1]))
            out.append(Polynomial(n, terms))
        return out


@dataclass(frozen=True)
class WitnessSet:
    """(system, dim, slice, points) plus per-point certificates.

    ``certificates`` may be None for sets reloaded from JSON; operations
    that need them recompute on the fly.
    """

    system: PolySystem
    dim: int
    slice: LinearSlice
    points: tuple[np.ndarray, ...]
    certificates: tuple[Certificate, ...] | None = None
    multiplicities: tuple[int, ...] | None = None

    def __post_init__(self):
        if not 0 <= self.dim < self.system.num_vars:
            raise DimensionMismatch("witness dimension must satisfy 0 <= k < n")
        if self.slice.codim != self.dim or self.slice.num_vars != self.system.num_vars:
            raise DimensionMismatch("slice shape does not match system and dimension")
        for p in self.points:
            if np.asarray(p).shape != (self.system.num_vars,):
                raise DimensionMismatch("witness point has wrong length")

    @property
    def degree(self) -> int:
        return len(self.points)


def random_slice(num_vars: int, codim: int, rng: np.random.Generator) -> LinearSlice:
    """Generic affine slice with complex Gaussian coefficients."""
    return LinearSlice(complex_gaussian(rng, (codim, num_vars + 1)))


def slice_through_point(
    num_vars: int, codim: int, point: Sequence[complex], rng: np.random.Generator
) -> LinearSlice:
    """Random slice whose every form vanishes at ``point``."""
    x = np.asarray(point, dtype=np.complex128)
    if x.shape != (num_vars,):
        raise DimensionMismatch("point length does not match num_vars")
    forms = complex_gaussian(rng, (codim, num_vars + 1))
    forms[:, 0] = -forms[:, 1:] @ x
    return LinearSlice(forms)


def _mix_rows(system: PolySystem, mixing: np.ndarray) -> list[Polynomial]:
    """Rows of R F as polynomials: random full-rank combinations."""
    out = []
    for row in mixing:
        acc = Polynomial.zero(system.num_vars)
        for c, p in zip(row, system.polys):
            acc = acc + c * p
        out.append(acc)
    return out


def _squared_system(system: PolySystem, slc: LinearSlice, mixing: np.ndarray) -> PolySystem:
    return PolySystem(
        _mix_rows(system, mixing) + slc.polynomials(), num_vars=system.num_vars
    )


def witness_compute(
    system: PolySystem,
    dim: int,
    seed: int,
    settings: TrackerSettings | None = None,
    filter_tol: float = FILTER_TOL,
) -> WitnessSet:
    """Witness set for the dimension-``dim`` part of Z(system).

    Squares up with a random equation mix, solves the squared system cut by
    a random slice, then keeps only points that actually satisfy the input
    equations.  The dimension is trusted as given; an empty filtered set
    raises DimensionMismatch with residual diagnostics.
    """
    n = system.num_vars
    if not 0 <= dim < n:
        raise DimensionMismatch("witness dimension must satisfy 0 <= k < n")
    if system.num_polys < n - dim:
        raise DimensionMismatch("not enough equations for the requested codimension")
    rng = subsystem_rng(seed, "witness.compute")
    slc = random_slice(n, dim, rng)
    mixing = complex_gaussian(rng, (n - dim, system.num_polys))
    squared = _squared_system(system, slc, mixing)
    result = solve_total_degree(squared, spawn_seed(rng), settings)

    points, certs, mults = [], [], []
    best_offslice = np.inf
    for sol in result.solutions:
        residual = float(np.linalg.norm(system.evaluate(sol.point)))
        best_offslice = min(best_offslice, residual)
        if residual < filter_tol:
            points.append(sol.point)
            certs.append(sol.certificate)
            mults.append(sol.multiplicity)
    if not points:
        raise DimensionMismatch(
            f"no dimension-{dim} component met the slice "
            f"(best residual {best_offslice:.3e} over {result.summary.paths} paths)"
        )
    return WitnessSet(
        system=system,
        dim=dim,
        slice=slc,
        points=tuple(points),
        certificates=tuple(certs),
        multiplicities=tuple(mults),
    )


def _move_homotopy(
    system: PolySystem,
    old_slice: LinearSlice,
    new_slice: LinearSlice,
    mixing: np.ndarray,
    gamma: complex,
) -> ParametricHomotopy:
    """[R F ; (1-t) L' + t gamma L] as a polynomial homotopy in (x, t)."""
    n = system.num_vars
    lifted = [p.lift(n + 1) for p in _mix_rows(system, mixing)]
    t = Polynomial.variable(n + 1, n)
    one = Polynomial.constant(n + 1, 1.0)
    moving = []
    for old_row, new_row in zip(old_slice.polynomials(), new_slice.polynomials()):
        moving.append((one - t) * new_row.lift(n + 1) + (gamma * t) * old_row.lift(n + 1))
    return ParametricHomotopy(PolySystem(lifted + moving, num_vars=n + 1))


def witness_move(
    ws: WitnessSet,
    new_slice: LinearSlice,
    seed: int,
    settings: TrackerSettings | None = None,
) -> WitnessSet:
    """Carry a witness set onto ``new_slice`` by slice continuation.

    Any path that fails to finish raises TrackingFailure; singular endpoints
    are kept but flagged by their certificates and merge multiplicities.
    """
    if new_slice.codim != ws.dim or new_slice.num_vars != ws.system.num_vars:
        raise DimensionMismatch("new slice shape does not match the witness set")
    rng = subsystem_rng(seed, "witness.move")
    mixing = complex_gaussian(rng, (ws.system.num_vars - ws.dim, ws.system.num_polys))
    gamma = unit_gamma(rng)
    homotopy = _move_homotopy(ws.system, ws.slice, new_slice, mixing, gamma)
    start_sys = homotopy.system_at(1.0)
    end_sys = homotopy.system_at(0.0)

    endpoints, residuals, failures = [], [], []
    for idx, point in enumerate(ws.points):
        start, converged, _ = newton_refine(start_sys, point)
        if not converged:
            start = np.asarray(point, dtype=np.complex128)
        try:
            path = track_path(homotopy, start, settings)
        except StartPointError as exc:
            raise TrackingFailure(f"witness point {idx} does not lie on the slice: {exc}") from exc
        if path.status in (PathStatus.STEP_LIMIT, PathStatus.DIVERGED):
            failures.append((idx, path.status.value, path.t_reached))
            continue
        endpoint = path.endpoint
        try:
            refined, converged, _ = newton_refine(end_sys, endpoint)
            if converged:
                endpoint = refined
        except SingularJacobian:
            pass
        endpoints.append(endpoint)
        residuals.append(float(np.linalg.norm(end_sys.evaluate(endpoint))))
    if failures:
        raise TrackingFailure(f"{len(failures)} of {len(ws.points)} paths failed: {failures}")

    merged = dedup_points(endpoints, residuals)
    merged.sort(key=lambda rec: _coord_key(rec[0]))
    points, certs, mults = [], [], []
    for point, _, mult in merged:
        try:
            certs.append(alpha_number(end_sys, point))
        except SingularJacobian:
            certs.append(Certificate(float("inf"), float("inf"), float("inf"), False))
        points.append(point)
        mults.append(mult)
    return WitnessSet(
        system=ws.system,
        dim=ws.dim,
        slice=new_slice,
        points=tuple(points),
        certificates=tuple(certs),
        multiplicities=tuple(mults),
    )


def witness_sample(ws: WitnessSet, seed: int, settings: TrackerSettings | None = None) -> np.ndarray:
    """A fresh point of the variety: move to a random slice, take the first
    endpoint in coordinate order."""
    rng = subsystem_rng(seed, "witness.sample")
    target = random_slice(ws.system.num_vars, ws.dim, rng)
    moved = witness_move(ws, target, spawn_seed(rng), settings)
    return moved.points[0]


def witness_membership(
    ws: WitnessSet,
    point: Sequence[complex],
    seed: int,
    match_tol: float = MATCH_TOL,
    settings: TrackerSettings | None = None,
) -> bool:
    """Decide p in V by moving the slice through p.

    The moved witness set lies on a random slice vanishing at p, so p is on
    the variety exactly when it shows up among the endpoints.  A nearest
    distance inside [match_tol, 10 match_tol) raises Inconclusive.
    """
    x = np.asarray(point, dtype=np.complex128)
    if x.shape != (ws.system.num_vars,):
        raise DimensionMismatch("query point length does not match the system")
    rng = subsystem_rng(seed, "witness.member")
    target = slice_through_point(ws.system.num_vars, ws.dim, x, rng)
    try:
        moved = witness_move(ws, target, spawn_seed(rng), settings)
    except TrackingFailure as exc:
        raise Inconclusive(f"membership move failed: {exc}") from exc
    nearest = min(float(np.linalg.norm(q - x)) for q in moved.points)
    if nearest < match_tol:
        return True
    if nearest < 10.0 * match_tol:
        raise Inconclusive(
            f"nearest endpoint at distance {nearest:.3e} falls in the ambiguous band"
        )
    return False


def product_witness(
    system: PolySystem,
    block_sizes: tuple[int, int],
    dim: int,
    seed: int,
    settings: TrackerSettings | None = None,
) -> Mapping[tuple[int, int], WitnessSet]:
    """Bidegree witness sets on a product C^m x C^n.

    For each split a + b = dim, slices with ``a`` random affine forms in the
    first coordinate block and ``b`` in the second; the point count of the
    (a, b) witness set is the bidegree d_{a,b}.
    """
    m, n2 = int(block_sizes[0]), int(block_sizes[1])
    n = system.num_vars
    if m + n2 != n:
        raise DimensionMismatch("block sizes must sum to the variable count")
    if not 0 <= dim < n:
        raise DimensionMismatch("witness dimension must satisfy 0 <= k < n")
    out: dict[tuple[int, int], WitnessSet] = {}
    for a in range(dim + 1):
        b = dim - a
        if a > m or b > n2:
            continue
        rng = subsystem_rng(seed, f"witness.product.{a}.{b}")
        forms = np.zeros((dim, n + 1), dtype=np.complex128)
        forms[:a, 0] = complex_gaussian(rng, a)
        forms[:a, 1 : m + 1] = complex_gaussian(rng, (a, m))
        forms[a:, 0] = complex_gaussian(rng, b)
        forms[a:, m + 1 :] = complex_gaussian(rng, (b, n2))
        slc = LinearSlice(forms)
        mixing = complex_gaussian(rng, (n - dim, system.num_polys))
        squared = _squared_system(system, slc, mixing)
        result = solve_total_degree(squared, spawn_seed(rng), settings)
        points, certs, mults = [], [], []
        for sol in result.solutions:
            if float(np.linalg.norm(system.evaluate(sol.point))) < FILTER_TOL:
                points.append(sol.point)
                certs.append(sol.certificate)
                mults.append(sol.multiplicity)
        out[(a, b)] = WitnessSet(
            system=system,
            dim=dim,
            slice=slc,
            points=tuple(points),
            certificates=tuple(certs),
            multiplicities=tuple(mults),
        )
    return out


# -- JSON helpers ----------------------------------------------------------------


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def witness_to_dict(ws: WitnessSet) -> dict:
    """Serializable form: the defining system, dimension, slice matrix, and
    witness points, with complex numbers as [re, im] pairs."""
    return {
        "system": system_to_dict(ws.system),
        "dim": ws.dim,
        "slice": [[_pair(z) for z in row] for row in ws.slice.forms],
        "points": [[_pair(z) for z in p] for p in ws.points],
    }


def witness_from_dict(data) -> WitnessSet:
    try:
        system = system_from_dict(data["system"])
        dim = int(data["dim"])
        forms = np.array(
            [[complex(e[0], e[1]) for e in row] for row in data["slice"]],
            dtype=np.complex128,
        )
        if forms.ndim != 2:
            raise DimensionMismatch("slice must be a matrix")
        points = tuple(
            np.array([complex(e[0], e[1]) for e in p], dtype=np.complex128)
            for p in data["points"]
        )
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise DimensionMismatch(f"malformed witness payload: {exc}") from exc
    return WitnessSet(
        system=system, dim=dim, slice=LinearSlice(forms), points=points
    )
