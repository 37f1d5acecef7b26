"""Lines in P^4: Schubert conditions, witness sets, and lines on quadrics.

A flag is an invertible 5x5 frame whose leading columns span the nested
subspaces M_0 < M_1 < ... < M_4.  The rank-3 Schubert variety for index
(1, 3) consists of lines meeting the projective line M_1 while lying inside
the hyperplane-like M_3; the one for (0, 4) consists of lines through the
point M_0.  For a smooth quadric threefold Q and a generic flag, the lines
on Q form a 3-dimensional family whose Schubert witness data is

    W13 = 4 lines,   W04 = empty,

and these counts recover the family's class 4 [X13] in the Schubert basis.

All randomized operations take integer seeds and are fully deterministic.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, replace as dc_replace
from typing import Sequence

import numpy as np

from .cycles import CycleClass, DegreeVector, builtin_basis, class_from_degrees
from .errors import (
    DegenerateFlag,
    DimensionMismatch,
    GenericityWarning,
    Inconclusive,
    SingularJacobian,
    SingularQuadric,
    TrackingFailure,
)
from .polysys import Polynomial, PolySystem, poly_det, variables
from .seeding import complex_gaussian, random_unitary, spawn_seed, subsystem_rng, unit_gamma
from .solver import (
    Certificate,
    ParametricHomotopy,
    PathStatus,
    TrackerSettings,
    alpha_number,
    newton_refine,
    solve_total_degree,
    track_path,
)

__all__ = [
    "SchubertIndex",
    "SchubertPoset",
    "schubert_poset",
    "schubert_dual",
    "Flag",
    "Line",
    "Quadric",
    "SchubertWitnessSet",
    "pluecker_coordinates",
    "pluecker_distance",
    "pluecker_relations_residual",
    "line_in_schubert",
    "random_flag",
    "random_quadric",
    "lines_on_quadric_witness",
    "schubert_witness_move",
    "schubert_sample",
    "schubert_membership",
    "lines_on_two_quadrics",
    "schubert_pair_intersection_count",
    "class_of_variety",
]

RANK_TOL = 1e-8
LINE_MATCH_TOL = 1e-6
RESIDUAL_TOL = 1e-8
FLAG_CONDITION_LIMIT = 1e10

# index pairs (i < j) in lexicographic order; fixes the coordinate order of
# the length-10 Pluecker vector
PAIRS: tuple[tuple[int, int], ...] = tuple(itertools.combinations(range(5), 2))


# -- Schubert indices and their poset -----------------------------------------


@dataclass(frozen=True, order=True)
class SchubertIndex:
    """Pair (i, j) with 0 <= i < j <= 4: lines meeting M_i inside M_j."""

    i: int
    j: int

    def __post_init__(self):
        if not (0 <= self.i < self.j <= 4):
            raise DimensionMismatch("Schubert index needs 0 <= i < j <= 4")

    @property
    def rank(self) -> int:
        """Dimension of the Schubert variety: i + j - 1."""
        return self.i + self.j - 1

    def __repr__(self):
        return f"X{self.i}{self.j}"


def _as_index(index) -> SchubertIndex:
    if isinstance(index, SchubertIndex):
        return index
    i, j = index
    return SchubertIndex(int(i), int(j))


def schubert_dual(index) -> SchubertIndex:
    """The complementary-dimension partner (i, j) -> (4-j, 4-i)."""
    idx = _as_index(index)
    return SchubertIndex(4 - idx.j, 4 - idx.i)


class SchubertPoset:
    """The ten Schubert indices ordered componentwise, graded by rank."""

    __slots__ = ("elements",)

    def __init__(self):
        elems = sorted(
            (SchubertIndex(i, j) for i, j in PAIRS), key=lambda s: (s.rank, s.j)
        )
        object.__setattr__(self, "elements", tuple(elems))

    def __setattr__(self, name, value):
        raise AttributeError("SchubertPoset is immutable")

    def leq(self, a, b) -> bool:
        """Containment order: X_a is a subvariety of X_b."""
        a, b = _as_index(a), _as_index(b)
        return a.i <= b.i and a.j <= b.j

    def rank(self, a) -> int:
        return _as_index(a).rank

    def by_rank(self, k: int) -> tuple[SchubertIndex, ...]:
        return tuple(e for e in self.elements if e.rank == k)

    def rank_counts(self) -> tuple[int, ...]:
        return tuple(len(self.by_rank(k)) for k in range(7))

    def covers(self) -> tuple[tuple[SchubertIndex, SchubertIndex], ...]:
        """Covering pairs (a, b): a < b with rank difference one."""
        out = []
        for a in self.elements:
            for b in self.elements:
                if a != b and self.leq(a, b) and b.rank == a.rank + 1:
                    out.append((a, b))
        return tuple(out)


def schubert_poset() -> SchubertPoset:
    return SchubertPoset()


# -- geometric objects ---------------------------------------------------------


class Flag(
    object
):
    """Full flag in C^5 given by the columns m_0..m_4 of an invertible frame."""

    __slots__ = ("frame",)

    def __init__(self, frame: np.ndarray):
        frame = np.array(frame, dtype=np.complex128)
        if frame.shape != (5, 5):
            raise DimensionMismatch("flag frame must be 5x5")
        if not np.all(np.isfinite(frame)):
            raise DimensionMismatch("flag frame must be finite")
        cond = np.linalg.cond(frame)
        if not np.isfinite(cond) or cond > FLAG_CONDITION_LIMIT:
            raise DegenerateFlag(f"flag frame condition {cond:.3e} too large")
        frame.flags.writeable = False
        object.__setattr__(self, "frame", frame)

    def __setattr__(self, name, value):
        raise AttributeError("Flag is immutable")

    def column(self, k: int) -> np.ndarray:
        return self.frame[:, k]

    def subspace_rows(self, k: int) -> np.ndarray:
        """Basis of M_k as rows: the first k+1 frame columns, transposed."""
        return self.frame[:, : k + 1].T


def pluecker_coordinates(span: np.ndarray) -> np.ndarray:
    """Canonical unit Pluecker vector of a 2x5 span matrix.

    Coordinates follow lexicographic pair order; the vector is scaled to unit
    norm with its first significant entry rotated to the positive real axis.
    """
    p, q = span[0], span[1]
    v = np.array([p[i] * q[j] - p[j] * q[i] for i, j in PAIRS], dtype=np.complex128)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise DimensionMismatch("span matrix has rank below 2")
    v = v / norm
    for z in v:
        if abs(z) > 1e-10:
            v = v * (z.conjugate() / abs(z))
            break
    return v


def pluecker_relations_residual(v: Sequence[complex]) -> float:
    """Max residual of the five quadratic Pluecker relations."""
    v = np.asarray(v, dtype=np.complex128)
    pos = {pair: k for k, pair in enumerate(PAIRS)}
    worst = 0.0
    for sub in itertools.combinations(range(5), 4):
        i, j, k, l = sub
        r = (
            v[pos[(i, j)]] * v[pos[(k, l)]]
            - v[pos[(i, k)]] * v[pos[(j, l)]]
            + v[pos[(i, l)]] * v[pos[(j, k)]]
        )
        worst = max(worst, abs(r))
    return worst


class Line:
    """A line in P^4: a rank-2 span matrix plus derived Pluecker data."""

    __slots__ = ("span", "pluecker")

    def __init__(self, span: np.ndarray):
        span = np.array(span, dtype=np.complex128)
        if span.shape != (2, 5):
            raise DimensionMismatch("line span must be 2x5")
        svals = np.linalg.svd(span, compute_uv=False)
        if svals[1] < RANK_TOL * max(1.0, svals[0]):
            raise DimensionMismatch("line span is numerically rank deficient")
        span.flags.writeable = False
        object.__setattr__(self, "span", span)
        object.__setattr__(self, "pluecker", pluecker_coordinates(span))
        self.pluecker.flags.writeable = False

    def __setattr__(self, name, value):
        raise AttributeError("Line is immutable")

    @classmethod
    def through_points(cls, p: Sequence[complex], q: Sequence[complex]) -> "Line":
        return cls(np.vstack([p, q]))

    def sort_key(self) -> tuple[float, ...]:
        key: list[float] = []
        for z in self.pluecker:
            key.extend((float(z.real), float(z.imag)))
        return tuple(key)

    def __repr__(self):
        lead = np.round(self.pluecker[:3], 4)
        return f"<Line pluecker~{lead.tolist()}...>"


def pluecker_distance(a: Line, b: Line) -> float:
    """Phase-invariant chordal distance between unit Pluecker vectors."""
    ip = abs(np.vdot(a.pluecker, b.pluecker))
    return float(np.sqrt(max(0.0, 2.0 - 2.0 * min(1.0, ip))))


class Quadric:
    """Smooth quadric hypersurface x^T A x = 0 in P^4, A symmetric 5x5."""

    __slots__ = ("matrix", "normalized")

    def __init__(self, matrix: np.ndarray):
        a = np.array(matrix, dtype=np.complex128)
        if a.shape != (5, 5):
            raise DimensionMismatch("quadric matrix must be 5x5")
        if not np.all(np.isfinite(a)):
            raise DimensionMismatch("quadric matrix must be finite")
        scale = np.abs(a).max()
        if scale == 0.0 or np.abs(a - a.T).max() > 1e-10 * scale:
            raise DimensionMismatch("quadric matrix must be symmetric")
        a = (a + a.T) / 2.0
        smax = np.linalg.svd(a, compute_uv=False)[0]
        normalized = a / smax
        det = np.linalg.det(normalized)
        if abs(det) <= 1e-8:
            raise SingularQuadric(f"normalized determinant {abs(det):.3e} too small")
        a.flags.writeable = False
        normalized.flags.writeable = False
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "normalized", normalized)

    def __setattr__(self, name, value):
        raise AttributeError("Quadric is immutable")

    def evaluate(self, point: Sequence[complex]) -> complex:
        x = np.asarray(point, dtype=np.complex128)
        return complex(x @ self.matrix @ x)

    def line_residual(self, line: Line) -> float:
        """Scale-free measure of how far a line is from lying on the quadric."""
        p = line.span[0] / np.linalg.norm(line.span[0])
        q = line.span[1] / np.linalg.norm(line.span[1])
        a = self.normalized
        return float(max(abs(p @ a @ p), abs(p @ a @ q), abs(q @ a @ q)))


def random_flag(rng: np.random.Generator) -> Flag:
    for _ in range(20):
        try:
            return Flag(complex_gaussian(rng, (5, 5)))
        except DegenerateFlag:
            continue
    raise DegenerateFlag("could not draw a well-conditioned flag")


def random_quadric(rng: np.random.Generator) -> Quadric:
    for _ in range(20):
        g = complex_gaussian(rng, (5, 5))
        try:
            return Quadric((g + g.T) / 2.0)
        except SingularQuadric:
            continue
    raise SingularQuadric("could not draw a smooth quadric")


# -- Schubert membership of a single line --------------------------------------


def _numerical_rank_at_most(stack: np.ndarray, bound: int, tol: float) -> bool:
    svals = np.linalg.svd(stack, compute_uv=False)
    if bound >= len(svals):
        return True
    return bool(svals[bound] < tol * max(svals[0], 1e-300))


def line_in_schubert(line: Line, index, flag: Flag, tol: float = RANK_TOL) -> bool:
    """Test the incidences 'line meets M_i' and 'line lies in M_j'.

    Both are singular-value rank tests with a relative threshold: stacking
    the span onto a basis of M_k must fail to reach full generic rank.
    """
    idx = _as_index(index)
    meet_stack = np.vstack([line.span, flag.subspace_rows(idx.i)])
    if not _numerical_rank_at_most(meet_stack, idx.i + 2, tol):
        return False
    contain_stack = np.vstack([line.span, flag.subspace_rows(idx.j)])
    return _numerical_rank_at_most(contain_stack, idx.j + 1, tol)


# -- witness sets for lines on a quadric ---------------------------------------


@dataclass(frozen=True)
class SchubertWitnessSet:
    """Witness data for the family of lines on a quadric threefold.

    ``w13`` holds the finitely many family members meeting M_1 inside M_3;
    ``w04`` holds members through M_0 (empty whenever M_0 avoids Q).
    """

    quadric: Quadric
    flag: Flag
    w13: tuple[Line, ...]
    w04: tuple[Line, ...]
    certificates: tuple[Certificate, ...] | None = None

    def __post_init__(self):
        for line in self.w13 + self.w04:
            if self.quadric.line_residual(line) > 1e-6:
                raise DimensionMismatch("witness line does not lie on the quadric")
        for line in self.w13:
            if not line_in_schubert(line, (1, 3), self.flag, tol=1e-6):
                raise DimensionMismatch("witness line fails its Schubert incidences")


def _qform(a: np.ndarray, left: Sequence, right: Sequence) -> Polynomial:
    """x^T A y for vectors of polynomials (or constants)."""
    total = None
    for i in range(5):
        for j in range(5):
            piece = a[i, j] * left[i] * right[j]
            total = piece if total is None else total + piece
    return total


def _path_frame_entry(gs: complex, gt: complex, gamma: complex, t: Polynomial) -> Polynomial:
    # frame pencil t G_start + (1 - t) gamma G_target; at t=1 it is exactly
    # the start frame, at t=0 a harmless rescale of the target frame
    return gs * t + (gamma * gt) * (1 - t)


def _chart_system(quadric: Quadric, frame_cols, rot_cols, num_vars: int) -> PolySystem:
    """Equations cutting out chart coordinates of witness lines.

    The moving point p = m0 + s m1 sweeps M_1; q = r2 + u r0 + v r1 sweeps an
    affine plane inside M_3 in a rotated basis.  A line lies on the quadric
    exactly when all three pairings vanish.
    """
    a = quadric.normalized
    svar = Polynomial.variable(num_vars, 0)
    uvar = Polynomial.variable(num_vars, 1)
    vvar = Polynomial.variable(num_vars, 2)
    p = [frame_cols[0][i] + svar * frame_cols[1][i] for i in range(5)]
    q = [rot_cols[2][i] + uvar * rot_cols[0][i] + vvar * rot_cols[1][i] for i in range(5)]
    return PolySystem(
        [_qform(a, p, p), _qform(a, p, q), _qform(a, q, q)], num_vars=num_vars
    )


def _fixed_chart_data(flag: Flag, rotation: np.ndarray):
    frame_cols = [[complex(flag.frame[i, c]) for i in range(5)] for c in range(2)]
    rot = flag.frame[:, :4] @ rotation
    rot_cols = [[complex(rot[i, k]) for i in range(5)] for k in range(3)]
    return frame_cols, rot_cols


def _x13_chart_system(quadric: Quadric, flag: Flag, rotation: np.ndarray) -> PolySystem:
    frame_cols, rot_cols = _fixed_chart_data(flag, rotation)
    return _chart_system(quadric, frame_cols, rot_cols, num_vars=3)


def _x13_path_system(
    quadric: Quadric,
    start_flag: Flag,
    target_flag: Flag,
    gamma: complex,
    rotation: np.ndarray,
) -> PolySystem:
    """Chart equations with the flag moving along a frame pencil in t."""
    t = Polynomial.variable(4, 3)
    gs, gt = start_flag.frame, target_flag.frame
    frame_cols = [
        [_path_frame_entry(gs[i, c], gt[i, c], gamma, t) for i in range(5)]
        for c in range(2)
    ]
    rot_cols = []
    for k in range(3):
        col = []
        for i in range(5):
            acc = Polynomial.zero(4)
            for c in range(4):
                acc = acc + rotation[c, k] * _path_frame_entry(
                    gs[i, c], gt[i, c], gamma, t
                )
            col.append(acc)
        rot_cols.append(col)
    return _chart_system(quadric, frame_cols, rot_cols, num_vars=4)


def _line_from_chart(coords: np.ndarray, flag: Flag, rotation: np.ndarray) -> Line:
    s, u, v = coords
    rot = flag.frame[:, :4] @ rotation
    p = flag.column(0) + s * flag.column(1)
    q = rot[:, 2] + u * rot[:, 0] + v * rot[:, 1]
    return Line(np.vstack([p, q]))


def _chart_coords(line: Line, flag: Flag, rotation: np.ndarray) -> np.ndarray:
    """Invert the chart: recover (s, u, v) for a line meeting M_1 inside M_3."""
    stack = np.vstack([line.span, flag.column(0)[None, :], flag.column(1)[None, :]])
    u_left, svals, _ = np.linalg.svd(stack)
    if svals[-1] > 1e-6 * svals[0]:
        raise DegenerateFlag("line does not meet M_1; chart inversion failed")
    w = u_left[:, -1].conj()
    if abs(w[2]) < 1e-12 * np.abs(w).max():
        raise DegenerateFlag("line meets M_1 at the chart's excluded point")
    s = w[3] / w[2]
    basis = flag.frame[:, :4] @ rotation
    coords, residual, *_ = np.linalg.lstsq(basis, line.span.T, rcond=None)
    mixed = np.array(
        [[coords[2, 0], coords[2, 1]], [coords[3, 0], coords[3, 1]]],
        dtype=np.complex128,
    )
    try:
        lam = np.linalg.solve(mixed, np.array([1.0, 0.0], dtype=np.complex128))
    except np.linalg.LinAlgError as exc:
        raise DegenerateFlag("chart plane misses the line") from exc
    z = coords @ lam
    return np.array([s, z[0], z[1]], dtype=np.complex128)


def _check_flag_generic(quadric: Quadric, flag: Flag, tol: float = 1e-8) -> None:
    """Genericity used by the witness chart.

    Requires M_0 off the quadric (forcing W04 empty) and M_1 meeting it in
    two distinct points, so the chart quadratic in s has two simple roots.
    """
    a = quadric.normalized
    m0 = flag.column(0) / np.linalg.norm(flag.column(0))
    m1 = flag.column(1) / np.linalg.norm(flag.column(1))
    c00 = m0 @ a @ m0
    c01 = m0 @ a @ m1
    c11 = m1 @ a @ m1
    if abs(c00) < tol:
        raise DegenerateFlag("flag point M_0 lies on the quadric")
    if abs(c11) < tol:
        raise DegenerateFlag("M_1 is tangent to the quadric at its chart infinity")
    if abs(c01 * c01 - c00 * c11) < tol:
        raise DegenerateFlag("M_1 is tangent to the quadric (double root)")


def lines_on_quadric_witness(
    quadric: Quadric,
    flag: Flag,
    seed: int,
    settings: TrackerSettings | None = None,
) -> SchubertWitnessSet:
    """Witness set for the 3-fold of lines on a smooth quadric in P^4.

    Solves the three chart equations (total degree 8) and keeps the finite
    solutions; a generic flag yields exactly four lines meeting M_1 inside
    M_3 and none through M_0.  The chart rotation is redrawn up to three
    times if a path family degenerates.
    """
    _check_flag_generic(quadric, flag)
    rng = subsystem_rng(seed, "grassmann.witness")
    diagnostics = ""
    for _ in range(3):
        rotation = random_unitary(4, rng)
        system = _x13_chart_system(quadric, flag, rotation)
        result = solve_total_degree(system, spawn_seed(rng), settings)
        lines: list[Line] = []
        certs: list[Certificate] = []
        for sol in result.solutions:
            try:
                line = _line_from_chart(sol.point, flag, rotation)
            except DimensionMismatch:
                continue
            if quadric.line_residual(line) > RESIDUAL_TOL:
                continue
            if not line_in_schubert(line, (1, 3), flag):
                continue
            if any(pluecker_distance(line, other) < LINE_MATCH_TOL for other in lines):
                continue
            lines.append(line)
            certs.append(sol.certificate)
        if len(lines) == 4:
            order = sorted(range(4), key=lambda k: lines[k].sort_key())
            return SchubertWitnessSet(
                quadric=quadric,
                flag=flag,
                w13=tuple(lines[k] for k in order),
                w04=(),
                certificates=tuple(certs[k] for k in order),
            )
        diagnostics = (
            f"{len(lines)} distinct lines from {result.summary.paths} paths "
            f"(success {result.summary.success}, singular {result.summary.singular})"
        )
    raise DegenerateFlag(f"witness chart degenerated after 3 rotations: {diagnostics}")


def _track_with_endgame(homotopy, start, settings: TrackerSettings | None):
    """Track to t=0; on failure, retry stopping at t=1e-6 and report that
    endpoint for external refinement."""
    base = settings or TrackerSettings()
    path = track_path(homotopy, start, base)
    if path.status in (PathStatus.SUCCESS, PathStatus.SINGULAR_ENDPOINT):
        return path, False
    near = track_path(homotopy, start, dc_replace(base, t_end=1e-6))
    if near.status in (PathStatus.SUCCESS, PathStatus.SINGULAR_ENDPOINT):
        return near, True
    return path, False


def schubert_witness_move(
    ws: SchubertWitnessSet,
    target_flag: Flag,
    seed: int,
    settings: TrackerSettings | None = None,
) -> SchubertWitnessSet:
    """Carry the witness lines to a new flag along a frame pencil.

    The chart coordinates of each line are tracked while the flag moves
    through generic complex frames; endpoints are Newton-polished on the
    target chart.  Stalled paths get one endgame retry stopping just short
    of t=0.
    """
    _check_flag_generic(ws.quadric, target_flag)
    rng = subsystem_rng(seed, "grassmann.move")
    gamma = unit_gamma(rng)
    rotation = random_unitary(4, rng)
    homotopy = ParametricHomotopy(
        _x13_path_system(ws.quadric, ws.flag, target_flag, gamma, rotation)
    )
    start_system = homotopy.system_at(1.0)
    end_system = homotopy.system_at(0.0)

    lines: list[Line] = []
    certs: list[Certificate] = []
    failures: list[str] = []
    for k, line in enumerate(ws.w13):
        try:
            coords = _chart_coords(line, ws.flag, rotation)
        except DegenerateFlag as exc:
            failures.append(f"path {k}: {exc}")
            continue
        polished, _, _ = newton_refine(start_system, coords)
        start_res = float(np.linalg.norm(start_system.evaluate(polished)))
        if start_res > 1e-8:
            failures.append(f"path {k}: start residual {start_res:.3e}")
            continue
        path, _ = _track_with_endgame(homotopy, polished, settings)
        if path.status not in (PathStatus.SUCCESS, PathStatus.SINGULAR_ENDPOINT):
            failures.append(f"path {k}: {path.status.value} at t={path.t_reached:.3e}")
            continue
        endpoint = path.endpoint
        refined, converged, _ = newton_refine(end_system, endpoint)
        if converged:
            endpoint = refined
        try:
            moved = _line_from_chart(endpoint, target_flag, rotation)
        except DimensionMismatch as exc:
            failures.append(f"path {k}: endpoint left the chart ({exc})")
            continue
        if ws.quadric.line_residual(moved) > RESIDUAL_TOL:
            failures.append(f"path {k}: endpoint residual too large")
            continue
        try:
            certs.append(alpha_number(end_system, endpoint))
        except SingularJacobian:
            certs.append(Certificate(float("inf"), float("inf"), float("inf"), False))
        lines.append(moved)
    if failures:
        raise TrackingFailure("; ".join(failures))

    distinct: list[Line] = []
    for line in lines:
        if any(pluecker_distance(line, other) < LINE_MATCH_TOL for other in distinct):
            continue
        distinct.append(line)
    if len(distinct) != len(ws.w13):
        raise TrackingFailure(
            f"witness cardinality changed: {len(ws.w13)} -> {len(distinct)}"
        )
    order = sorted(range(len(lines)), key=lambda k: lines[k].sort_key())
    return SchubertWitnessSet(
        quadric=ws.quadric,
        flag=target_flag,
        w13=tuple(lines[k] for k in order),
        w04=(),
        certificates=tuple(certs[k] for k in order),
    )


def schubert_sample(
    ws: SchubertWitnessSet, seed: int, settings: TrackerSettings | None = None
) -> Line:
    """A fresh line of the family: move to a random flag and return the
    first member in canonical Pluecker order."""
    rng = subsystem_rng(seed, "grassmann.sample")
    for _ in range(5):
        target = random_flag(rng)
        try:
            _check_flag_generic(ws.quadric, target)
            moved = schubert_witness_move(ws, target, spawn_seed(rng), settings)
        except (DegenerateFlag, TrackingFailure):
            continue
        return moved.w13[0]
    raise DegenerateFlag("could not draw a generic target flag")


def _adapted_flag(line0: Line, quadric: Quadric, rng: np.random.Generator) -> Flag:
    """Flag making the query line a member of the (1, 3) Schubert chart:
    M_3 contains the line and M_1 passes through one of its points."""
    for _ in range(30):
        basis = np.vstack([line0.span, complex_gaussian(rng, (2, 5))])
        x1 = complex_gaussian(rng, 2) @ line0.span
        y = complex_gaussian(rng, 4) @ basis
        m0 = y
        m1 = complex_gaussian(rng, ()) * x1 + complex_gaussian(rng, ()) * y
        m2 = complex_gaussian(rng, 4) @ basis
        m3 = complex_gaussian(rng, 4) @ basis
        m4 = complex_gaussian(rng, 5)
        frame = np.stack([m0, m1, m2, m3, m4], axis=1)
        scale = np.abs(frame).max()
        try:
            flag = Flag(frame / scale)
            _check_flag_generic(quadric, flag)
        except DegenerateFlag:
            continue
        if not line_in_schubert(line0, (1, 3), flag, tol=1e-6):
            continue
        return flag
    raise DegenerateFlag("could not adapt a generic flag to the query line")


def schubert_membership(
    ws: SchubertWitnessSet,
    line0: Line,
    seed: int,
    match_tol: float = LINE_MATCH_TOL,
    settings: TrackerSettings | None = None,
) -> bool:
    """Decide whether a line belongs to the family, by moving the witness
    flag onto a flag adapted to the query line.

    After the move the witness lines are exactly the family members meeting
    the adapted M_1 inside the adapted M_3; the query line is such a member
    by construction, so membership reduces to a Pluecker distance match.
    """
    rng = subsystem_rng(seed, "grassmann.member")
    moved = None
    last_failure: TrackingFailure | None = None
    for _ in range(3):
        adapted = _adapted_flag(line0, ws.quadric, rng)
        try:
            moved = schubert_witness_move(ws, adapted, spawn_seed(rng), settings)
            break
        except TrackingFailure as exc:
            last_failure = exc
    if moved is None:
        raise Inconclusive(
            f"witness moves to adapted flags kept failing: {last_failure}"
        ) from last_failure
    nearest = min(pluecker_distance(line, line0) for line in moved.w13)
    if nearest < match_tol:
        return True
    if nearest < 10.0 * match_tol:
        raise Inconclusive(
            f"nearest witness line at distance {nearest:.3e} is ambiguous"
        )
    return False


def lines_on_two_quadrics(
    first: Quadric,
    second: Quadric,
    seed: int,
    settings: TrackerSettings | None = None,
) -> list[Line]:
    """All lines on a generic intersection of two smooth quadrics in P^4.

    Uses the affine chart rowspan[[1,0,a,b,c],[0,1,d,e,f]] after a random
    unitary change of coordinates, giving six quadratic equations in six
    unknowns (64 paths).  A generic smooth pair carries exactly 16 lines;
    any other count emits GenericityWarning.
    """
    rng = subsystem_rng(seed, "grassmann.quartic")
    rotation = random_unitary(5, rng)
    a1 = rotation.T @ first.normalized @ rotation
    a2 = rotation.T @ second.normalized @ rotation
    coords = variables(6)
    one = Polynomial.constant(6, 1.0)
    zero = Polynomial.zero(6)
    p = [one, zero, coords[0], coords[1], coords[2]]
    q = [zero, one, coords[3], coords[4], coords[5]]
    system = PolySystem(
        [
            _qform(a1, p, p),
            _qform(a1, p, q),
            _qform(a1, q, q),
            _qform(a2, p, p),
            _qform(a2, p, q),
            _qform(a2, q, q),
        ],
        num_vars=6,
    )
    result = solve_total_degree(system, spawn_seed(rng), settings)
    lines: list[Line] = []
    for sol in result.solutions:
        a, b, c, d, e, f = sol.point
        chart_span = np.array(
            [[1.0, 0.0, a, b, c], [0.0, 1.0, d, e, f]], dtype=np.complex128
        )
        span = chart_span @ rotation.T
        try:
            line = Line(span)
        except DimensionMismatch:
            continue
        if first.line_residual(line) > RESIDUAL_TOL or second.line_residual(line) > RESIDUAL_TOL:
            continue
        if any(pluecker_distance(line, other) < LINE_MATCH_TOL for other in lines):
            continue
        lines.append(line)
    lines.sort(key=lambda l: l.sort_key())
    if len(lines) != 16:
        warnings.warn(
            GenericityWarning(
                f"expected 16 lines, found {len(lines)} "
                f"(paths: {result.summary})"
            )
        )
    return lines


# -- numerical duality pairing --------------------------------------------------


def _hyperplane_form(flag: Flag) -> np.ndarray:
    """Covector w with w . m_c = 0 for the M_3 basis columns."""
    rows = flag.frame[:, :4].T
    _, _, vh = np.linalg.svd(rows)
    return vh[-1].conj()


def _project_rows(rows, projector: np.ndarray) -> list[list]:
    return [
        [sum(row[i] * projector[i, k] for i in range(5)) for k in range(projector.shape[1])]
        for row in rows
    ]


def _poly_point_rows(flag: Flag, rotation: np.ndarray):
    """Rows p(s), q(u, v) of the (1,3) chart as polynomial vectors."""
    frame_cols, rot_cols = _fixed_chart_data(flag, rotation)
    svar = Polynomial.variable(3, 0)
    uvar = Polynomial.variable(3, 1)
    vvar = Polynomial.variable(3, 2)
    p = [frame_cols[0][i] + svar * frame_cols[1][i] for i in range(5)]
    q = [rot_cols[2][i] + uvar * rot_cols[0][i] + vvar * rot_cols[1][i] for i in range(5)]
    return p, q


def _point_chart_rows(anchor: np.ndarray, chart: np.ndarray):
    """Rows x0, y(a, b, c) of the (0,4) chart through a fixed point."""
    avar = Polynomial.variable(3, 0)
    bvar = Polynomial.variable(3, 1)
    cvar = Polynomial.variable(3, 2)
    x0 = [complex(z) for z in anchor]
    y = [
        chart[i, 0] + avar * chart[i, 1] + bvar * chart[i, 2] + cvar * chart[i, 3]
        for i in range(5)
    ]
    return x0, y


def schubert_pair_intersection_count(
    alpha,
    flag_g: Flag,
    beta,
    flag_h: Flag,
    seed: int,
    tol: float = 1e-6,
    settings: TrackerSettings | None = None,
) -> int:
    """Count lines in X_alpha(flag_g) meeting X_beta(flag_h), both rank 3.

    Candidate lines come from a square chart system (rank conditions squared
    by random projections); each candidate is accepted only if it passes the
    exact singular-value incidence tests for both Schubert conditions.  For
    generic flags the count is 1 when beta is the dual of alpha and 0
    otherwise.
    """
    alpha, beta = _as_index(alpha), _as_index(beta)
    supported = {SchubertIndex(1, 3), SchubertIndex(0, 4)}
    if alpha not in supported or beta not in supported:
        raise DimensionMismatch("pair counts are implemented for rank-3 indices only")
    rng = subsystem_rng(seed, "grassmann.duality")
    x13 = SchubertIndex(1, 3)

    if alpha == x13:
        rotation = random_unitary(4, rng)
        p, q = _poly_point_rows(flag_g, rotation)
        if beta == x13:
            w = _hyperplane_form(flag_h)
            eq1 = sum((w[i] * p[i] for i in range(5)), Polynomial.zero(3))
            eq2 = sum((w[i] * q[i] for i in range(5)), Polynomial.zero(3))
            proj = complex_gaussian(rng, (5, 4))
            rows = _project_rows(
                [p, q, list(flag_h.column(0)), list(flag_h.column(1))], proj
            )
            system = PolySystem([eq1, eq2, poly_det(rows)], num_vars=3)
        else:
            projs = [complex_gaussian(rng, (5, 3)) for _ in range(3)]
            eqs = [
                poly_det(_project_rows([p, q, list(flag_h.column(0))], pr))
                for pr in projs
            ]
            system = PolySystem(eqs, num_vars=3)
        to_line = lambda point: _line_from_chart(point, flag_g, rotation)
    else:
        anchor = flag_g.column(0)
        chart = complex_gaussian(rng, (5, 4))
        x0, y = _point_chart_rows(anchor, chart)
        if beta == x13:
            w = _hyperplane_form(flag_h)
            eq1 = sum((w[i] * y[i] for i in range(5)), Polynomial.zero(3))
            rows = [x0, y, list(flag_h.column(0)), list(flag_h.column(1))]
            eq2 = poly_det(_project_rows(rows, complex_gaussian(rng, (5, 4))))
            eq3 = poly_det(_project_rows(rows, complex_gaussian(rng, (5, 4))))
            system = PolySystem([eq1, eq2, eq3], num_vars=3)
        else:
            projs = [complex_gaussian(rng, (5, 3)) for _ in range(3)]
            rows = [x0, y, list(flag_h.column(0))]
            system = PolySystem(
                [poly_det(_project_rows(rows, pr)) for pr in projs], num_vars=3
            )

        def to_line(point):
            yval = np.array(
                [complex(chart[i, 0] + point @ chart[i, 1:4]) for i in range(5)]
            )
            return Line(np.vstack([anchor, yval]))

    result = solve_total_degree(system, spawn_seed(rng), settings)
    found: list[Line] = []
    for sol in result.solutions:
        try:
            line = to_line(sol.point)
        except DimensionMismatch:
            continue
        if not line_in_schubert(line, alpha, flag_g, tol=tol):
            continue
        if not line_in_schubert(line, beta, flag_h, tol=tol):
            continue
        if any(pluecker_distance(line, other) < LINE_MATCH_TOL for other in found):
            continue
        found.append(line)
    return len(found)


def class_of_variety(ws: SchubertWitnessSet) -> CycleClass:
    """Schubert-basis class of the line family from its witness counts."""
    _, matrices = builtin_basis("g14")
    degrees = DegreeVector(grade=3, degrees=(len(ws.w13), len(ws.w04)))
    return class_from_degrees(matrices[3], degrees)


# -- JSON helpers ----------------------------------------------------------------


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _matrix_to_lists(m: np.ndarray) -> list:
    return [[_pair(z) for z in row] for row in m]


def _matrix_from_lists(data, shape) -> np.ndarray:
    arr = np.array(
        [[complex(entry[0], entry[1]) for entry in row] for row in data],
        dtype=np.complex128,
    )
    if arr.shape != shape:
        raise DimensionMismatch(f"expected shape {shape}, got {arr.shape}")
    return arr


def line_to_dict(line: Line) -> dict:
    return {
        "span": _matrix_to_lists(line.span),
        "pluecker": [_pair(z) for z in line.pluecker],
    }


def line_from_dict(data) -> Line:
    return Line(_matrix_from_lists(data["span"], (2, 5)))


def flag_to_dict(flag: Flag) -> dict:
    return {"frame": _matrix_to_lists(flag.frame)}


def flag_from_dict(data) -> Flag:
    return Flag(_matrix_from_lists(data["frame"], (5, 5)))


def quadric_to_dict(quadric: Quadric) -> dict:
    return {"matrix": _matrix_to_lists(quadric.matrix)}


def quadric_from_dict(data) -> Quadric:
    return Quadric(_matrix_from_lists(data["matrix"], (5, 5)))


def schubert_witness_to_dict(ws: SchubertWitnessSet) -> dict:
    return {
        "quadric": quadric_to_dict(ws.quadric),
        "flag": flag_to_dict(ws.flag),
        "w13": [line_to_dict(line) for line in ws.w13],
        "w04": [line_to_dict(line) for line in ws.w04],
    }


def schubert_witness_from_dict(data) -> SchubertWitnessSet:
    return SchubertWitnessSet(
        quadric=quadric_from_dict(data["quadric"]),
        flag=flag_from_dict(data["flag"]),
        w13=tuple(line_from_dict(d) for d in data["w13"]),
        w04=tuple(line_from_dict(d) for d in data["w04"]),
        certificates=None,
    )
