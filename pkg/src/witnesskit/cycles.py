"""Intersection-degree bookkeeping for cycle classes, in exact arithmetic.

A graded basis fixes labels for the free abelian group of classes in each
grade; the grade-k pairing matrix M records intersection degrees of grade-k
basis classes against the complementary grade.  Observed intersection counts
d of a variety against the complementary basis then determine its class by
the exact rational solve c = M^{-1} d.  Everything here is Fractions; no
floating point enters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, SingularMatrix, UnsupportedProduct

__all__ = [
    "BasisLabel",
    "GradedBasis",
    "IntersectionMatrix",
    "CycleClass",
    "DegreeVector",
    "class_from_degrees",
    "pairing_degree",
    "is_duality_basis",
    "builtin_basis",
    "intersect_classes",
]


@dataclass(frozen=True)
class BasisLabel:
    """One basis class: a display name plus its grade (complex dimension)."""

    name: str
    grade: int


@dataclass(frozen=True)
class GradedBasis:
    """Labels per grade for one ambient space, grades 0..ambient_dim."""

    space: str
    ambient_dim: int
    grades: tuple[tuple[BasisLabel, ...], ...]

    def __post_init__(self):
        if len(self.grades) != self.ambient_dim + 1:
            raise DimensionMismatch("need one label tuple per grade 0..n")
        for k, labels in enumerate(self.grades):
            names = [lab.name for lab in labels]
            if len(set(names)) != len(names):
                raise DimensionMismatch(f"duplicate label names in grade {k}")
            for lab in labels:
                if lab.grade != k:
                    raise DimensionMismatch(f"label {lab.name} filed under grade {k}")

    def rank(self, grade: int) -> int:
        return len(self.grades[grade])

    def labels(self, grade: int) -> tuple[BasisLabel, ...]:
        return self.grades[grade]


@dataclass(frozen=True)
class IntersectionMatrix:
    """Pairing degrees: rows index grade n-k labels, columns grade k labels."""

    grade: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def num_rows(self) -> int:
        return len(self.entries)

    @property
    def num_cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0


@dataclass(frozen=True)
class CycleClass:
    """Rational coefficients with respect to the grade-k basis labels."""

    grade: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


@dataclass(frozen=True)
class DegreeVector:
    """Observed intersection counts against the complementary-grade basis."""

    grade: int
    degrees: tuple[int, ...]


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over the rationals with partial pivoting."""
    n = len(matrix)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if aug[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            raise SingularMatrix("pairing matrix is singular over the rationals")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1, 1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def class_from_degrees(matrix: IntersectionMatrix, degrees: DegreeVector) -> CycleClass:
    """Recover a cycle class from its intersection counts, exactly.

    Solves M c = d over the rationals; the answer has zero tolerance by
    construction.
    """
    if matrix.grade != degrees.grade:
        raise DimensionMismatch("matrix and degree vector have different grades")
    if matrix.num_rows != len(degrees.degrees):
        raise DimensionMismatch("degree vector length does not match matrix rows")
    if matrix.num_rows != matrix.num_cols:
        raise DimensionMismatch("pairing matrix must be square")
    m = [[Fraction(v) for v in row] for row in matrix.entries]
    d = [Fraction(v) for v in degrees.degrees]
    return CycleClass(grade=matrix.grade, coeffs=tuple(_solve_exact(m, d)))


def pairing_degree(matrix: IntersectionMatrix, row: int, col: int) -> int:
    """Intersection degree of the row-th complementary label with the
    col-th grade label."""
    return matrix.entries[row][col]


def is_duality_basis(matrix: IntersectionMatrix) -> bool:
    """True when the pairing matrix is a permutation matrix, i.e. each basis
    class meets exactly one complementary class, once."""
    if matrix.num_rows != matrix.num_cols:
        return False
    seen_cols = set()
    for row in matrix.entries:
        ones = [j for j, v in enumerate(row) if v == 1]
        if len(ones) != 1 or any(v != 0 for j, v in enumerate(row) if j != ones[0]):
            return False
        if ones[0] in seen_cols:
            return False
        seen_cols.add(ones[0])
    return True


# -- built-in bases ------------------------------------------------------------


def _pn_basis(n: int) -> tuple[GradedBasis, dict[int, IntersectionMatrix]]:
    grades = tuple((BasisLabel(f"L{k}", k),) for k in range(n + 1))
    basis = GradedBasis("pn", n, grades)
    matrices = {k: IntersectionMatrix(k, ((1,),)) for k in range(n + 1)}
    return basis, matrices


def _product_labels(m: int, n: int, k: int) -> list[tuple[int, int]]:
    return [(a, k - a) for a in range(k + 1) if a <= m and k - a <= n]


def _product_basis(m: int, n: int) -> tuple[GradedBasis, dict[int, IntersectionMatrix]]:
    total = m + n
    grades = []
    for k in range(total + 1):
        grades.append(
            tuple(BasisLabel(f"{a}x{b}", k) for a, b in _product_labels(m, n, k))
        )
    basis = GradedBasis("product", total, grades)
    matrices = {}
    for k in range(total + 1):
        cols = _product_labels(m, n, k)
        rows = _product_labels(m, n, total - k)
        entries = tuple(
            tuple(1 if (m - ra, n - rb) == c else 0 for c in cols) for ra, rb in rows
        )
        matrices[k] = IntersectionMatrix(k, entries)
    return basis, matrices


def _blowup_p2_basis() -> tuple[GradedBasis, dict[int, IntersectionMatrix]]:
    # grade 1 pairs as [[1, 0], [0, -1]] in the (line, exceptional) basis
    grades = (
        (BasisLabel("pt", 0),),
        (BasisLabel("l", 1), BasisLabel("E", 1)),
        (BasisLabel("X", 2),),
    )
    basis = GradedBasis("blowup-p2", 2, grades)
    matrices = {
        0: IntersectionMatrix(0, ((1,),)),
        1: IntersectionMatrix(1, ((1, 0), (0, -1))),
        2: IntersectionMatrix(2, ((1,),)),
    }
    return basis, matrices


def _g14_basis() -> tuple[GradedBasis, dict[int, IntersectionMatrix]]:
    from .grassmann import SchubertIndex, schubert_dual, schubert_poset

    poset = schubert_poset()
    grades = []
    for k in range(7):
        grades.append(
            tuple(BasisLabel(f"{idx.i}{idx.j}", k) for idx in poset.by_rank(k))
        )
    basis = GradedBasis("g14", 6, grades)
    matrices = {}
    for k in range(7):
        cols = poset.by_rank(k)
        rows = poset.by_rank(6 - k)
        entries = tuple(
            tuple(1 if schubert_dual(c) == r else 0 for c in cols) for r in rows
        )
        matrices[k] = IntersectionMatrix(k, entries)
    return basis, matrices


def builtin_basis(
    space: str, m: int | None = None, n: int | None = None
) -> tuple[GradedBasis, dict[int, IntersectionMatrix]]:
    """Basis and pairing matrices for the built-in spaces.

    Supported: "pn" (needs n), "product" (needs m and n), "blowup-p2",
    "g14" (lines in P4, Schubert basis).
    """
    key = space.lower()
    if key == "pn":
        if n is None or n < 1:
            raise DimensionMismatch("pn basis needs a positive n")
        return _pn_basis(n)
    if key == "product":
        if m is None or n is None or m < 1 or n < 1:
            raise DimensionMismatch("product basis needs positive m and n")
        return _product_basis(m, n)
    if key == "blowup-p2":
        return _blowup_p2_basis()
    if key == "g14":
        return _g14_basis()
    raise DimensionMismatch(f"unknown space '{space}'")


# stored structure constants for grade-3 products on g14; everything else is
# out of scope and rejected rather than guessed
_G14_X13_SQUARED = Fraction(1)
_G14_X13_X04 = Fraction(0)


def intersect_classes(basis: GradedBasis, left: CycleClass, right: CycleClass) -> CycleClass:
    """Product of two grade-3 classes on g14, landing in grade 0.

    Only the stored constants are used: [X13]^2 = [X01] and
    [X13][X04] = 0.  Any product needing [X04]^2, or any other grade pair,
    raises UnsupportedProduct.
    """
    if basis.space != "g14" or basis.ambient_dim != 6:
        raise UnsupportedProduct("class products are only stored for g14")
    if left.grade != 3 or right.grade != 3:
        raise UnsupportedProduct("class products are only stored for grade 3 on g14")
    if len(left.coeffs) != 2 or len(right.coeffs) != 2:
        raise DimensionMismatch("grade-3 classes on g14 have two coefficients")
    a1, b1 = left.coeffs
    a2, b2 = right.coeffs
    if b1 * b2 != 0:
        raise UnsupportedProduct(
            "product requires the unrecorded self-intersection of [X04]"
        )
    value = a1 * a2 * _G14_X13_SQUARED + (a1 * b2 + a2 * b1) * _G14_X13_X04
    return CycleClass(grade=0, coeffs=(value,))
