"""Sparse multivariate polynomials over the complex numbers.

Polynomials are immutable term lists (exponent vector, coefficient) kept in
graded-lexicographic order, which makes serialization canonical.  Systems
bundle polynomials sharing one variable count and provide vectorized
evaluation of values and Jacobians.

JSON wire format::

    {"vars": ["x", "y"],
     "polys": [[{"c": [re, im], "e": [2, 0]}, ...], ...]}
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, ParseError

__all__ = [
    "Polynomial",
    "PolySystem",
    "variables",
    "serialize",
    "parse",
    "poly_det",
]


def _as_complex(z) -> complex:
    return complex(z)


class Polynomial:
    """Immutable sparse polynomial in ``num_vars`` complex variables."""

    __slots__ = ("num_vars", "_exps", "_coeffs", "_degree")

    def __init__(self, num_vars: int, terms: Iterable[tuple[Sequence[int], complex]]):
        if num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        acc: dict[tuple[int, ...], complex] = {}
        for exps, coeff in terms:
            key = tuple(int(e) for e in exps)
            if len(key) != num_vars:
                raise DimensionMismatch("exponent vector length does not match num_vars")
            if any(e < 0 for e in key):
                raise ValueError("exponents must be nonnegative")
            acc[key] = acc.get(key, 0j) + _as_complex(coeff)
        items = [(e, c) for e, c in acc.items() if c != 0]
        # graded-lex, highest degree first: canonical term order
        items.sort(key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)
        exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), num_vars)
        coeffs = np.array([c for _, c in items], dtype=np.complex128)
        exps.flags.writeable = False
        coeffs.flags.writeable = False
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "_exps", exps)
        object.__setattr__(self, "_coeffs", coeffs)
        object.__setattr__(self, "_degree", int(exps.sum(axis=1).max()) if len(items) else 0)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> "Polynomial":
        return cls(num_vars, [])

    @classmethod
    def constant(cls, num_vars: int, value: complex) -> "Polynomial":
        return cls(num_vars, [((0,) * num_vars, value)])

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "Polynomial":
        if not 0 <= index < num_vars:
            raise ValueError("variable index out of range")
        exps = [0] * num_vars
        exps[index] = 1
        return cls(num_vars, [(tuple(exps), 1.0)])

    # -- inspection --------------------------------------------------------

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial reports 0."""
        return self._degree

    @property
    def num_terms(self) -> int:
        return len(self._coeffs)

    def terms(self) -> Iterator[tuple[tuple[int, ...], complex]]:
        for row, c in zip(self._exps, self._coeffs):
            yield tuple(int(e) for e in row), complex(c)

    def is_zero(self) -> bool:
        return len(self._coeffs) == 0

    def coefficient(self, exps: Sequence[int]) -> complex:
        key = np.array([int(e) for e in exps], dtype=np.int64)
        hit = np.all(self._exps == key[None, :], axis=1)
        idx = np.nonzero(hit)[0]
        return complex(self._coeffs[idx[0]]) if len(idx) else 0j

    # -- evaluation and calculus -------------------------------------------

    def evaluate(self, point: Sequence[complex]) -> complex:
        x = np.asarray(point, dtype=np.complex128)
        if x.shape != (self.num_vars,):
            raise DimensionMismatch("point length does not match num_vars")
        if len(self._coeffs) == 0:
            return 0j
        total = 0j
        for row, c in zip(self._exps, self._coeffs):
            term = c
            for j in range(self.num_vars):
                e = row[j]
                if e:
                    term = term * x[j] ** int(e)
            total += term
        return complex(total)

    def differentiate(self, index: int) -> "Polynomial":
        """Exact partial derivative with respect to variable ``index``."""
        if not 0 <= index < self.num_vars:
            raise ValueError("variable index out of range")
        out = []
        for row, c in zip(self._exps, self._coeffs):
            e = int(row[index])
            if e:
                new = list(row)
                new[index] = e - 1
                out.append((tuple(new), c * e))
        return Polynomial(self.num_vars, out)

    def substitute(self, index: int, value: complex) -> "Polynomial":
        """Partially evaluate one variable, dropping it from the ring."""
        if not 0 <= index < self.num_vars:
            raise ValueError("variable index out of range")
        z = _as_complex(value)
        out = []
        for row, c in zip(self._exps, self._coeffs):
            e = int(row[index])
            new = tuple(int(v) for j, v in enumerate(row) if j != index)
            out.append((new, c * z**e))
        return Polynomial(self.num_vars - 1, out)

    def lift(self, num_vars: int) -> "Polynomial":
        """Embed into a larger ring; new variables are appended at the end."""
        if num_vars < self.num_vars:
            raise ValueError("cannot lift to fewer variables")
        pad = (0,) * (num_vars - self.num_vars)
        return Polynomial(num_vars, [(e + pad, c) for e, c in self.terms()])

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.num_vars != self.num_vars:
                raise DimensionMismatch("mixed variable counts")
            return other
        if isinstance(other, (int, float, complex, np.integer, np.floating, np.complexfloating)):
            return Polynomial.constant(self.num_vars, complex(other))
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return Polynomial(self.num_vars, list(self.terms()) + list(rhs.terms()))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.num_vars, [(e, -c) for e, c in self.terms()])

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = []
        for e1, c1 in self.terms():
            for e2, c2 in rhs.terms():
                out.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return Polynomial(self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = Polynomial.constant(self.num_vars, 1.0)
        for _ in range(int(n)):
            result = result * self
        return result

    # -- equality and display ------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self._exps.shape == other._exps.shape
            and np.array_equal(self._exps, other._exps)
            and np.array_equal(self._coeffs, other._coeffs)
        )

    def __hash__(self):
        return hash((self.num_vars, tuple(self.terms())))

    def __repr__(self):
        if self.is_zero():
            return "<poly 0>"
        bits = []
        for e, c in list(self.terms())[:6]:
            mono = "*".join(f"x{j}^{k}" if k > 1 else f"x{j}" for j, k in enumerate(e) if k)
            bits.append(f"({c:.3g})" + ("*" + mono if mono else ""))
        tail = " + ..." if self.num_terms > 6 else ""
        return f"<poly {' + '.join(bits)}{tail}>"


def variables(num_vars: int) -> tuple[Polynomial, ...]:
    """The coordinate polynomials (x0, ..., x_{n-1})."""
    return tuple(Polynomial.variable(num_vars, j) for j in range(num_vars))


class _EvalKernel:
    """Stacked term arrays for fast repeated evaluation of many polynomials."""

    __slots__ = ("num_vars", "rows", "_E", "_C", "_sel", "_maxdeg")

    def __init__(self, polys: Sequence[Polynomial], num_vars: int):
        self.num_vars = num_vars
        self.rows = len(polys)
        E_parts, C_parts, row_idx = [], [], []
        for r, p in enumerate(polys):
            if p.num_terms:
                E_parts.append(p._exps)
                C_parts.append(p._coeffs)
                row_idx.append(np.full(p.num_terms, r, dtype=np.int64))
        if E_parts:
            self._E = np.vstack(E_parts)
            self._C = np.concatenate(C_parts)
            idx = np.concatenate(row_idx)
        else:
            self._E = np.zeros((0, num_vars), dtype=np.int64)
            self._C = np.zeros(0, dtype=np.complex128)
            idx = np.zeros(0, dtype=np.int64)
        sel = np.zeros((self.rows, len(self._C)))
        sel[idx, np.arange(len(self._C))] = 1.0
        self._sel = sel
        self._maxdeg = int(self._E.max()) if self._E.size else 0

    def __call__(self, point: np.ndarray) -> np.ndarray:
        if len(self._C) == 0:
            return np.zeros(self.rows, dtype=np.complex128)
        pows = point[:, None] ** np.arange(self._maxdeg + 1)
        term_vals = pows[np.arange(self.num_vars)[None, :], self._E].prod(axis=1)
        return self._sel @ (self._C * term_vals)


class PolySystem:
    """A finite list of polynomials in one shared set of variables.

    ``var_names`` is carried for serialization only and does not take part
    in equality.
    """

    __slots__ = ("num_vars", "polys", "var_names", "_cache")

    def __init__(
        self,
        polys: Sequence[Polynomial],
        num_vars: int | None = None,
        var_names: Sequence[str] | None = None,
    ):
        polys = tuple(polys)
        if num_vars is None:
            if not polys:
                raise DimensionMismatch("num_vars required for an empty system")
            num_vars = polys[0].num_vars
        for p in polys:
            if p.num_vars != num_vars:
                raise DimensionMismatch("all polynomials must share num_vars")
        if var_names is not None:
            var_names = tuple(str(s) for s in var_names)
            if len(var_names) != num_vars:
                raise DimensionMismatch("var_names length does not match num_vars")
        object.__setattr__(self, "num_vars", int(num_vars))
        object.__setattr__(self, "polys", polys)
        object.__setattr__(self, "var_names", var_names)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("PolySystem is immutable")

    @property
    def num_polys(self) -> int:
        return len(self.polys)

    def degrees(self) -> tuple[int, ...]:
        return tuple(p.degree for p in self.polys)

    def names(self) -> tuple[str, ...]:
        if self.var_names is not None:
            return self.var_names
        return tuple(f"x{j}" for j in range(self.num_vars))

    def _value_kernel(self) -> _EvalKernel:
        k = self._cache.get("value")
        if k is None:
            k = _EvalKernel(self.polys, self.num_vars)
            self._cache["value"] = k
        return k

    def _full_kernel(self) -> _EvalKernel:
        """One kernel computing values and all first partials together."""
        k = self._cache.get("full")
        if k is None:
            stacked = list(self.polys)
            for p in self.polys:
                for j in range(self.num_vars):
                    stacked.append(p.differentiate(j))
            k = _EvalKernel(stacked, self.num_vars)
            self._cache["full"] = k
        return k

    def evaluate(self, point: Sequence[complex]) -> np.ndarray:
        x = np.asarray(point, dtype=np.complex128)
        if x.shape != (self.num_vars,):
            raise DimensionMismatch("point length does not match num_vars")
        return self._value_kernel()(x)

    def jacobian(self, point: Sequence[complex]) -> np.ndarray:
        return self.eval_with_jacobian(point)[1]

    def eval_with_jacobian(self, point: Sequence[complex]) -> tuple[np.ndarray, np.ndarray]:
        x = np.asarray(point, dtype=np.complex128)
        if x.shape != (self.num_vars,):
            raise DimensionMismatch("point length does not match num_vars")
        flat = self._full_kernel()(x)
        n, m = self.num_vars, self.num_polys
        return flat[:m], flat[m:].reshape(m, n)

    def jacobian_system(self) -> tuple[tuple[Polynomial, ...], ...]:
        """The m x n grid of first partial derivatives."""
        grid = self._cache.get("jacsys")
        if grid is None:
            grid = tuple(
                tuple(p.differentiate(j) for j in range(self.num_vars)) for p in self.polys
            )
            self._cache["jacsys"] = grid
        return grid

    def substitute_last(self, value: complex) -> "PolySystem":
        """Pin the last variable to a constant; used for homotopy sections."""
        names = self.var_names[:-1] if self.var_names else None
        return PolySystem(
            [p.substitute(self.num_vars - 1, value) for p in self.polys],
            num_vars=self.num_vars - 1,
            var_names=names,
        )

    def __eq__(self, other):
        if not isinstance(other, PolySystem):
            return NotImplemented
        return self.num_vars == other.num_vars and self.polys == other.polys

    def __hash__(self):
        return hash((self.num_vars, self.polys))

    def __repr__(self):
        return f"<PolySystem {self.num_polys} eqs in {self.num_vars} vars, degrees {self.degrees()}>"


# -- serialization ----------------------------------------------------------


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def system_to_dict(system: PolySystem) -> dict:
    return {
        "vars": list(system.names()),
        "polys": [
            [{"c": _pair(c), "e": list(e)} for e, c in p.terms()] for p in system.polys
        ],
    }


def serialize(system: PolySystem) -> str:
    """Canonical JSON text for a system (terms in graded-lex order)."""
    return json.dumps(system_to_dict(system), sort_keys=True)


def system_from_dict(data) -> PolySystem:
    if not isinstance(data, dict):
        raise ParseError("system payload must be a JSON object")
    names = data.get("vars")
    if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
        raise ParseError("'vars' must be a list of strings")
    n = len(names)
    raw_polys = data.get("polys")
    if not isinstance(raw_polys, list):
        raise ParseError("'polys' must be a list")
    polys = []
    for raw in raw_polys:
        if not isinstance(raw, list):
            raise ParseError("each polynomial must be a list of terms")
        terms = []
        for t in raw:
            if not isinstance(t, dict) or set(t) - {"c", "e"}:
                raise ParseError("term must be an object with 'c' and 'e'")
            c, e = t.get("c"), t.get("e")
            if (
                not isinstance(c, list)
                or len(c) != 2
                or not all(isinstance(v, (int, float)) for v in c)
            ):
                raise ParseError("'c' must be [re, im]")
            if not all(np.isfinite(v) for v in c):
                raise ParseError("coefficients must be finite")
            if not isinstance(e, list) or len(e) != n:
                raise ParseError("'e' length must match 'vars'")
            if not all(isinstance(v, int) and v >= 0 for v in e):
                raise ParseError("exponents must be nonnegative integers")
            terms.append((tuple(e), complex(c[0], c[1])))
        polys.append(Polynomial(n, terms))
    return PolySystem(polys, num_vars=n, var_names=names)


def parse(text: str) -> PolySystem:
    """Inverse of :func:`serialize`, with full validation."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return system_from_dict(data)


def poly_det(matrix: Sequence[Sequence[Polynomial | complex]]) -> Polynomial:
    """Determinant of a small square matrix of polynomials (Laplace expansion)."""
    m = len(matrix)
    rows = []
    num_vars = None
    for row in matrix:
        if len(row) != m:
            raise ValueError("matrix must be square")
        for entry in row:
            if isinstance(entry, Polynomial):
                num_vars = entry.num_vars
    if num_vars is None:
        raise ValueError("at least one entry must be a Polynomial")
    for row in matrix:
        rows.append(
            [
                e if isinstance(e, Polynomial) else Polynomial.constant(num_vars, complex(e))
                for e in row
            ]
        )

    def det(rs: list[list[Polynomial]]) -> Polynomial:
        k = len(rs)
        if k == 1:
            return rs[0][0]
        total = Polynomial.zero(num_vars)
        for col in range(k):
            minor = [[r[c] for c in range(k) if c != col] for r in rs[1:]]
            piece = rs[0][col] * det(minor)
            total = total + (piece if col % 2 == 0 else -piece)
        return total

    return det(rows)
