"""Sparse multivariate polynomials, Hermitian matrix polynomials, and the
Gram lifting used to rewrite a matrix polynomial in its last variable as a
quadratic form zeta * G * zeta^*.

Polynomials are stored as maps from exponent tuples to coefficients (complex
scalars, or complex coefficient matrices for matrix polynomials).  All values
are immutable after construction; every operation returns a new object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

NEG_INF = float("-inf")


class VariableMismatchError(ValueError):
    """Operands declare different variable orderings."""


class DimensionMismatchError(ValueError):
    """Matrix operands have incompatible shapes."""


class UnknownVariableError(ValueError):
    """A variable name is not declared by the polynomial."""


def monomials_up_to(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples with total degree <= degree, in graded
    lexicographic order over the declared variable order."""
    if nvars == 0:
        return [()]
    result: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, left: int) -> None:
        if remaining == 1:
            result.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), remaining - 1, left - e)

    for total in range(degree + 1):
        rec((), nvars, total)
    return result


def _check_same_vars(a_vars: tuple[str, ...], b_vars: tuple[str, ...]) -> None:
    if a_vars != b_vars:
        raise VariableMismatchError(
            f"variable orderings differ: {a_vars} vs {b_vars}")


def _key_order(vars_: tuple[str, ...]) -> Callable[[tuple[int, ...]], tuple]:
    # graded lex: total degree first, then exponent tuple
    return lambda e: (sum(e), e)


@dataclass(frozen=True)
class ScalarPoly:
    """Multivariate polynomial with double-precision coefficients.

    ``vars`` fixes the variable order; ``terms`` maps exponent tuples (one
    entry per variable) to coefficients.  Zero coefficients are never stored.
    Coefficients are kept as complex pairs; real-valued uses (domain bounds,
    objectives) are validated by their consumers via :attr:`is_real`.
    """

    vars: tuple[str, ...]
    terms: dict[tuple[int, ...], complex]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(self.vars))
        clean: dict[tuple[int, ...], complex] = {}
        for exps, coeff in self.terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.vars):
                raise VariableMismatchError(
                    f"exponent tuple {exps} does not match vars {self.vars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = complex(coeff)
            if c != 0:
                clean[exps] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(vars_: Sequence[str]) -> "ScalarPoly":
        return ScalarPoly(tuple(vars_), {})

    @staticmethod
    def const(vars_: Sequence[str], value: complex) -> "ScalarPoly":
        vars_ = tuple(vars_)
        return ScalarPoly(vars_, {(0,) * len(vars_): value})

    @staticmethod
    def var(vars_: Sequence[str], name: str) -> "ScalarPoly":
        vars_ = tuple(vars_)
        if name not in vars_:
            raise UnknownVariableError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in vars_)
        return ScalarPoly(vars_, {exps: 1.0})

    @staticmethod
    def monomial(vars_: Sequence[str], exps: Sequence[int],
                 coeff: complex = 1.0) -> "ScalarPoly":
        return ScalarPoly(tuple(vars_), {tuple(exps): coeff})

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_real(self) -> bool:
        return all(c.imag == 0.0 for c in self.terms.values())

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "ScalarPoly":
        if isinstance(other, ScalarPoly):
            _check_same_vars(self.vars, other.vars)
            return other
        return ScalarPoly.const(self.vars, other)

    def __add__(self, other) -> "ScalarPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0.0) + c
        return ScalarPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "ScalarPoly":
        return ScalarPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "ScalarPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ScalarPoly":
        return (-self) + other

    def __mul__(self, other) -> "ScalarPoly":
        other = self._coerce(other)
        terms: dict[tuple[int, ...], complex] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0.0) + c1 * c2
        return ScalarPoly(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ScalarPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ScalarPoly.const(self.vars, 1.0)
        for _ in range(n):
            result = result * self
        return result

    def conj(self) -> "ScalarPoly":
        return ScalarPoly(self.vars,
                          {e: c.conjugate() for e, c in self.terms.items()})

    # -- queries -----------------------------------------------------------

    def degree_in(self, name: str) -> float:
        """Max exponent of ``name``; minus infinity for the zero polynomial."""
        if name not in self.vars:
            raise UnknownVariableError(f"unknown variable {name!r}")
        if not self.terms:
            return NEG_INF
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def total_degree(self) -> float:
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def coefficient(self, exps: Sequence[int]) -> complex:
        return self.terms.get(tuple(exps), 0.0)

    def __call__(self, point: Mapping[str, complex] | Sequence[complex]) -> complex:
        vals = _point_values(self.vars, point)
        total = 0.0 + 0.0j
        for e, c in self.terms.items():
            term = c
            for v, p in zip(vals, e):
                if p:
                    term *= v ** p
            total += term
        return total

    def eval_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at an (N, nvars) array of real points; returns (N,)."""
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[None, :]
        out = np.zeros(points.shape[0], dtype=complex)
        for e, c in self.terms.items():
            mono = np.ones(points.shape[0])
            for i, p in enumerate(e):
                if p:
                    mono = mono * points[:, i] ** p
            out += c * mono
        return out

    def with_vars(self, new_vars: Sequence[str]) -> "ScalarPoly":
        """Re-express over a variable tuple containing all current ones."""
        new_vars = tuple(new_vars)
        idx = []
        for v in self.vars:
            if v not in new_vars:
                raise UnknownVariableError(f"variable {v!r} missing from {new_vars}")
            idx.append(new_vars.index(v))
        terms: dict[tuple[int, ...], complex] = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for src, dst in enumerate(idx):
                ne[dst] = e[src]
            terms[tuple(ne)] = terms.get(tuple(ne), 0.0) + c
        return ScalarPoly(new_vars, terms)

    def __repr__(self) -> str:
        return f"ScalarPoly({format_poly(self)})"


def _point_values(vars_: tuple[str, ...],
                  point: Mapping[str, complex] | Sequence[complex]) -> list[complex]:
    if isinstance(point, Mapping):
        return [point[v] for v in vars_]
    point = list(point)
    if len(point) != len(vars_):
        raise VariableMismatchError(
            f"point of length {len(point)} for variables {vars_}")
    return point


def format_poly(p: "ScalarPoly") -> str:
    """Render with ``^`` powers and ``*`` products (the CLI grammar)."""
    if not p.terms:
        return "0"
    chunks = []
    for e in sorted(p.terms, key=_key_order(p.vars)):
        c = p.terms[e]
        factors = []
        for v, pw in zip(p.vars, e):
            if pw == 1:
                factors.append(v)
            elif pw > 1:
                factors.append(f"{v}^{pw}")
        if c.imag == 0.0:
            cs = repr(c.real)
        else:
            cs = f"({c.real!r}{c.imag:+}j)"
        if factors and c == 1:
            chunks.append("*".join(factors))
        elif factors:
            chunks.append(cs + "*" + "*".join(factors))
        else:
            chunks.append(cs)
    return " + ".join(chunks)


@dataclass(frozen=True)
class MatrixPoly:
    """Matrix-valued polynomial: one complex coefficient matrix per monomial.

    A matrix polynomial is *hermitian* when every coefficient matrix is
    hermitian, which is equivalent to P(p) = P(p)^* for all real p.
    """

    vars: tuple[str, ...]
    rows: int
    cols: int
    terms: dict[tuple[int, ...], np.ndarray]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(self.vars))
        clean: dict[tuple[int, ...], np.ndarray] = {}
        for exps, mat in self.terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.vars):
                raise VariableMismatchError(
                    f"exponent tuple {exps} does not match vars {self.vars}")
            mat = np.asarray(mat, dtype=complex)
            if mat.shape != (self.rows, self.cols):
                raise DimensionMismatchError(
                    f"coefficient shape {mat.shape} != {(self.rows, self.cols)}")
            if np.any(mat != 0):
                mat = mat.copy()
                mat.setflags(write=False)
                clean[exps] = mat
        object.__setattr__(self, "terms", clean)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(vars_: Sequence[str], rows: int, cols: int) -> "MatrixPoly":
        return MatrixPoly(tuple(vars_), rows, cols, {})

    @staticmethod
    def const(vars_: Sequence[str], mat: np.ndarray) -> "MatrixPoly":
        mat = np.asarray(mat, dtype=complex)
        vars_ = tuple(vars_)
        return MatrixPoly(vars_, mat.shape[0], mat.shape[1],
                          {(0,) * len(vars_): mat})

    @staticmethod
    def identity(vars_: Sequence[str], n: int) -> "MatrixPoly":
        return MatrixPoly.const(vars_, np.eye(n))

    @staticmethod
    def from_scalar(p: ScalarPoly) -> "MatrixPoly":
        return MatrixPoly(p.vars, 1, 1,
                          {e: np.array([[c]]) for e, c in p.terms.items()})

    @staticmethod
    def from_entries(vars_: Sequence[str],
                     entries: Sequence[Sequence[ScalarPoly]]) -> "MatrixPoly":
        vars_ = tuple(vars_)
        rows = len(entries)
        cols = len(entries[0])
        terms: dict[tuple[int, ...], np.ndarray] = {}
        for i, row in enumerate(entries):
            if len(row) != cols:
                raise DimensionMismatchError("ragged entry rows")
            for j, p in enumerate(row):
                _check_same_vars(tuple(vars_), p.vars)
                for e, c in p.terms.items():
                    if e not in terms:
                        terms[e] = np.zeros((rows, cols), dtype=complex)
                    terms[e][i, j] += c
        return MatrixPoly(vars_, rows, cols, terms)

    # -- structure ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> ScalarPoly:
        return ScalarPoly(self.vars,
                          {e: m[i, j] for e, m in self.terms.items()})

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "MatrixPoly":
        rows = list(rows)
        cols = list(cols)
        return MatrixPoly(self.vars, len(rows), len(cols),
                          {e: m[np.ix_(rows, cols)] for e, m in self.terms.items()})

    def is_hermitian(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(np.array_equal(m, m.conj().T) for m in self.terms.values())

    def hermitized(self) -> "MatrixPoly":
        """Exact symmetrization (X + X^*)/2 of every coefficient."""
        if self.rows != self.cols:
            raise DimensionMismatchError("hermitized requires a square matrix")
        return MatrixPoly(self.vars, self.rows, self.cols,
                          {e: (m + m.conj().T) / 2 for e, m in self.terms.items()})

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "MatrixPoly":
        if isinstance(other, MatrixPoly):
            _check_same_vars(self.vars, other.vars)
            if other.shape != self.shape:
                raise DimensionMismatchError(
                    f"shape mismatch {self.shape} vs {other.shape}")
            return other
        if isinstance(other, np.ndarray):
            return MatrixPoly.const(self.vars, other)
        raise TypeError(f"cannot combine MatrixPoly with {type(other)!r}")

    def __add__(self, other) -> "MatrixPoly":
        other = self._coerce(other)
        terms = {e: m.copy() for e, m in self.terms.items()}
        for e, m in other.terms.items():
            terms[e] = terms.get(e, 0) + m
        return MatrixPoly(self.vars, self.rows, self.cols, terms)

    def __neg__(self) -> "MatrixPoly":
        return MatrixPoly(self.vars, self.rows, self.cols,
                          {e: -m for e, m in self.terms.items()})

    def __sub__(self, other) -> "MatrixPoly":
        return self + (-self._coerce(other))

    def scale(self, c: complex) -> "MatrixPoly":
        return MatrixPoly(self.vars, self.rows, self.cols,
                          {e: c * m for e, m in self.terms.items()})

    def scale_poly(self, p: ScalarPoly) -> "MatrixPoly":
        _check_same_vars(self.vars, p.vars)
        terms: dict[tuple[int, ...], np.ndarray] = {}
        for e1, c in p.terms.items():
            for e2, m in self.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c * m
        return MatrixPoly(self.vars, self.rows, self.cols, terms)

    def __matmul__(self, other) -> "MatrixPoly":
        if isinstance(other, np.ndarray):
            other = MatrixPoly.const(self.vars, other)
        _check_same_vars(self.vars, other.vars)
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.shape} by {other.shape}")
        terms: dict[tuple[int, ...], np.ndarray] = {}
        for e1, m1 in self.terms.items():
            for e2, m2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = m1 @ m2
                terms[e] = terms.get(e, 0) + prod
        return MatrixPoly(self.vars, self.rows, other.cols, terms)

    def __rmatmul__(self, other) -> "MatrixPoly":
        if isinstance(other, np.ndarray):
            return MatrixPoly.const(self.vars, other) @ self
        return NotImplemented

    def adjoint(self) -> "MatrixPoly":
        """Entrywise conjugate transpose (equals P(p)^* for real p)."""
        return MatrixPoly(self.vars, self.cols, self.rows,
                          {e: m.conj().T for e, m in self.terms.items()})

    # -- queries -----------------------------------------------------------

    def degree_in(self, name: str) -> float:
        if name not in self.vars:
            raise UnknownVariableError(f"unknown variable {name!r}")
        if not self.terms:
            return NEG_INF
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def __call__(self, point: Mapping[str, complex] | Sequence[complex]) -> np.ndarray:
        vals = _point_values(self.vars, point)
        out = np.zeros((self.rows, self.cols), dtype=complex)
        for e, m in self.terms.items():
            term = 1.0 + 0.0j
            for v, p in zip(vals, e):
                if p:
                    term *= v ** p
            out += term * m
        return out

    def eval_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at an (N, nvars) real array; returns (N, rows, cols)."""
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[None, :]
        out = np.zeros((points.shape[0], self.rows, self.cols), dtype=complex)
        for e, m in self.terms.items():
            mono = np.ones(points.shape[0])
            for i, p in enumerate(e):
                if p:
                    mono = mono * points[:, i] ** p
            out += mono[:, None, None] * m
        return out

    def with_vars(self, new_vars: Sequence[str]) -> "MatrixPoly":
        new_vars = tuple(new_vars)
        idx = []
        for v in self.vars:
            if v not in new_vars:
                raise UnknownVariableError(f"variable {v!r} missing from {new_vars}")
            idx.append(new_vars.index(v))
        terms: dict[tuple[int, ...], np.ndarray] = {}
        for e, m in self.terms.items():
            ne = [0] * len(new_vars)
            for src, dst in enumerate(idx):
                ne[dst] = e[src]
            key = tuple(ne)
            terms[key] = terms.get(key, 0) + m
        return MatrixPoly(new_vars, self.rows, self.cols, terms)

    def drop_var(self, name: str) -> "MatrixPoly":
        """Remove a variable the polynomial does not depend on."""
        if name not in self.vars:
            raise UnknownVariableError(f"unknown variable {name!r}")
        i = self.vars.index(name)
        if self.terms and max(e[i] for e in self.terms) > 0:
            raise ValueError(f"polynomial depends on {name!r}")
        new_vars = self.vars[:i] + self.vars[i + 1:]
        return MatrixPoly(new_vars, self.rows, self.cols,
                          {e[:i] + e[i + 1:]: m for e, m in self.terms.items()})

    def __repr__(self) -> str:
        return (f"MatrixPoly({self.rows}x{self.cols} in {self.vars}, "
                f"{len(self.terms)} terms)")


def hcat(a: MatrixPoly, b: MatrixPoly) -> MatrixPoly:
    """Horizontal concatenation (a, b)."""
    _check_same_vars(a.vars, b.vars)
    if a.rows != b.rows:
        raise DimensionMismatchError("row counts differ")
    terms: dict[tuple[int, ...], np.ndarray] = {}
    for e in set(a.terms) | set(b.terms):
        left = a.terms.get(e, np.zeros((a.rows, a.cols)))
        right = b.terms.get(e, np.zeros((b.rows, b.cols)))
        terms[e] = np.hstack([left, right])
    return MatrixPoly(a.vars, a.rows, a.cols + b.cols, terms)


def kron(a: MatrixPoly, b: MatrixPoly) -> MatrixPoly:
    """Kronecker product of matrix polynomials."""
    _check_same_vars(a.vars, b.vars)
    terms: dict[tuple[int, ...], np.ndarray] = {}
    for e1, m1 in a.terms.items():
        for e2, m2 in b.terms.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            terms[e] = terms.get(e, 0) + np.kron(m1, m2)
    return MatrixPoly(a.vars, a.rows * b.rows, a.cols * b.cols, terms)


def hermitian_basis(n: int, real_only: bool = False) -> list[np.ndarray]:
    """Fixed-order real basis of n x n hermitian matrices.

    Order: E_ii for i < n, then for each i < j the pair
    E_ij + E_ji and i(E_ij - E_ji) (the latter omitted if ``real_only``).
    """
    basis: list[np.ndarray] = []
    for i in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[i, i] = 1.0
        basis.append(e)
    for i in range(n):
        for j in range(i + 1, n):
            s = np.zeros((n, n), dtype=complex)
            s[i, j] = s[j, i] = 1.0
            basis.append(s)
            if not real_only:
                k = np.zeros((n, n), dtype=complex)
                k[i, j] = 1.0j
                k[j, i] = -1.0j
                basis.append(k)
    return basis


@dataclass(frozen=True)
class DecisionAffineMatrixPoly:
    """Matrix polynomial whose coefficients are affine in a decision vector.

    Value at decision vector h is ``const + sum_i h[i] * terms[i]``.  The
    decision indices refer to a global vector of length ``arity``; indices
    without a stored term have zero coefficient.
    """

    const: MatrixPoly
    terms: dict[int, MatrixPoly]
    arity: int

    def __post_init__(self) -> None:
        clean: dict[int, MatrixPoly] = {}
        for i, t in self.terms.items():
            i = int(i)
            if not 0 <= i < self.arity:
                raise ValueError(f"decision index {i} outside arity {self.arity}")
            _check_same_vars(t.vars, self.const.vars)
            if t.shape != self.const.shape:
                raise DimensionMismatchError("decision term shape mismatch")
            if t.terms:
                clean[i] = t
        object.__setattr__(self, "terms", clean)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(m: MatrixPoly, arity: int = 0) -> "DecisionAffineMatrixPoly":
        return DecisionAffineMatrixPoly(m, {}, arity)

    # -- structure ---------------------------------------------------------

    @property
    def vars(self) -> tuple[str, ...]:
        return self.const.vars

    @property
    def shape(self) -> tuple[int, int]:
        return self.const.shape

    @property
    def rows(self) -> int:
        return self.const.rows

    @property
    def cols(self) -> int:
        return self.const.cols

    def is_hermitian(self) -> bool:
        return self.const.is_hermitian() and all(
            t.is_hermitian() for t in self.terms.values())

    def hermitized(self) -> "DecisionAffineMatrixPoly":
        return self.map_linear(lambda m: m.hermitized())

    def map_linear(self, f: Callable[[MatrixPoly], MatrixPoly]
                   ) -> "DecisionAffineMatrixPoly":
        """Apply a linear matrix-polynomial map to the constant part and to
        every decision term (affinity is preserved by linearity)."""
        return DecisionAffineMatrixPoly(
            f(self.const), {i: f(t) for i, t in self.terms.items()}, self.arity)

    def with_arity(self, arity: int) -> "DecisionAffineMatrixPoly":
        if arity < self.arity and any(i >= arity for i in self.terms):
            raise ValueError("cannot shrink arity below used indices")
        return DecisionAffineMatrixPoly(self.const, dict(self.terms), arity)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "DecisionAffineMatrixPoly":
        if isinstance(other, MatrixPoly):
            other = DecisionAffineMatrixPoly.constant(other, self.arity)
        arity = max(self.arity, other.arity)
        terms = dict(self.terms)
        for i, t in other.terms.items():
            terms[i] = terms[i] + t if i in terms else t
        return DecisionAffineMatrixPoly(self.const + other.const, terms, arity)

    def __neg__(self) -> "DecisionAffineMatrixPoly":
        return self.map_linear(lambda m: -m)

    def __sub__(self, other) -> "DecisionAffineMatrixPoly":
        if isinstance(other, MatrixPoly):
            other = DecisionAffineMatrixPoly.constant(other, self.arity)
        return self + (-other)

    def sandwich(self, left: MatrixPoly, right: MatrixPoly
                 ) -> "DecisionAffineMatrixPoly":
        """left @ self @ right with decision-free factors."""
        return self.map_linear(lambda m: left @ m @ right)

    # -- queries -----------------------------------------------------------

    def degree_in(self, name: str) -> float:
        degs = [self.const.degree_in(name)]
        degs += [t.degree_in(name) for t in self.terms.values()]
        return max(degs)

    def eval_decision(self, h: Sequence[float]) -> MatrixPoly:
        h = np.asarray(h)
        if h.shape[0] != self.arity:
            raise DimensionMismatchError(
                f"decision vector of length {h.shape[0]}, arity {self.arity}")
        out = self.const
        for i, t in self.terms.items():
            if h[i] != 0:
                out = out + t.scale(h[i])
        return out

    def __call__(self, point, h) -> np.ndarray:
        return self.eval_decision(h)(point)

    def with_vars(self, new_vars: Sequence[str]) -> "DecisionAffineMatrixPoly":
        return self.map_linear(lambda m: m.with_vars(new_vars))

    def __repr__(self) -> str:
        return (f"DecisionAffineMatrixPoly({self.rows}x{self.cols} in "
                f"{self.vars}, arity={self.arity}, {len(self.terms)} active)")


# ---------------------------------------------------------------------------
# Gram lifting
# ---------------------------------------------------------------------------

def _anti_diagonal_weights(d: int, t: int) -> np.ndarray:
    """(d+1)x(d+1) symmetric weight matrix W_t with zeta W_t zeta^* = p^t.

    The coefficient of p^t is split with weight 1/2 over the two extremal
    cells of the anti-diagonal r + s = 2d - t (a single cell gets weight 1).
    Halving is exact in binary floating point, so expanding the quadratic
    form reconstructs the original coefficients exactly.
    """
    if not 0 <= t <= 2 * d:
        raise ValueError(f"power {t} outside [0, {2 * d}]")
    u = 2 * d - t
    r_lo = max(0, u - d)
    r_hi = min(d, u)
    w = np.zeros((d + 1, d + 1))
    if r_lo == r_hi:
        w[r_lo, u - r_lo] = 1.0
    else:
        w[r_lo, u - r_lo] = 0.5
        w[r_hi, u - r_hi] = 0.5
    return w


def gram_matrix_poly(P: MatrixPoly, var: str, d: int) -> MatrixPoly:
    """Gram representative of an m x m matrix polynomial in ``var``.

    Returns the m(d+1) square matrix polynomial G over the remaining
    variables with P = (I_m (x) zeta) G (I_m (x) zeta)^*,
    zeta = (var^d, ..., var, 1).
    """
    if var != P.vars[-1]:
        raise UnknownVariableError(f"{var!r} must be the last variable")
    i_var = len(P.vars) - 1
    m = P.rows
    if P.cols != m:
        raise DimensionMismatchError("gram lifting requires a square matrix")
    size = m * (d + 1)
    terms: dict[tuple[int, ...], np.ndarray] = {}
    for e, mat in P.terms.items():
        t = e[i_var]
        if t > 2 * d:
            raise ValueError(f"degree {t} in {var!r} exceeds 2d = {2 * d}")
        e_pre = e[:i_var]
        w = _anti_diagonal_weights(d, t)
        if e_pre not in terms:
            terms[e_pre] = np.zeros((size, size), dtype=complex)
        terms[e_pre] += np.kron(mat, w)
    return MatrixPoly(P.vars[:-1], size, size, terms)


def gram_lift(L: DecisionAffineMatrixPoly | MatrixPoly, var: str
              ) -> tuple[int, DecisionAffineMatrixPoly]:
    """Lift a hermitian matrix polynomial to its Gram quadratic form in the
    last variable.

    Returns ``(d, G)`` with d = floor((deg_var(L) + 1)/2) and G a
    decision-affine matrix polynomial of size m(d+1) over the remaining
    variables satisfying L = (I_m (x) zeta) G (I_m (x) zeta)^* identically,
    zeta = (var^d, ..., var, 1).  The zero/constant-in-var case yields d = 0.
    """
    if isinstance(L, MatrixPoly):
        L = DecisionAffineMatrixPoly.constant(L, 0)
    deg = L.degree_in(var)
    d = 0 if deg == NEG_INF else math.floor((deg + 1) / 2)
    big = L.map_linear(lambda P: gram_matrix_poly(P, var, d))
    return d, big


def zeta_vector(vars_: Sequence[str], var: str, d: int) -> MatrixPoly:
    """Row vector (var^d, ..., var, 1) as a 1 x (d+1) matrix polynomial."""
    vars_ = tuple(vars_)
    i = vars_.index(var)
    terms = {}
    for r in range(d + 1):
        e = [0] * len(vars_)
        e[i] = d - r
        mat = np.zeros((1, d + 1), dtype=complex)
        mat[0, r] = 1.0
        terms[tuple(e)] = mat
    return MatrixPoly(vars_, 1, d + 1, terms)


def gram_reconstruct(G: DecisionAffineMatrixPoly, var: str, d: int, m: int
                     ) -> DecisionAffineMatrixPoly:
    """Expand (I_m (x) zeta) G (I_m (x) zeta)^* back to a matrix polynomial
    over the original variables (for verifying gram_lift)."""
    full_vars = G.vars + (var,)
    zeta = zeta_vector(full_vars, var, d)
    left = kron(MatrixPoly.identity(full_vars, m), zeta)
    right = left.adjoint()
    lifted = G.with_vars(full_vars)
    return lifted.sandwich(left, right)


def gram_kernel_basis(m: int, d: int) -> list[np.ndarray]:
    """Hermitian basis of {K : (I_m (x) zeta) K (I_m (x) zeta)^* = 0}.

    These are the degrees of freedom of the Gram representation; adding any
    combination to a Gram matrix leaves the lifted polynomial unchanged.
    """
    n = d + 1
    size = m * n
    basis: list[np.ndarray] = []

    def cells(u: int) -> list[tuple[int, int]]:
        return [(r, u - r) for r in range(max(0, u - d), min(d, u) + 1)]

    def place(i: int, j: int, block: np.ndarray) -> np.ndarray:
        k = np.zeros((size, size), dtype=complex)
        k[i * n:(i + 1) * n, j * n:(j + 1) * n] = block
        if i != j:
            k[j * n:(j + 1) * n, i * n:(i + 1) * n] = block.conj().T
        return k

    for u in range(2 * d + 1):
        cs = cells(u)
        # diagonal outer blocks: hermitian kernel of the anti-diagonal sums
        pairs = [(r, s) for (r, s) in cs if r <= s]
        for i in range(m):
            for (r, s) in pairs:
                if r < s:
                    k = np.zeros((n, n), dtype=complex)
                    k[r, s] = 1.0j
                    k[s, r] = -1.0j
                    basis.append(place(i, i, k))
            for t in range(1, len(pairs)):
                (r0, s0), (r1, s1) = pairs[t - 1], pairs[t]
                k = np.zeros((n, n), dtype=complex)
                w0 = 1.0 if r0 == s0 else 0.5
                w1 = 1.0 if r1 == s1 else 0.5
                k[r0, s0] += w0
                k[s0, r0] += w0
                k[r1, s1] -= w1
                k[s1, r1] -= w1
                basis.append(place(i, i, k))
        # off-diagonal outer blocks: complex kernel directions
        for i in range(m):
            for j in range(i + 1, m):
                for t in range(1, len(cs)):
                    (r0, s0), (r1, s1) = cs[t - 1], cs[t]
                    for scale in (1.0, 1.0j):
                        k = np.zeros((n, n), dtype=complex)
                        k[r0, s0] += scale
                        k[r1, s1] -= scale
                        basis.append(place(i, j, k))
    return basis
