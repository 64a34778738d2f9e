"""Exact integer and rational linear algebra.

Every routine here works on arbitrary-precision integers or
``fractions.Fraction`` values; nothing is ever rounded.  Determinants and
ranks are delegated to sympy's exact (fraction-free Bareiss) code paths, the
Hermite normal form and the LDL^T factorization are implemented directly so
that their conventions and failure modes are pinned.
"""

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from sympy import ZZ, Matrix
from sympy.core.intfunc import igcdex
from sympy.matrices.normalforms import invariant_factors

from .config import ConfigurationError, load_config
from .logger import get_logger

logger = get_logger(__name__)


class DimensionError(ValueError):
    """Raised when matrix or vector shapes do not fit an operation."""


class RankError(ValueError):
    """Raised when a matrix does not have the rank an operation requires."""


class NotSymmetricError(ValueError):
    """Raised when a matrix that must be symmetric is not."""


class NotPositiveDefiniteError(ValueError):
    """Raised when an LDL^T factorization meets a non-positive pivot."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        """Validate shape, entry types and the configured dimension cap."""
        if not self.rows or not self.rows[0]:
            raise DimensionError("Matrix must have at least one row and one column")

        width = len(self.rows[0])
        for row in self.rows:
            if len(row) != width:
                raise DimensionError("All matrix rows must have the same length")

        cap = load_config().max_dimension
        if len(self.rows) > cap:
            raise ConfigurationError(
                f"Matrix has {len(self.rows)} rows, above the configured cap of {cap}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        """Build a matrix from rows of integer-like values (floats rejected)."""
        return cls(tuple(tuple(operator.index(e) for e in row) for row in rows))

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable[int]]) -> "IntMatrix":
        """Build a matrix whose columns are the given vectors."""
        return cls.from_rows(zip(*[list(col) for col in columns]))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls.from_rows(
            [values[i] if i == j else 0 for j in range(n)] for i in range(n)
        )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows)
            for j in range(i)
        )

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def scaled(self, factor: int) -> "IntMatrix":
        return IntMatrix.from_rows([factor * e for e in row] for row in self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(
                f"Cannot multiply {self.shape} by {other.shape} matrices"
            )
        other_cols = other.columns()
        return IntMatrix.from_rows(
            [sum(a * b for a, b in zip(row, col)) for col in other_cols]
            for row in self.rows
        )

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Return the matrix-vector product M·v."""
        if len(vector) != self.ncols:
            raise DimensionError(
                f"Vector of length {len(vector)} does not fit a {self.shape} matrix"
            )
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.rows)

    def to_sympy(self) -> Matrix:
        return Matrix(self.rows)


@dataclass(frozen=True)
class RatMatrix:
    """Immutable rational matrix; ``Fraction`` keeps entries in lowest terms."""

    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise DimensionError("Matrix must have at least one row and one column")
        for row in self.rows:
            for entry in row:
                if not isinstance(entry, Fraction):
                    raise TypeError(f"RatMatrix entries must be Fractions, got {entry!r}")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def transpose(self) -> "RatMatrix":
        return RatMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise DimensionError("Incompatible shapes for rational product")
        other_cols = list(zip(*other.rows))
        return RatMatrix(
            tuple(
                tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in other_cols)
                for row in self.rows
            )
        )


@dataclass(frozen=True)
class KernelSplit:
    """Basis of ker(x -> w·x) plus a complement u with w·u = gcd(w)."""

    kernel: Tuple[Tuple[int, ...], ...]
    complement: Tuple[int, ...]
    gcd: int


def det_exact(matrix: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if not matrix.is_square:
        raise DimensionError(f"Determinant needs a square matrix, got {matrix.shape}")
    return int(matrix.to_sympy().det(method="bareiss"))


def rank(matrix: IntMatrix) -> int:
    """Exact rank over the rationals."""
    return int(matrix.to_sympy().rank())


def _combine(left: List[int], right: List[int], x: int, y: int, p: int, q: int):
    # unimodular 2-column step: (l, r) -> (x*l + y*r, -q*l + p*r), det = x*p + y*q = 1
    new_left = [x * u + y * v for u, v in zip(left, right)]
    new_right = [-q * u + p * v for u, v in zip(left, right)]
    return new_left, new_right


def _gcd_step(a: int, b: int) -> Tuple[int, int, int, int, int]:
    x, y, g = (int(v) for v in igcdex(a, b))
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g, a // g, b // g


def hnf(matrix: IntMatrix) -> IntMatrix:
    """Column-style Hermite normal form.

    The columns of ``matrix`` must span a lattice of full rank (rank equal to
    the number of rows); extra columns are allowed and are eliminated.  The
    result H is square, lower-triangular, has a positive diagonal and every
    entry left of a diagonal entry lies in ``[0, diag)``.
    """
    n, k = matrix.shape
    if k < n:
        raise RankError(f"{k} columns cannot span a rank {n} lattice")

    cols = [list(col) for col in matrix.columns()]
    for i in range(n):
        for j in range(i + 1, k):
            b = cols[j][i]
            if b == 0:
                continue
            x, y, _, p, q = _gcd_step(cols[i][i], b)
            cols[i], cols[j] = _combine(cols[i], cols[j], x, y, p, q)

        pivot = cols[i][i]
        if pivot == 0:
            raise RankError(f"Matrix columns do not span full rank (row {i} has no pivot)")
        if pivot < 0:
            cols[i] = [-e for e in cols[i]]
            pivot = -pivot

        for j in range(i):
            factor = cols[j][i] // pivot
            if factor:
                cols[j] = [u - factor * v for u, v in zip(cols[j], cols[i])]

    return IntMatrix.from_columns(cols[:n])


def same_lattice(first: IntMatrix, second: IntMatrix) -> bool:
    """True iff both bases generate the same subgroup of Z^N."""
    if first.shape != second.shape:
        raise DimensionError(
            f"Cannot compare bases of shapes {first.shape} and {second.shape}"
        )
    return hnf(first) == hnf(second)


def ldlt(gram: IntMatrix) -> Tuple[RatMatrix, Tuple[Fraction, ...]]:
    """Exact factorization G = L·diag(D)·L^T with L unit lower-triangular.

    A non-positive pivot means G is not positive definite; this is the
    positive-definiteness test used throughout the package.
    """
    if not gram.is_square:
        raise DimensionError(f"LDL^T needs a square matrix, got {gram.shape}")
    if not gram.is_symmetric():
        raise NotSymmetricError("Gram matrix must be symmetric")

    n = gram.nrows
    lower = [[Fraction(0)] * n for _ in range(n)]
    pivots: List[Fraction] = []
    for j in range(n):
        pivot = Fraction(gram.rows[j][j]) - sum(
            (lower[j][k] * lower[j][k] * pivots[k] for k in range(j)), Fraction(0)
        )
        if pivot <= 0:
            raise NotPositiveDefiniteError(
                f"Matrix is not positive definite: pivot {pivot} at index {j}"
            )
        pivots.append(pivot)
        lower[j][j] = Fraction(1)
        for i in range(j + 1, n):
            lower[i][j] = (
                Fraction(gram.rows[i][j])
                - sum((lower[i][k] * lower[j][k] * pivots[k] for k in range(j)), Fraction(0))
            ) / pivot

    return RatMatrix(tuple(tuple(row) for row in lower)), tuple(pivots)


def integer_kernel(weights: Sequence[int]) -> KernelSplit:
    """Split Z^N along the linear form x -> w·x.

    A sequence of unimodular column steps turns w into (g, 0, ..., 0); the
    transformed identity then holds a vector u with w·u = g and N-1 vectors
    spanning the kernel.  Together they form a basis of Z^N.
    """
    n = len(weights)
    if n == 0:
        raise DimensionError("Linear form must have at least one weight")
    if not any(weights):
        raise RankError("Linear form is identically zero")

    cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    values = [operator.index(w) for w in weights]
    for j in range(1, n):
        b = values[j]
        if b == 0:
            continue
        x, y, g, p, q = _gcd_step(values[0], b)
        cols[0], cols[j] = _combine(cols[0], cols[j], x, y, p, q)
        values[0], values[j] = g, 0

    if values[0] < 0:
        cols[0] = [-e for e in cols[0]]
        values[0] = -values[0]

    return KernelSplit(
        kernel=tuple(tuple(col) for col in cols[1:]),
        complement=tuple(cols[0]),
        gcd=values[0],
    )


def is_primitive(columns: Sequence[Sequence[int]]) -> bool:
    """True iff the vectors extend to a basis of Z^N.

    That holds exactly when they are independent and every invariant factor
    of the matrix they form is 1.
    """
    if not columns:
        return True
    matrix = Matrix([list(col) for col in columns]).T
    factors = invariant_factors(matrix, domain=ZZ)
    return len(factors) == len(columns) and all(abs(int(f)) == 1 for f in factors)
