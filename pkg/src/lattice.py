"""Lattices given by integer Gram matrices, and their exact invariants."""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from .config import load_config
from .linalg import (
    DimensionError,
    IntMatrix,
    RankError,
    det_exact,
    hnf,
    is_primitive,
    ldlt,
    rank,
)
from .logger import get_logger
from .models import CoeffVector, ShortVectorReport, is_canonical_sign

logger = get_logger(__name__)


class EnumerationBudgetError(RuntimeError):
    """Raised when enumeration visits more nodes than its budget allows."""


class EnumerationError(ValueError):
    """Raised when an explicit search radius contains no nonzero vector."""


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric positive-definite integer Gram matrix."""

    matrix: IntMatrix

    def __post_init__(self):
        # ldlt rejects non-square, asymmetric and indefinite input
        ldlt(self.matrix)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "GramMatrix":
        return cls(IntMatrix.from_rows(rows))

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    @property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return self.matrix.rows

    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(self.dim))

    def transformed(self, basis: IntMatrix) -> "GramMatrix":
        """Gram matrix C^T G C of the sublattice with basis columns C."""
        return GramMatrix(basis.transpose() @ self.matrix @ basis)


def norm_sq(gram: GramMatrix, vector: Sequence[int]) -> int:
    """Squared norm v^T G v of a coefficient vector."""
    if len(vector) != gram.dim:
        raise DimensionError(
            f"Vector of length {len(vector)} does not fit a rank {gram.dim} lattice"
        )
    return sum(
        vector[i] * gram.rows[i][j] * vector[j]
        for i in range(gram.dim)
        if vector[i]
        for j in range(gram.dim)
    )


def volume_sq(gram: GramMatrix) -> int:
    """Squared covolume det(G)."""
    return det_exact(gram.matrix)


def index_of(sub_basis: IntMatrix, n: int) -> int:
    """Index of the sublattice spanned by the columns of sub_basis."""
    if sub_basis.shape != (n, n):
        raise DimensionError(f"Sublattice basis must be {n} x {n}, got {sub_basis.shape}")
    det = det_exact(sub_basis)
    if det == 0:
        raise RankError("Sublattice basis is rank deficient")
    return abs(det)


def _resolve_budget(budget: Optional[int]) -> int:
    return load_config().enumeration_budget if budget is None else budget


def _fincke_pohst(
    gram: GramMatrix, radius_sq: int, budget: int, shrink: bool
) -> List[Tuple[int, CoeffVector]]:
    """Depth-first enumeration of x with x^T G x <= bound over the exact LDL^T.

    With ``shrink`` the bound drops to every new shorter norm, so only the
    minimal vectors survive.  Returns (norm, vector) pairs in canonical sign.
    """
    n = gram.dim
    lower, pivots = ldlt(gram.matrix)
    mu = lower.rows
    bound = Fraction(radius_sq)
    found: List[Tuple[int, CoeffVector]] = []
    coords = [0] * n
    nodes = 0

    def visit(level: int, partial: Fraction) -> None:
        nonlocal bound, found, nodes
        nodes += 1
        if nodes > budget:
            raise EnumerationBudgetError(
                f"Enumeration exceeded its budget of {budget} nodes"
            )

        slack = bound - partial
        if slack < 0:
            return
        center = -sum(
            (mu[j][level] * coords[j] for j in range(level + 1, n)), Fraction(0)
        )
        spread = math.isqrt(math.floor(slack / pivots[level])) + 1
        for t in range(math.ceil(center - spread), math.floor(center + spread) + 1):
            total = partial + pivots[level] * (t - center) ** 2
            if total > bound:
                continue
            coords[level] = t
            if level > 0:
                visit(level - 1, total)
                continue
            if not any(coords):
                continue
            norm = int(total)
            if shrink and norm < bound:
                bound = Fraction(norm)
                found = [item for item in found if item[0] <= norm]
            vector = tuple(coords)
            if is_canonical_sign(vector):
                found.append((norm, vector))
        coords[level] = 0

    visit(n - 1, Fraction(0))
    logger.debug(f"Enumeration of rank {n} lattice visited {nodes} nodes")
    return sorted(found)


@lru_cache(maxsize=256)
def _within(gram: GramMatrix, radius_sq: int, budget: int) -> Tuple[Tuple[int, CoeffVector], ...]:
    return tuple(_fincke_pohst(gram, radius_sq, budget, shrink=False))


def enumerate_within(
    gram: GramMatrix, radius_sq: int, budget: Optional[int] = None
) -> Tuple[Tuple[int, CoeffVector], ...]:
    """Every nonzero vector of norm <= radius_sq, one per sign pair.

    Returns (norm, vector) pairs sorted by norm, then lexicographically.
    """
    return _within(gram, radius_sq, _resolve_budget(budget))


def enumerate_short(
    gram: GramMatrix, radius_sq: Optional[int] = None, budget: Optional[int] = None
) -> ShortVectorReport:
    """Exact minimum and all minimal vectors (up to sign) of the lattice.

    ``radius_sq=None`` starts from the smallest diagonal entry, which a basis
    vector always attains.
    """
    radius = min(gram.diagonal()) if radius_sq is None else radius_sq
    if radius <= 0:
        raise ValueError("Search radius must be positive")

    found = _fincke_pohst(gram, radius, _resolve_budget(budget), shrink=True)
    if not found:
        raise EnumerationError(f"No nonzero lattice vector has norm <= {radius}")

    lambda1 = found[0][0]
    minimal = tuple(vector for norm, vector in found if norm == lambda1)
    return ShortVectorReport(
        lambda1=lambda1, minimal_vectors=minimal, kissing_number=2 * len(minimal)
    )


def is_well_rounded(gram: GramMatrix, report: Optional[ShortVectorReport] = None) -> bool:
    """Minimal vectors span R^N."""
    report = report or enumerate_short(gram)
    if len(report.minimal_vectors) < gram.dim:
        return False
    return rank(IntMatrix.from_columns(report.minimal_vectors)) == gram.dim


def is_strongly_wr(gram: GramMatrix, report: Optional[ShortVectorReport] = None) -> bool:
    """Minimal vectors span the lattice over Z."""
    report = report or enumerate_short(gram)
    if not is_well_rounded(gram, report):
        return False
    span = hnf(IntMatrix.from_columns(report.minimal_vectors))
    return span == IntMatrix.identity(gram.dim)


def minimal_basis(
    gram: GramMatrix,
    report: Optional[ShortVectorReport] = None,
    budget: Optional[int] = None,
) -> Optional[Tuple[CoeffVector, ...]]:
    """First basis of minimal vectors in lexicographic depth-first order, if any.

    A minimal basis spans the lattice, so lattices that are not strongly
    well-rounded return None without searching.  Every primitivity test counts
    as one node against ``budget``.
    """
    report = report or enumerate_short(gram, budget=budget)
    if not is_strongly_wr(gram, report):
        return None

    limit = _resolve_budget(budget)
    candidates = sorted(report.minimal_vectors)
    n = gram.dim
    nodes = 0

    def extend(chosen: List[CoeffVector], start: int) -> Optional[List[CoeffVector]]:
        nonlocal nodes
        if len(chosen) == n:
            return chosen
        for idx in range(start, len(candidates)):
            if len(candidates) - idx < n - len(chosen):
                break
            nodes += 1
            if nodes > limit:
                raise EnumerationBudgetError(
                    f"Minimal basis search exceeded its budget of {limit} nodes"
                )
            trial = chosen + [candidates[idx]]
            # independent and primitive partial sets are exactly the extendable ones
            if is_primitive(trial):
                result = extend(trial, idx + 1)
                if result is not None:
                    return result
        return None

    basis = extend([], 0)
    if basis is None:
        logger.debug(f"No minimal basis among {len(candidates)} minimal vectors")
        return None
    return tuple(basis)


def has_minimal_basis(
    gram: GramMatrix,
    report: Optional[ShortVectorReport] = None,
    budget: Optional[int] = None,
) -> bool:
    """Some N minimal vectors form a basis of the lattice."""
    return minimal_basis(gram, report, budget) is not None


def center_density_sq(gram: GramMatrix, report: Optional[ShortVectorReport] = None) -> Fraction:
    """Squared center density lambda1^N / (4^N det G)."""
    report = report or enumerate_short(gram)
    n = gram.dim
    return Fraction(report.lambda1**n, 4**n * volume_sq(gram))
