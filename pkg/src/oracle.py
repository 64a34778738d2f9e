"""Brute-force cross-checks for the enumerator and the closed-form minima.

These scans are exponential in the dimension and exist to audit the fast
paths.  They compute norms with their own loops and never call the LDL^T
enumerator except to certify that a box was large enough.
"""

import itertools
import math
from typing import List, NamedTuple, Sequence, Tuple

from sympy import Matrix

from .config import load_config
from .lattice import GramMatrix, enumerate_within
from .logger import get_logger
from .models import (
    BoxSpec,
    CoeffVector,
    RSPair,
    TameParams,
    is_canonical_sign,
    tame_gram_rows,
)

logger = get_logger(__name__)


class BoxCeilingError(RuntimeError):
    """Raised when a scan would visit more points than the configured ceiling."""


class OracleInconsistencyError(AssertionError):
    """Raised when a box scan is contradicted by its certificate."""


class NoWitnessError(ValueError):
    """Raised when no pair of coordinates differs by at least 2."""


class OracleResult(NamedTuple):
    minimum: int
    argmins: Tuple[CoeffVector, ...]


def _check_ceiling(points: int) -> None:
    ceiling = load_config().box_ceiling
    if points > ceiling:
        raise BoxCeilingError(f"Scan of {points} points exceeds the ceiling of {ceiling}")


def coordinate_box(gram: GramMatrix, radius_sq: int) -> BoxSpec:
    """Smallest box holding every vector of norm <= radius_sq.

    |x_i|^2 <= radius_sq * (G^-1)_ii for such vectors, with the inverse
    computed exactly.
    """
    inverse = Matrix(gram.rows).inv()
    bound = max(
        math.isqrt(radius_sq * int(inverse[i, i].p) // int(inverse[i, i].q))
        for i in range(gram.dim)
    )
    return BoxSpec(dim=gram.dim, bound=max(bound, 1))


def _quadratic_form(rows: Sequence[Sequence[int]], x: Sequence[int]) -> int:
    total = 0
    for i, xi in enumerate(x):
        if xi:
            row = rows[i]
            total += xi * sum(row[j] * xj for j, xj in enumerate(x))
    return total


def naive_svp(gram: GramMatrix, box: BoxSpec) -> OracleResult:
    """Minimum over every nonzero vector in the box, with all canonical-sign argmins."""
    if box.dim != gram.dim:
        raise ValueError(f"Box of dimension {box.dim} does not fit rank {gram.dim}")
    _check_ceiling(box.size)

    best = None
    argmins: List[CoeffVector] = []
    span = range(-box.bound, box.bound + 1)
    for x in itertools.product(span, repeat=gram.dim):
        if not is_canonical_sign(x):
            continue
        norm = _quadratic_form(gram.rows, x)
        if best is None or norm < best:
            best, argmins = norm, [x]
        elif norm == best:
            argmins.append(x)

    logger.debug(f"Box scan of {box.size} points found minimum {best}")
    return OracleResult(best, tuple(sorted(argmins)))


def brute_min_Sd(
    params: TameParams, rs: RSPair, d: int, box: BoxSpec
) -> OracleResult:
    """Minimum of f over the box part of S_d, certified against all of S_d.

    The scan fixes N-1 coordinates and solves T(x) = d for the last.  Since
    f = A*|x|^2 + B*d^2 on S_d, a smaller value anywhere in S_d would be a
    tame-lattice vector of norm below (min - B*d^2)/A; enumerating that ball
    rules it out.
    """
    n, h = params.N, params.h
    if d < 1:
        raise ValueError(f"d must be positive, got d={d}")
    if box.dim != n:
        raise ValueError(f"Box of dimension {box.dim} does not fit rank {n}")
    c, k = divmod(d, n)
    needed = c + 1 if k else c
    if box.bound < needed:
        raise ValueError(f"Box bound {box.bound} cannot hold E_I + {c}*v1 (needs {needed})")
    _check_ceiling((2 * box.bound + 1) ** (n - 1))

    def f(x: Sequence[int]) -> int:
        squares = sum(xi * xi for xi in x)
        return rs.A * ((params.a + h) * squares - h * d * d) + rs.B * d * d

    best = None
    argmins: List[CoeffVector] = []
    span = range(-box.bound, box.bound + 1)
    for head in itertools.product(span, repeat=n - 1):
        last = d - sum(head)
        if abs(last) > box.bound:
            continue
        x = head + (last,)
        value = f(x)
        if best is None or value < best:
            best, argmins = value, [x]
        elif value == best:
            argmins.append(x)

    radius = (best - rs.B * d * d) // rs.A
    parent = GramMatrix.from_rows(tame_gram_rows(n, params.a, h))
    for _, vector in enumerate_within(parent, radius):
        if abs(sum(vector)) == d:
            signed = vector if sum(vector) == d else tuple(-v for v in vector)
            if f(signed) < best:
                raise OracleInconsistencyError(
                    f"{signed} in S_{d} lies outside the box and beats its minimum {best}"
                )

    return OracleResult(best, tuple(sorted(argmins)))


def restar_witness(params: TameParams, alpha: Sequence[int]) -> CoeffVector:
    """beta = alpha + e_j - e_i for the first largest alpha_i and first smallest alpha_j.

    beta keeps T and its norm drops by 2(a+h)(alpha_i - alpha_j - 1).
    """
    if len(alpha) != params.N:
        raise ValueError(f"Vector of length {len(alpha)} does not fit rank {params.N}")
    i = max(range(len(alpha)), key=lambda idx: (alpha[idx], -idx))
    j = min(range(len(alpha)), key=lambda idx: (alpha[idx], idx))
    if alpha[i] - alpha[j] < 2:
        raise NoWitnessError(f"All coordinates of {tuple(alpha)} are within 1 of each other")

    beta = list(alpha)
    beta[i] -= 1
    beta[j] += 1
    return tuple(beta)
