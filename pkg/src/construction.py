"""Sublattices cut out by an integer linear form T on a lattice.

For a form T, a vector v1 with T(v1) != 0 and integers r, s, the map
Phi(x) = r*x + s*T(x)*v1 satisfies T(Phi(x)) = m*T(x) with m = r + s*T(v1).
Its image is a full sublattice of index |m|*|r|^(N-1), contained in the
congruence lattice {x : T(x) = 0 mod m*n_T}, and equal to it exactly when
r = +-1.
"""

from typing import Sequence

from .linalg import DimensionError, IntMatrix, hnf, integer_kernel, same_lattice
from .logger import get_logger
from .models import CoeffVector, ConstructionParams, LinearForm

logger = get_logger(__name__)


class DegenerateMapError(ValueError):
    """Raised when m = 0, so Phi is not injective."""


class PreconditionError(ValueError):
    """Raised when an identity is checked outside its hypotheses."""


def apply_phi(form: LinearForm, params: ConstructionParams, x: Sequence[int]) -> CoeffVector:
    """Image r*x + s*T(x)*v1 of a coefficient vector."""
    if len(x) != form.dim or len(params.v1) != form.dim:
        raise DimensionError(
            f"Vector of length {len(x)} does not fit a form on Z^{form.dim}"
        )
    t_x = form(x)
    return tuple(params.r * xi + params.s * t_x * vi for xi, vi in zip(x, params.v1))


def phi_basis_matrix(form: LinearForm, params: ConstructionParams, n: int) -> IntMatrix:
    """Columns Phi(e_1), ..., Phi(e_N): a basis of the image sublattice."""
    if form.dim != n:
        raise DimensionError(f"Form lives on Z^{form.dim}, not Z^{n}")
    if params.checked_m(form) == 0:
        raise DegenerateMapError("m = r + s*T(v1) is zero; Phi is not injective")

    columns = [
        apply_phi(form, params, [1 if i == j else 0 for i in range(n)]) for j in range(n)
    ]
    return IntMatrix.from_columns(columns)


def predicted_index(params: ConstructionParams, n: int) -> int:
    """|m| * |r|^(N-1)."""
    return abs(params.m) * abs(params.r) ** (n - 1)


def congruence_lattice_basis(form: LinearForm, m: int, n: int) -> IntMatrix:
    """HNF basis of {x : T(x) = 0 mod m*n_T}, a sublattice of index m.

    Built from a basis of ker T and a complement u with T(u) = n_T, with u
    replaced by m*u.
    """
    if form.dim != n:
        raise DimensionError(f"Form lives on Z^{form.dim}, not Z^{n}")
    if m < 1:
        raise ValueError(f"Congruence modulus must be positive, got m={m}")

    split = integer_kernel(form.weights)
    columns = list(split.kernel) + [tuple(m * c for c in split.complement)]
    return hnf(IntMatrix.from_columns(columns))


def phi_equals_congruence(form: LinearForm, params: ConstructionParams) -> bool:
    """Whether the Phi-image coincides with the congruence lattice of modulus |m|."""
    n = form.dim
    image = phi_basis_matrix(form, params, n)
    return same_lattice(image, congruence_lattice_basis(form, abs(params.m), n))


def check_cong1_equality(form: LinearForm, params: ConstructionParams) -> bool:
    """For r = +-1 and a surjective form, the Phi-image is the congruence lattice."""
    if abs(params.r) != 1:
        raise PreconditionError(f"Requires r = +-1, got r={params.r}")
    if form.cokernel_size != 1:
        raise PreconditionError(
            f"Requires a surjective form (n_T = 1), got n_T={form.cokernel_size}"
        )
    modulus = abs(form(params.v1))
    if params.checked_m(form) % modulus not in (1 % modulus, -1 % modulus):
        raise PreconditionError(f"Requires m = +-1 mod |T(v1)| = {modulus}")

    result = phi_equals_congruence(form, params)
    logger.debug(f"Congruence comparison for r={params.r}, s={params.s}: {result}")
    return result
