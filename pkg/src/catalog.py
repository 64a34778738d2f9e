"""Named lattice families: tame number-field trace forms and reference root lattices.

Number fields enter only through their Gram data (N, a, h) and conductor n,
with a = (n(N-1)+1)/N and h = (n-1)/N.  Whether a field with the given
conductor actually exists is the caller's assertion; only the congruence
and primality conditions are checked here.
"""

import math
from typing import List, Optional, Union

from sympy import isprime

from .linalg import IntMatrix
from .lattice import GramMatrix
from .logger import get_logger
from .models import FieldFamilyEntry, RSPair, TameParams
from .tame import check_main_bounds

logger = get_logger(__name__)

EXAMPLE3_LABEL = "Q[x]/(x^4-x^3-24x^2+4x+16), conductor 65"

REFERENCE_NAMES = ("cubic", "A", "D")


class InvalidConductorError(ValueError):
    """Raised when a conductor fails the divisibility or primality conditions."""


class UnknownReferenceError(ValueError):
    """Raised for an unknown reference lattice name or an unusable dimension."""


def _family_entry(label: str, N: int, n: int, provenance: str) -> FieldFamilyEntry:
    if (n - 1) % N:
        raise InvalidConductorError(
            f"{label}: conductor {n} is not congruent to 1 mod {N}"
        )
    return FieldFamilyEntry(
        label=label,
        N=N,
        n=n,
        a=(n * (N - 1) + 1) // N,
        h=(n - 1) // N,
        provenance=provenance,
    )


def conner_perlis(p: int, n: int) -> FieldFamilyEntry:
    """Cyclic field of odd prime degree p and conductor n = 1 mod p."""
    if p == 2 or not isprime(p):
        raise InvalidConductorError(f"Degree p={p} must be an odd prime")
    if n < 2:
        raise InvalidConductorError(f"Conductor must be at least 2, got n={n}")
    return _family_entry(
        f"Conner-Perlis p={p}, conductor {n}", p, n, "cyclic field of odd prime degree"
    )


def prime_conductor_abelian(N: int, n: int) -> FieldFamilyEntry:
    """Degree-N subfield of the n-th cyclotomic field, n prime and n = 1 mod N."""
    if N < 2:
        raise InvalidConductorError(f"Degree must be at least 2, got N={N}")
    if not isprime(n):
        raise InvalidConductorError(f"Conductor n={n} must be prime")
    return _family_entry(
        f"prime conductor {n}, degree {N}", N, n, "abelian field of prime conductor"
    )


def example3_entry() -> FieldFamilyEntry:
    return FieldFamilyEntry(
        label=EXAMPLE3_LABEL,
        N=4,
        n=65,
        a=49,
        h=16,
        provenance="quartic field of composite conductor 65",
    )


def named_entries() -> List[FieldFamilyEntry]:
    """The built-in catalog, in display order."""
    return [
        conner_perlis(3, 7),
        conner_perlis(5, 11),
        prime_conductor_abelian(2, 5),
        prime_conductor_abelian(6, 13),
        example3_entry(),
    ]


def _tame_params(source: Union[FieldFamilyEntry, TameParams]) -> TameParams:
    if isinstance(source, FieldFamilyEntry):
        return source.tame_params
    return source


def rs_for_m(params: TameParams, m: int, r_abs: int = 1) -> Optional[RSPair]:
    """The pair (r, s) with |r| = r_abs and r + sN = m, if one exists (r > 0 preferred)."""
    for r in (r_abs, -r_abs):
        if (m - r) % params.N == 0:
            return RSPair(N=params.N, r=r, s=(m - r) // params.N)
    return None


def admissible_m_values(
    source: Union[FieldFamilyEntry, TameParams], r_abs: int = 1
) -> List[int]:
    """Every m >= 2 with m = +-r_abs mod N whose (m/r)^2 lies within the exact bounds."""
    params = _tame_params(source)
    if not 0 < r_abs < params.N:
        raise ValueError(f"Need 0 < |r| < N = {params.N}, got {r_abs}")

    unit_rs = RSPair(N=params.N, r=r_abs, s=0)
    upper = check_main_bounds(params, unit_rs).upper
    m_max = math.isqrt(math.floor(upper * r_abs * r_abs))

    values = []
    for m in range(2, m_max + 1):
        rs = rs_for_m(params, m, r_abs)
        if rs is not None and check_main_bounds(params, rs).holds:
            values.append(m)

    logger.debug(f"N={params.N}, h={params.h}, |r|={r_abs}: admissible m = {values}")
    return values


def _d_basis_columns(n: int) -> List[List[int]]:
    # e1 - e2, then e_i + e_{i+1}
    columns = [[1 if i == 0 else (-1 if i == 1 else 0) for i in range(n)]]
    for k in range(n - 1):
        columns.append([1 if i in (k, k + 1) else 0 for i in range(n)])
    return columns


def reference_basis(name: str, n: int) -> IntMatrix:
    """Pinned basis in Z^n of the cubic lattice or of D_n."""
    if name == "cubic":
        if n < 1:
            raise UnknownReferenceError(f"Cubic lattice needs n >= 1, got {n}")
        return IntMatrix.identity(n)
    if name == "D":
        if n < 2:
            raise UnknownReferenceError(f"D_n needs n >= 2, got {n}")
        return IntMatrix.from_columns(_d_basis_columns(n))
    raise UnknownReferenceError(f"No pinned integer basis for reference lattice {name!r}")


def reference_gram(name: str, n: int) -> GramMatrix:
    """Gram matrix of Z^n, A_n or D_n."""
    if name not in REFERENCE_NAMES:
        raise UnknownReferenceError(
            f"Unknown reference lattice {name!r}; expected one of {', '.join(REFERENCE_NAMES)}"
        )
    if name == "A":
        if n < 1:
            raise UnknownReferenceError(f"A_n needs n >= 1, got {n}")
        return GramMatrix.from_rows(
            [2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)]
            for i in range(n)
        )

    basis = reference_basis(name, n)
    return GramMatrix(basis.transpose() @ basis)


def wr_not_swr_gram(N: int, k: int) -> GramMatrix:
    """Z^N together with (1/k, ..., 1/k), scaled by k^2, for N > k^2 > 1.

    The basis is w = (1/k, ..., 1/k), e_2, ..., e_N; the minimal vectors are
    the +-e_i, which span Z^N, a sublattice of index k.
    """
    if not N > k * k > 1:
        raise ValueError(f"Need N > k^2 > 1, got N={N}, k={k}")
    return GramMatrix.from_rows(
        [
            N if i == j == 0 else (k if 0 in (i, j) else (k * k if i == j else 0))
            for j in range(N)
        ]
        for i in range(N)
    )
