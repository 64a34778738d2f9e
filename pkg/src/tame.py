"""Tame lattices and the minimal-basis theorem for their Phi-sublattices.

A tame lattice of rank N has a basis e_1..e_N with Gram a on the diagonal
and -h elsewhere, a = 1 + (N-1)h, v1 = e_1 + ... + e_N and T(x) = <x, v1>
equal to the coordinate sum.  For 0 < |r| < N, s and m = r + sN the image
of Phi(x) = r*x + s*T(x)*v1 carries the form f(x) = A|x|^2 + B*T(x)^2 with
A = r^2 and B = (m^2 - r^2)/N, and when

    (Na - 1)/(N^2 - 1) <= (m/r)^2 <= (aN - 1)(N + 1)/(N - 1)

its minimum is aA + B, attained by every Phi(e_i).
"""

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .construction import phi_basis_matrix
from .linalg import DimensionError, IntMatrix, det_exact
from .lattice import GramMatrix, center_density_sq, enumerate_short, index_of, norm_sq
from .logger import get_logger
from .models import (
    CoeffVector,
    ConstructionParams,
    LinearForm,
    RSPair,
    TameParams,
    VerificationReport,
    tame_gram_rows,
)

logger = get_logger(__name__)


class NotApplicableError(ValueError):
    """Raised when a closed form is requested outside its hypotheses."""


class TheoremFalsificationError(AssertionError):
    """A proven identity failed on concrete data; this signals an implementation bug."""


class MainBounds(NamedTuple):
    holds: bool
    lower: Fraction
    upper: Fraction
    value: Fraction


def tame_gram(params: TameParams) -> GramMatrix:
    """Gram matrix with a on the diagonal and -h off it."""
    return GramMatrix.from_rows(tame_gram_rows(params.N, params.a, params.h))


def trace_T(params: TameParams, x: Sequence[int]) -> int:
    """T(x) = <x, v1>, the coordinate sum in the Lagrangian basis."""
    if len(x) != params.N:
        raise DimensionError(f"Vector of length {len(x)} does not fit rank {params.N}")
    return sum(x)


def f_value(params: TameParams, rs: RSPair, x: Sequence[int]) -> int:
    """f(x) = A|x|^2 + B*T(x)^2, the squared norm of Phi(x)."""
    t_x = trace_T(params, x)
    return rs.A * norm_sq(tame_gram(params), x) + rs.B * t_x * t_x


def phi_params(params: TameParams, rs: RSPair) -> ConstructionParams:
    return ConstructionParams.build(params.form, rs.r, rs.s, params.v1)


def phi_basis(params: TameParams, rs: RSPair) -> IntMatrix:
    """Columns Phi(e_i) = r*e_i + s*v1 in Lagrangian coordinates."""
    return phi_basis_matrix(params.form, phi_params(params, rs), params.N)


def sublattice_gram(params: TameParams, rs: RSPair) -> GramMatrix:
    """Gram matrix of the basis Phi(e_1), ..., Phi(e_N) in closed form."""
    if rs.N != params.N:
        raise DimensionError(f"(r, s) pair is for N={rs.N}, lattice has N={params.N}")
    if rs.m == 0:
        raise ValueError("m = 0 gives a degenerate map")

    diagonal = params.a * rs.A + rs.B
    off_diagonal = -rs.A * params.h + rs.B
    n = params.N
    return GramMatrix.from_rows(
        [diagonal if i == j else off_diagonal for j in range(n)] for i in range(n)
    )


def kernel_lattice_gram(params: TameParams) -> GramMatrix:
    """Gram of w_i = e_i - e_{i+1}, a basis of ker T: (a+h) times the A_{N-1} Gram."""
    scale = params.a + params.h
    n = params.N - 1
    return GramMatrix.from_rows(
        [
            2 * scale if i == j else (-scale if abs(i - j) == 1 else 0)
            for j in range(n)
        ]
        for i in range(n)
    )


def subset_sum_vector(n: int, k: int) -> CoeffVector:
    """E_I for I = {1, ..., k}; its norm depends only on k."""
    return tuple(1 if i < k else 0 for i in range(n))


def sd_minimizer(params: TameParams, d: int) -> CoeffVector:
    """E_I + c*v1 with k = d mod N, c = d div N: a norm minimizer on S_d."""
    if d < 1:
        raise ValueError(f"d must be positive (S_-d = -S_d), got d={d}")
    c, k = divmod(d, params.N)
    return tuple(c + e for e in subset_sum_vector(params.N, k))


def min_over_Sd(params: TameParams, rs: RSPair, d: int) -> int:
    """Closed-form minimum of f over S_d = {x : T(x) = d}, d >= 1."""
    if d < 1:
        raise ValueError(f"d must be positive (S_-d = -S_d), got d={d}")

    n, h = params.N, params.h
    c, k = divmod(d, n)
    f_subset = rs.A * k * (1 + (n - k) * h) + rs.B * k * k
    f_v1 = n * (rs.A + n * rs.B)
    return f_subset + c * c * f_v1 + 2 * c * k * (rs.A + n * rs.B)


def check_main_bounds(params: TameParams, rs: RSPair) -> MainBounds:
    """Exact comparison of (m/r)^2 with the two bounds of the minimal-basis theorem."""
    n, a = params.N, params.a
    lower = Fraction(n * a - 1, n * n - 1)
    upper = Fraction((a * n - 1) * (n + 1), n - 1)
    value = Fraction(rs.m, rs.r) ** 2
    return MainBounds(lower <= value <= upper, lower, upper, value)


def predicted_lambda1(params: TameParams, rs: RSPair) -> int:
    """min(2A(a+h), aA+B), valid whenever aA+B <= N(A+NB)."""
    first_shell = params.a * rs.A + rs.B
    if first_shell > params.N * (rs.A + params.N * rs.B):
        raise NotApplicableError(
            f"aA+B = {first_shell} exceeds f(v1); only enumeration decides the minimum"
        )
    return min(2 * rs.A * (params.a + params.h), first_shell)


def verify_main_theorem(
    params: TameParams, rs: RSPair, budget: Optional[int] = None
) -> VerificationReport:
    """Check index, minimum and minimal basis of the Phi-sublattice against enumeration.

    Outside the bounds the enumerated truth is reported without asserting
    the theorem.  Inside them any mismatch raises TheoremFalsificationError.
    """
    n = params.N
    bounds = check_main_bounds(params, rs)
    try:
        predicted: Optional[int] = predicted_lambda1(params, rs)
    except NotApplicableError:
        predicted = None

    basis = phi_basis(params, rs)
    index_predicted = abs(rs.m) * abs(rs.r) ** (n - 1)
    index_computed = index_of(basis, n)
    if index_computed != index_predicted:
        raise TheoremFalsificationError(
            f"Index {index_computed} differs from |m||r|^(N-1) = {index_predicted}"
        )

    sub = sublattice_gram(params, rs)
    if sub != tame_gram(params).transformed(basis):
        raise TheoremFalsificationError("Closed-form sublattice Gram differs from C^T G C")

    report = enumerate_short(sub, budget=budget)
    norms = sub.diagonal()
    basis_is_minimal = all(norm == report.lambda1 for norm in norms)

    # Phi(e_i) is the i-th unit vector in sublattice coordinates
    minimal = set(report.minimal_vectors)
    units = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    found = [u for u in units if u in minimal]
    basis_det = det_exact(IntMatrix.from_columns(found)) if len(found) == n else 0

    flags: Tuple[str, ...] = ("negative-m",) if rs.m < 0 else ()
    result = VerificationReport(
        params=params,
        rs=rs,
        bounds_check=bounds.holds,
        lower_bound=bounds.lower,
        upper_bound=bounds.upper,
        ratio=bounds.value,
        predicted_lambda1=predicted,
        enumerated_lambda1=report.lambda1,
        kissing_number=report.kissing_number,
        index_predicted=index_predicted,
        index_computed=index_computed,
        basis_vector_norms=norms,
        basis_is_minimal=basis_is_minimal,
        basis_det_in_sublattice=basis_det,
        center_density_sq=center_density_sq(sub, report),
        flags=flags,
    )

    if predicted is not None and predicted != report.lambda1:
        logger.error(f"Predicted minimum {predicted} but enumerated {report.lambda1}")
        raise TheoremFalsificationError(
            f"N={n}, h={params.h}, r={rs.r}, s={rs.s}: predicted minimum {predicted}, "
            f"enumerated {report.lambda1}"
        )

    if bounds.holds and not (basis_is_minimal and abs(basis_det) == 1):
        logger.error(f"Basis norms {norms} are not all minimal ({report.lambda1})")
        raise TheoremFalsificationError(
            f"N={n}, h={params.h}, r={rs.r}, s={rs.s}: images of the basis are not a "
            "basis of minimal vectors"
        )

    logger.info(
        f"N={n}, h={params.h}, r={rs.r}, s={rs.s} (m={rs.m}): lambda1={report.lambda1}, "
        f"index={index_computed}, bounds {'hold' if bounds.holds else 'fail'}"
    )
    return result


def _verify_task(task: Tuple[TameParams, RSPair, Optional[int]]) -> VerificationReport:
    params, rs, budget = task
    return verify_main_theorem(params, rs, budget)


def verify_many(
    params: TameParams,
    pairs: Iterable[RSPair],
    workers: int = 1,
    budget: Optional[int] = None,
) -> List[VerificationReport]:
    """Verify several (r, s) pairs, optionally in worker processes; ordered by m."""
    tasks = [(params, rs, budget) for rs in pairs]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify_task, tasks))
    else:
        reports = [_verify_task(task) for task in tasks]
    return sorted(reports, key=lambda report: (report.rs.m, report.rs.r))


def cubic_phi_basis(
    N: int, r: int, s: int, v1: Optional[Sequence[int]] = None
) -> IntMatrix:
    """Phi-image basis on Z^N with T the coordinate sum; v1 defaults to all-ones."""
    form = LinearForm((1,) * N)
    params = ConstructionParams.build(form, r, s, (1,) * N if v1 is None else v1)
    return phi_basis_matrix(form, params, N)


def cubic_sublattice(
    N: int, r: int, s: int, v1: Optional[Sequence[int]] = None
) -> GramMatrix:
    """Gram matrix C^T C of the Phi-image inside the cubic lattice Z^N."""
    basis = cubic_phi_basis(N, r, s, v1)
    return GramMatrix(basis.transpose() @ basis)
