"""Data models for the tame lattice toolkit."""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

from .linalg import IntMatrix, ldlt

# Integer coordinates of a lattice element relative to a fixed basis.
CoeffVector = Tuple[int, ...]

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_NOT_APPLICABLE = "not-applicable"
STATUS_BUDGET_EXCEEDED = "budget-exceeded"
STATUSES = (STATUS_PASS, STATUS_FAIL, STATUS_NOT_APPLICABLE, STATUS_BUDGET_EXCEEDED)

SCHEMA_VERSION = "1"


def coeff_vector(values: Sequence[int]) -> CoeffVector:
    """Normalize a sequence of integers into a CoeffVector."""
    return tuple(int(v) for v in values)


def is_canonical_sign(vector: CoeffVector) -> bool:
    """True when the first nonzero coordinate is positive."""
    for coord in vector:
        if coord:
            return coord > 0
    return False


@dataclass(frozen=True)
class ShortVectorReport:
    """Exact minimum and minimal vectors of a lattice."""

    lambda1: int
    minimal_vectors: Tuple[CoeffVector, ...]
    kissing_number: int

    def __post_init__(self):
        """Check the sign convention and the doubled kissing number."""
        if self.lambda1 <= 0:
            raise ValueError("Minimum must be positive")

        if self.kissing_number != 2 * len(self.minimal_vectors):
            raise ValueError("Kissing number must count both signs of each vector")

        for vector in self.minimal_vectors:
            if not is_canonical_sign(vector):
                raise ValueError(f"Minimal vector {vector} is not in canonical sign")

    def to_dict(self) -> Dict[str, Any]:
        """Convert the report to a dictionary of decimal strings."""
        return {
            "lambda1": str(self.lambda1),
            "kissing_number": str(self.kissing_number),
            "minimal_vectors": [[str(c) for c in v] for v in self.minimal_vectors],
        }


@dataclass(frozen=True)
class LinearForm:
    """Integer linear form T(x) = sum(w_i * x_i) in lattice coordinates."""

    weights: CoeffVector

    def __post_init__(self):
        if not any(self.weights):
            raise ValueError("Linear form must be non-trivial")

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def cokernel_size(self) -> int:
        """n_T = [Z : T(L)], the gcd of the weights."""
        return math.gcd(*self.weights)

    def __call__(self, x: Sequence[int]) -> int:
        if len(x) != len(self.weights):
            raise ValueError(
                f"Vector of length {len(x)} does not fit a form on Z^{self.dim}"
            )
        return sum(w * c for w, c in zip(self.weights, x))


@dataclass(frozen=True)
class ConstructionParams:
    """Parameters (r, s, v1) of the map x -> r*x + s*T(x)*v1, with m = r + s*T(v1)."""

    r: int
    s: int
    v1: CoeffVector
    m: int

    def __post_init__(self):
        if self.r == 0:
            raise ValueError("r must be nonzero")

    @classmethod
    def build(cls, form: LinearForm, r: int, s: int, v1: Sequence[int]) -> "ConstructionParams":
        """Create parameters, checking the hypotheses |r| < |T(v1)| and T(v1) != 0."""
        v1 = coeff_vector(v1)
        t_v1 = form(v1)
        if t_v1 == 0:
            raise ValueError("v1 must lie outside the kernel of T")
        if r == 0 or abs(r) >= abs(t_v1):
            raise ValueError(f"Need 0 < |r| < |T(v1)| = {abs(t_v1)}, got r={r}")
        return cls(r=r, s=s, v1=v1, m=r + s * t_v1)

    def checked_m(self, form: LinearForm) -> int:
        """Recompute m from the form and confirm the stored value."""
        m = self.r + self.s * form(self.v1)
        if m != self.m:
            raise ValueError(f"Stored m={self.m} disagrees with r + s*T(v1) = {m}")
        return m


def tame_gram_rows(n: int, a: int, h: int) -> Tuple[Tuple[int, ...], ...]:
    """Rows of the N x N matrix with a on the diagonal and -h elsewhere."""
    return tuple(tuple(a if i == j else -h for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class TameParams:
    """A tame lattice of rank N: Gram a on the diagonal, -h off it, a = 1 + (N-1)h."""

    N: int
    h: int
    a: int = field(init=False)

    def __post_init__(self):
        """Derive a and require a positive-definite Gram matrix."""
        if self.N < 2:
            raise ValueError(f"Tame lattices need N >= 2, got N={self.N}")

        object.__setattr__(self, "a", 1 + (self.N - 1) * self.h)
        # raises NotPositiveDefiniteError for h < 0
        ldlt(IntMatrix.from_rows(tame_gram_rows(self.N, self.a, self.h)))

    @property
    def v1(self) -> CoeffVector:
        return (1,) * self.N

    @property
    def form(self) -> LinearForm:
        return LinearForm((1,) * self.N)

    def to_dict(self) -> Dict[str, str]:
        return {"N": str(self.N), "h": str(self.h), "a": str(self.a)}


@dataclass(frozen=True)
class RSPair:
    """Admissible (r, s) for a rank-N tame lattice with A = r^2, B = (m^2 - r^2)/N."""

    N: int
    r: int
    s: int
    m: int = field(init=False)
    A: int = field(init=False)
    B: int = field(init=False)

    def __post_init__(self):
        if not 0 < abs(self.r) < self.N:
            raise ValueError(f"Need 0 < |r| < N = {self.N}, got r={self.r}")

        m = self.r + self.s * self.N
        # m^2 - r^2 = sN(2r + sN) is always divisible by N
        quotient, remainder = divmod(m * m - self.r * self.r, self.N)
        if remainder:
            raise ValueError("m^2 - r^2 must be divisible by N")

        object.__setattr__(self, "m", m)
        object.__setattr__(self, "A", self.r * self.r)
        object.__setattr__(self, "B", quotient)

    @classmethod
    def for_params(cls, params: TameParams, r: int, s: int) -> "RSPair":
        return cls(N=params.N, r=r, s=s)

    def to_dict(self) -> Dict[str, str]:
        return {"r": str(self.r), "s": str(self.s), "m": str(self.m)}


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking the minimal-basis theorem on one sublattice."""

    params: TameParams
    rs: RSPair
    bounds_check: bool
    lower_bound: Fraction
    upper_bound: Fraction
    ratio: Fraction
    predicted_lambda1: Optional[int]
    enumerated_lambda1: int
    kissing_number: int
    index_predicted: int
    index_computed: int
    basis_vector_norms: Tuple[int, ...]
    basis_is_minimal: bool
    basis_det_in_sublattice: int
    center_density_sq: Fraction
    flags: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        """Convert the report to a dictionary of decimal strings."""
        return {
            "index_predicted": str(self.index_predicted),
            "index_computed": str(self.index_computed),
            "lambda1_predicted": (
                None if self.predicted_lambda1 is None else str(self.predicted_lambda1)
            ),
            "lambda1_enumerated": str(self.enumerated_lambda1),
            "bounds": {
                "holds": self.bounds_check,
                "lower": _fraction_dict(self.lower_bound),
                "upper": _fraction_dict(self.upper_bound),
                "value": _fraction_dict(self.ratio),
            },
            "kissing_number": str(self.kissing_number),
            "center_density_sq": _fraction_dict(self.center_density_sq),
            "basis_vector_norms": [str(n) for n in self.basis_vector_norms],
            "basis_is_minimal": self.basis_is_minimal,
            "basis_det_in_sublattice": str(self.basis_det_in_sublattice),
            "flags": list(self.flags),
        }


def _fraction_dict(value: Fraction) -> Dict[str, str]:
    return {"numerator": str(value.numerator), "denominator": str(value.denominator)}


@dataclass(frozen=True)
class FieldFamilyEntry:
    """Gram data (N, a, h) of a number field with a Lagrangian integral basis."""

    label: str
    N: int
    n: int
    a: int
    h: int
    provenance: str

    def __post_init__(self):
        if self.a * self.N != self.n * (self.N - 1) + 1 or self.h * self.N != self.n - 1:
            raise ValueError(
                f"{self.label}: a, h must equal (n(N-1)+1)/N and (n-1)/N"
            )

        if self.a - (self.N - 1) * self.h != 1:
            raise ValueError(f"{self.label}: a - (N-1)h must equal 1")

    @property
    def tame_params(self) -> TameParams:
        return TameParams(N=self.N, h=self.h)

    def to_dict(self) -> Dict[str, str]:
        return {
            "label": self.label,
            "N": str(self.N),
            "conductor": str(self.n),
            "a": str(self.a),
            "h": str(self.h),
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class BoxSpec:
    """Coordinate box [-bound, bound]^dim scanned by the brute-force oracles."""

    dim: int
    bound: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("Box dimension must be positive")
        if self.bound < 1:
            raise ValueError("Box bound must be at least 1")

    @property
    def size(self) -> int:
        return (2 * self.bound + 1) ** self.dim


@dataclass
class ReportDocument:
    """Machine-readable report emitted by the command line front end."""

    command: str
    inputs: Dict[str, str]
    outputs: Dict[str, Any]
    status: str
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        """Validate report data after initialization."""
        if self.status not in STATUSES:
            raise ValueError(f"Unknown report status: {self.status}")

        if self.schema_version != SCHEMA_VERSION:
            raise ValueError(f"Unsupported schema version: {self.schema_version}")

    @property
    def exit_code(self) -> int:
        return {
            STATUS_PASS: 0,
            STATUS_NOT_APPLICABLE: 0,
            STATUS_FAIL: 1,
            STATUS_BUDGET_EXCEEDED: 2,
        }[self.status]

    def to_dict(self) -> Dict[str, Any]:
        """Convert report to dictionary."""
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": dict(self.inputs),
            "outputs": self.outputs,
            "status": self.status,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReportDocument":
        """Create report from dictionary."""
        return cls(
            command=data["command"],
            inputs=dict(data["inputs"]),
            outputs=data["outputs"],
            status=data["status"],
            schema_version=data["schema_version"],
        )
