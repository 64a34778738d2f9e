"""Main tame lattice toolkit application."""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from .catalog import (
    admissible_m_values,
    conner_perlis,
    example3_entry,
    named_entries,
    prime_conductor_abelian,
    reference_gram,
    rs_for_m,
    wr_not_swr_gram,
)
from .config import Config, load_config
from .lattice import (
    EnumerationBudgetError,
    GramMatrix,
    center_density_sq,
    enumerate_short,
    is_strongly_wr,
    is_well_rounded,
    minimal_basis,
    volume_sq,
)
from .logger import setup_logger
from .models import (
    STATUS_BUDGET_EXCEEDED,
    STATUS_FAIL,
    STATUS_NOT_APPLICABLE,
    STATUS_PASS,
    BoxSpec,
    FieldFamilyEntry,
    ReportDocument,
    RSPair,
    TameParams,
    VerificationReport,
)
from .oracle import (
    BoxCeilingError,
    OracleInconsistencyError,
    brute_min_Sd,
    coordinate_box,
    naive_svp,
)
from .tame import (
    TheoremFalsificationError,
    min_over_Sd,
    phi_basis,
    sublattice_gram,
    tame_gram,
    verify_main_theorem,
    verify_many,
)

FAMILIES = (
    "tame",
    "conner-perlis",
    "prime-conductor",
    "example3",
    "cubic",
    "root-a",
    "root-d",
    "wr-not-swr",
)

FIELD_FAMILIES = ("tame", "conner-perlis", "prime-conductor", "example3")


@dataclass
class LatticeRequest:
    """Family name plus the parameters the family needs."""

    family: str = "tame"
    n: Optional[int] = None
    h: Optional[int] = None
    p: Optional[int] = None
    cond: Optional[int] = None
    k: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"Unknown family {self.family!r}")

    def require(self, *names: str) -> None:
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            flags = ", ".join(f"--{name}" for name in missing)
            raise ValueError(f"Family {self.family!r} requires {flags}")

    def inputs(self) -> Dict[str, str]:
        values = {"family": self.family}
        for name in ("n", "h", "p", "cond", "k"):
            value = getattr(self, name)
            if value is not None:
                values[name] = str(value)
        return values


def _vectors(vectors) -> List[List[str]]:
    return [[str(c) for c in v] for v in vectors]


class TameLatticeToolkit:
    """Main tame lattice toolkit application."""

    def __init__(self, config: Optional[Config] = None):
        """
        Initialize the toolkit.

        Args:
            config: Optional configuration; defaults to the environment
        """
        self.config = config or load_config()
        self.config.validate()

        # covers every src.* module logger
        self.logger = setup_logger("src", self.config)
        self.logger.debug("Tame lattice toolkit initialized")

    def field_entry(self, request: LatticeRequest) -> Optional[FieldFamilyEntry]:
        if request.family == "conner-perlis":
            request.require("p", "cond")
            return conner_perlis(request.p, request.cond)
        if request.family == "prime-conductor":
            request.require("n", "cond")
            return prime_conductor_abelian(request.n, request.cond)
        if request.family == "example3":
            return example3_entry()
        return None

    def tame_params(self, request: LatticeRequest) -> TameParams:
        """Tame parameters for the field families and for plain (N, h)."""
        if request.family not in FIELD_FAMILIES:
            raise ValueError(f"Family {request.family!r} is not a tame lattice family")
        entry = self.field_entry(request)
        if entry is not None:
            return entry.tame_params
        request.require("n", "h")
        return TameParams(N=request.n, h=request.h)

    def build_gram(self, request: LatticeRequest) -> Tuple[str, GramMatrix]:
        """
        Build the Gram matrix of a named lattice.

        Returns:
            (label, GramMatrix)
        """
        if request.family in FIELD_FAMILIES:
            entry = self.field_entry(request)
            params = self.tame_params(request)
            label = entry.label if entry else "tame lattice"
            label = f"{label} (N={params.N}, a={params.a}, h={params.h})"
            gram = tame_gram(params)
        elif request.family == "wr-not-swr":
            request.require("n", "k")
            label = f"Z^{request.n} + Z(1/{request.k}, ...), scaled by {request.k}^2"
            gram = wr_not_swr_gram(request.n, request.k)
        else:
            request.require("n")
            name = {"cubic": "cubic", "root-a": "A", "root-d": "D"}[request.family]
            label = f"{name}_{request.n}" if name != "cubic" else f"Z^{request.n}"
            gram = reference_gram(name, request.n)

        self.logger.info(f"Built {label}")
        return label, gram

    def shortest_vectors(
        self,
        gram: GramMatrix,
        inputs: Dict[str, str],
        budget: Optional[int] = None,
        oracle: bool = False,
    ) -> ReportDocument:
        """
        Enumerate the minimum, the minimal vectors and the rounding predicates.

        Args:
            gram: Lattice to analyse
            inputs: Echo of the request for the report
            budget: Enumeration node budget (configuration default if None)
            oracle: Also run the brute-force box scan and compare

        Returns:
            Report document with status pass, fail or budget-exceeded
        """
        try:
            report = enumerate_short(gram, budget=budget)
            density = center_density_sq(gram, report)
            basis = minimal_basis(gram, report, budget)
            outputs: Dict[str, Any] = {
                "dimension": str(gram.dim),
                "volume_sq": str(volume_sq(gram)),
                "lambda1": str(report.lambda1),
                "kissing_number": str(report.kissing_number),
                "minimal_vectors": _vectors(report.minimal_vectors),
                "center_density_sq": {
                    "numerator": str(density.numerator),
                    "denominator": str(density.denominator),
                },
                "well_rounded": is_well_rounded(gram, report),
                "strongly_well_rounded": is_strongly_wr(gram, report),
                "has_minimal_basis": basis is not None,
            }
            if basis is not None:
                outputs["minimal_basis_vectors"] = _vectors(basis)

            if oracle:
                box = coordinate_box(gram, report.lambda1)
                scan = naive_svp(gram, box)
                outputs["oracle"] = {"box_bound": str(box.bound), "minimum": str(scan.minimum)}
                if scan.minimum != report.lambda1 or scan.argmins != report.minimal_vectors:
                    raise OracleInconsistencyError(
                        f"Box scan found minimum {scan.minimum} with {len(scan.argmins)} "
                        f"vectors, enumeration found {report.lambda1} with "
                        f"{len(report.minimal_vectors)}"
                    )

            status = STATUS_PASS
            self.logger.info(
                f"lambda1={report.lambda1}, kissing number={report.kissing_number}"
            )
        except (EnumerationBudgetError, BoxCeilingError) as e:
            self.logger.error(f"Resource limit reached: {e}")
            outputs, status = {"error": str(e)}, STATUS_BUDGET_EXCEEDED
        except OracleInconsistencyError as e:
            self.logger.error(f"Oracle disagreement: {e}")
            outputs, status = {"error": str(e)}, STATUS_FAIL

        return ReportDocument(command="svp", inputs=inputs, outputs=outputs, status=status)

    def _cross_check(
        self, params: TameParams, rs: RSPair, report: VerificationReport
    ) -> Dict[str, Any]:
        """Box scan of the sublattice and of the cosets S_1, ..., S_N."""
        gram = sublattice_gram(params, rs)
        box = coordinate_box(gram, report.enumerated_lambda1)
        scan = naive_svp(gram, box)
        if (
            scan.minimum != report.enumerated_lambda1
            or 2 * len(scan.argmins) != report.kissing_number
        ):
            raise OracleInconsistencyError(
                f"Box scan found minimum {scan.minimum} with {2 * len(scan.argmins)} "
                f"minimal vectors, enumeration found {report.enumerated_lambda1} "
                f"with {report.kissing_number}"
            )

        coset_minima = []
        unit_box = BoxSpec(dim=params.N, bound=1)
        for d in range(1, params.N + 1):
            found = brute_min_Sd(params, rs, d, unit_box).minimum
            expected = min_over_Sd(params, rs, d)
            if found != expected:
                raise OracleInconsistencyError(
                    f"Box scan of S_{d} found {found}, closed form gives {expected}"
                )
            coset_minima.append(str(found))

        return {
            "box_bound": str(box.bound),
            "minimum": str(scan.minimum),
            "coset_minima": coset_minima,
        }

    def _verification_document(
        self,
        params: TameParams,
        rs: RSPair,
        report: VerificationReport,
        oracle: bool = False,
    ) -> ReportDocument:
        outputs = report.to_dict()
        if report.basis_is_minimal:
            outputs["minimal_basis_vectors"] = _vectors(phi_basis(params, rs).columns())
        status = STATUS_PASS if report.bounds_check else STATUS_NOT_APPLICABLE

        if oracle:
            try:
                outputs["oracle"] = self._cross_check(params, rs, report)
            except (EnumerationBudgetError, BoxCeilingError) as e:
                self.logger.error(f"Resource limit reached: {e}")
                outputs["error"], status = str(e), STATUS_BUDGET_EXCEEDED
            except OracleInconsistencyError as e:
                self.logger.error(f"Oracle disagreement: {e}")
                outputs["error"], status = str(e), STATUS_FAIL

        return ReportDocument(
            command="verify",
            inputs=self._verify_inputs(params, rs),
            outputs=outputs,
            status=status,
        )

    @staticmethod
    def _verify_inputs(params: TameParams, rs: RSPair) -> Dict[str, str]:
        return {**params.to_dict(), **rs.to_dict()}

    def verify(
        self,
        params: TameParams,
        rs: RSPair,
        budget: Optional[int] = None,
        oracle: bool = False,
    ) -> ReportDocument:
        """
        Verify the minimal-basis theorem for one (r, s) pair.

        With ``oracle`` the sublattice minimum and the coset minima for
        d = 1..N are recomputed by box scans.

        Returns:
            pass when the bounds hold and the theorem checks out,
            not-applicable when the bounds fail, fail on a falsification or an
            oracle disagreement and budget-exceeded when a search runs out
        """
        try:
            report = verify_main_theorem(params, rs, budget)
            return self._verification_document(params, rs, report, oracle)
        except TheoremFalsificationError as e:
            self.logger.error(f"Theorem falsified: {e}")
            outputs, status = {"error": str(e)}, STATUS_FAIL
        except EnumerationBudgetError as e:
            self.logger.error(f"Enumeration budget exceeded: {e}")
            outputs, status = {"error": str(e)}, STATUS_BUDGET_EXCEEDED

        return ReportDocument(
            command="verify",
            inputs=self._verify_inputs(params, rs),
            outputs=outputs,
            status=status,
        )

    def sweep(
        self,
        params: TameParams,
        r_abs: int = 1,
        budget: Optional[int] = None,
        workers: Optional[int] = None,
        oracle: bool = False,
    ) -> List[ReportDocument]:
        """
        Verify every admissible m >= 2 for the lattice, ordered by m.

        Args:
            params: Tame lattice
            r_abs: |r| used for every pair
            budget: Enumeration node budget per item
            workers: Worker processes (configuration default if None)
            oracle: Cross-check every item with box scans

        Returns:
            One report per admissible m
        """
        workers = workers or self.config.workers
        pairs = [rs_for_m(params, m, r_abs) for m in admissible_m_values(params, r_abs)]
        self.logger.info(
            f"Sweeping N={params.N}, h={params.h}: m in {[rs.m for rs in pairs]}"
        )

        if workers > 1:
            try:
                reports = verify_many(params, pairs, workers=workers, budget=budget)
                return [
                    self._verification_document(params, r.rs, r, oracle) for r in reports
                ]
            except (TheoremFalsificationError, EnumerationBudgetError) as e:
                self.logger.warning(f"Parallel sweep stopped ({e}); rerunning items one by one")

        return [self.verify(params, rs, budget, oracle) for rs in pairs]

    def catalog_entries(self, r_abs: int = 1) -> List[Dict[str, Any]]:
        """Built-in catalog entries with their admissible m values."""
        entries = []
        for entry in named_entries():
            data = entry.to_dict()
            data["admissible_m"] = [str(m) for m in admissible_m_values(entry, r_abs)]
            entries.append(data)
        return entries
