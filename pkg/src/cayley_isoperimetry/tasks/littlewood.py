import math
from typing import Any, Dict, List, Optional

from cayley_isoperimetry.cayley.cheeger import analytic_h, cheeger_upper
from cayley_isoperimetry.cayley.search import SearchConfig
from cayley_isoperimetry.groups.symmetric_set import (
    SymmetricSet,
    standard_generating_set,
)
from cayley_isoperimetry.littlewood.box import box_trick, zeta
from cayley_isoperimetry.littlewood.decomposition import (
    free_t1_certificate,
    t1_ratio_scan,
)
from cayley_isoperimetry.littlewood.norms import lp_norm, nprime_lower
from cayley_isoperimetry.littlewood.quotient import QuotientMap, quotient_lift
from cayley_isoperimetry.model.report import (
    AssertionRecord,
    Provenance,
    Quantity,
    jsonable_number,
)
from cayley_isoperimetry.model.task.base import Task, TaskContext
from cayley_isoperimetry.model.task.result import TaskResult
from cayley_isoperimetry.spectral.convolution import FiniteSupportFunction
from cayley_isoperimetry.utils.datetime_ops import get_utc_now_formatted
from cayley_isoperimetry.verify.checks import ANCHOR_BOX, ANCHOR_NPRIME, ANCHOR_T1

ANCHOR_LIFT = "quotient lift preserves every ℓᵖ norm"
TOLERANCE = 1e-12


class LittlewoodTask(Task):
    """ℓᵖ and N′ norms of 1_S, the box trick, and T₁ certificates.

    For finite groups N′(1_S) is compared with |S|·e(Γ,S), which it equals;
    N is bracketed by ½N ≤ N′ ≤ N, so N′ doubles as a bound on N.
    """

    DEFAULT_POOL_RADIUS: int = 3
    DEFAULT_MAX_SUBSET: int = 256
    DEFAULT_BOX_P: float = 2.0
    DEFAULT_BOX_Q: float = 1.0
    DEFAULT_BOX_SUPPORT: int = 1000
    DEFAULT_T1_TRUNCATION: int = 3
    DEFAULT_T1_RANKS: List[int] = [2, 3, 4, 5, 6]
    DEFAULT_T1_P: float = 1.5
    DEFAULT_LP_EXPONENTS: List[Any] = [1, 2, "inf"]

    def __init__(self, context: TaskContext):
        super().__init__(context)

    @property
    def name(self) -> str:
        return "littlewood"

    async def execute(self) -> TaskResult:
        try:
            search = SearchConfig.from_dict(
                {
                    "pool_radius": self.get_capped_int(
                        "pool_radius", self.DEFAULT_POOL_RADIUS, "pool_radius"
                    ),
                    "max_subset": self.get_capped_int(
                        "max_subset", self.DEFAULT_MAX_SUBSET, "max_subset"
                    ),
                    "seed": self.seed(),
                }
            )
            exponents = [
                math.inf if str(p) == "inf" else float(p)
                for p in self.get_parameter(
                    "lp_exponents", default=self.DEFAULT_LP_EXPONENTS
                )
            ]
            box_p = float(self.get_parameter("box_p", default=self.DEFAULT_BOX_P))
            box_q = float(self.get_parameter("box_q", default=self.DEFAULT_BOX_Q))
            box_support = self.get_capped_int("box_support", self.DEFAULT_BOX_SUPPORT)
            truncation = self.get_capped_int(
                "t1_truncation", self.DEFAULT_T1_TRUNCATION, "truncation"
            )
            t1_ranks = [
                int(m)
                for m in self.get_parameter("t1_ranks", default=self.DEFAULT_T1_RANKS)
            ]
            t1_p = float(self.get_parameter("t1_p", default=self.DEFAULT_T1_P))

            outcomes = await self.per_set(
                lambda s: self._run_set(s, search, exponents, truncation)
            )

            data: Dict[str, Any] = {"sets": {}}
            assertions: List[AssertionRecord] = []
            for generating_set, (block, records) in zip(
                self.context.generating_sets, outcomes
            ):
                data["sets"][generating_set.label] = block
                assertions += records

            box_block, box_records = self._box(box_p, box_q, box_support)
            data["box_trick"] = box_block
            assertions += box_records

            scan = t1_ratio_scan(t1_ranks, t1_p) if t1_ranks else []
            data["t1_ratio_scan"] = {
                "p": t1_p,
                "ratios": [point.ratio for point in scan],
                "decreasing": all(b.ratio < a.ratio for a, b in zip(scan, scan[1:])),
            }
            scan_rows = [
                {
                    "rank": point.rank,
                    "certificate": point.certificate,
                    "lp_norm": point.lp_norm,
                    "ratio": point.ratio,
                }
                for point in scan
            ]

            self.logger.info(
                f"Littlewood norms computed for {len(outcomes)} generating set(s)"
            )
            return TaskResult(
                task_name=self.name,
                success=True,
                created_at=get_utc_now_formatted(),
                data=data,
                metrics={"sets_processed": len(outcomes)},
                assertions=assertions,
                curves={"t1_ratio": scan_rows} if scan_rows else {},
            )
        except Exception as e:
            return self.failure(e, metrics={"sets_processed": 0})

    def _run_set(
        self,
        generating_set: SymmetricSet,
        search: SearchConfig,
        exponents: List[float],
        truncation: int,
    ) -> tuple:
        backend = self.context.backend
        label = generating_set.label
        f = FiniteSupportFunction.indicator(generating_set.elements)
        records: List[AssertionRecord] = []

        layers = self.layers(generating_set.elements, search.pool_radius)
        estimate = nprime_lower(backend, f, search, layers)
        cross_check: Optional[Quantity] = None
        if backend.is_finite:
            cheeger = cheeger_upper(backend, generating_set, search, layers)
            cross_check = Quantity(generating_set.size * cheeger.e, Provenance.EXACT)
            records.append(
                AssertionRecord(
                    f"littlewood.nprime_identity.{label}",
                    ANCHOR_NPRIME,
                    estimate.exact and estimate.value == cross_check.value,
                    f"N′ {estimate.value} vs |S|e {cross_check.value}",
                )
            )
        else:
            h = analytic_h(backend, generating_set)
            if h is not None:
                cross_check = Quantity(generating_set.size - h, Provenance.ANALYTIC)
                records.append(
                    AssertionRecord(
                        f"littlewood.nprime_below_exact.{label}",
                        ANCHOR_NPRIME,
                        estimate.value <= cross_check.value,
                        f"N′ ≥ {estimate.value} vs |S|e = {cross_check.value}",
                    )
                )
        if cross_check is not None:
            estimate = estimate.with_cross_check(cross_check)

        block: Dict[str, Any] = {
            "size": generating_set.size,
            "lp_norms": {
                ("inf" if math.isinf(p) else f"{p:g}"): jsonable_number(lp_norm(f, p))
                for p in exponents
            },
            "nprime": estimate.quantity().to_dict(),
            "nprime_pool_optimal": estimate.pool_optimal,
            "nprime_candidates": estimate.candidates_examined,
            "nprime_witness_size": len(estimate.witness),
            "nprime_cross_check": (
                None if cross_check is None else cross_check.to_dict()
            ),
            "n_bracket": {
                "lower": estimate.quantity().to_dict(),
                "upper": Quantity(2 * estimate.value, Provenance.ESTIMATE).to_dict()
                if estimate.exact
                else None,
            },
        }

        if backend.kind == "free":
            certificate = free_t1_certificate(backend, generating_set, truncation)
            block["t1_certificate"] = certificate.to_dict()
            block["t1_bound"] = Quantity(
                certificate.bound, Provenance.UPPER_BOUND
            ).to_dict()
            standard = standard_generating_set(backend)
            if set(generating_set.elements) == set(standard.elements):
                records.append(
                    AssertionRecord(
                        f"littlewood.t1_certificate.{label}",
                        ANCHOR_T1,
                        certificate.row_sup == 1 and certificate.column_sup == 1,
                        f"rows {certificate.row_sup}, columns {certificate.column_sup}",
                    )
                )

        if backend.kind == "cyclic":
            n = backend.order() or 0
            lifted = quotient_lift(f, QuotientMap.integers_mod(n))
            preserved = all(
                abs(float(lp_norm(lifted, p)) - float(lp_norm(f, p))) <= TOLERANCE
                for p in exponents
            )
            block["lift_to_integers"] = {
                "support": sorted(x[0] for x in lifted.support),
                "norms_preserved": preserved,
            }
            records.append(
                AssertionRecord(
                    f"littlewood.quotient_lift.{label}", ANCHOR_LIFT, preserved
                )
            )

        return block, records

    def _box(self, p: float, q: float, support: int) -> tuple:
        """Box trick on the truncation of n ↦ n^{−1/q}, where it is nearly tight."""
        f = FiniteSupportFunction({n: n ** (-1.0 / q) for n in range(1, support + 1)})
        box = box_trick(f, p, q)
        block = box.to_dict()
        block.update(
            {
                "support": support,
                "zeta": zeta(p / q),
                "ratio": box.ratio,
                "guarantee": Quantity(box.guarantee, Provenance.CITED).to_dict(),
            }
        )
        records = [
            AssertionRecord(
                f"littlewood.box_trick.p{p:g}q{q:g}",
                ANCHOR_BOX,
                box.certified,
                f"‖f□‖_q = {box.q_norm:.6f} ≥ {box.guarantee:.6f}",
            )
        ]
        return block, records
