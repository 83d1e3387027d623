from fractions import Fraction
from typing import Any, Dict, List, Optional

from cayley_isoperimetry.cayley.cheeger import (
    CheegerResult,
    analytic_h,
    cheeger_upper,
    e_and_mad,
)
from cayley_isoperimetry.cayley.counting import subset_stats
from cayley_isoperimetry.cayley.search import SearchConfig
from cayley_isoperimetry.groups.symmetric_set import SymmetricSet
from cayley_isoperimetry.model.report import (
    AssertionRecord,
    Provenance,
    Quantity,
    fraction_to_dict,
)
from cayley_isoperimetry.model.task.base import Task, TaskContext
from cayley_isoperimetry.model.task.result import TaskResult
from cayley_isoperimetry.spectral.inequalities import edge_density_check
from cayley_isoperimetry.spectral.radius import analytic_rho
from cayley_isoperimetry.utils.datetime_ops import get_utc_now_formatted
from cayley_isoperimetry.verify.checks import ANCHOR_COUNTING, check_counting_identity

ANCHOR_SEARCH = "searched Cheeger bounds never undercut the exact value"
ANCHOR_EDGE_DENSITY = "edge density |E(F)| − ½|L(F)| ≤ ½|F||S|ρ"


class InvariantsTask(Task):
    """Cheeger constant h(Γ,S), e(Γ,S) and mad for every generating set.

    Documented exact values are used when known (and the subset search is kept
    as a cross-check); otherwise the searched minimum |∂F|/|F| is reported as
    an upper bound on h, which makes e and mad lower bounds.

    Attributes:
        DEFAULT_POOL_RADIUS: Candidate pool is the ball of this radius
        DEFAULT_MAX_SUBSET: Largest subset the search considers
        DEFAULT_COUNTING_TRIALS: Random vertex sets for the counting identity
    """

    DEFAULT_POOL_RADIUS: int = 3
    DEFAULT_MAX_SUBSET: int = 256
    DEFAULT_LOCAL_STEPS: int = 1000
    DEFAULT_COUNTING_TRIALS: int = 200
    DEFAULT_PREFER_ANALYTIC: bool = True

    def __init__(self, context: TaskContext):
        super().__init__(context)

    @property
    def name(self) -> str:
        return "invariants"

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
                    "local_steps": int(
                        self.get_parameter(
                            "local_steps", default=self.DEFAULT_LOCAL_STEPS
                        )
                    ),
                    "strategies": self.get_parameter("strategies", default=None)
                    or SearchConfig().strategies,
                    "seed": self.seed(),
                }
            )
            trials = int(
                self.get_parameter(
                    "counting_trials", default=self.DEFAULT_COUNTING_TRIALS
                )
            )
            prefer_analytic = bool(
                self.get_parameter(
                    "prefer_analytic", default=self.DEFAULT_PREFER_ANALYTIC
                )
            )

            blocks = await self.per_set(
                lambda s: self._run_set(s, search, trials, prefer_analytic)
            )

            data: Dict[str, Any] = {}
            assertions: List[AssertionRecord] = []
            trend_rows: List[Dict[str, Any]] = []
            for generating_set, (block, records, trend) in zip(
                self.context.generating_sets, blocks
            ):
                data[generating_set.label] = block
                assertions += records
                trend_rows += trend

            self.logger.info(f"Invariants computed for {len(blocks)} generating set(s)")
            return TaskResult(
                task_name=self.name,
                success=True,
                created_at=get_utc_now_formatted(),
                data={"sets": data},
                metrics={"sets_processed": len(blocks)},
                assertions=assertions,
                curves={"cheeger_trend": trend_rows},
            )
        except Exception as e:
            return self.failure(e, metrics={"sets_processed": 0})

    def _run_set(
        self,
        generating_set: SymmetricSet,
        search: SearchConfig,
        trials: int,
        prefer_analytic: bool,
    ) -> tuple:
        backend = self.context.backend
        label = generating_set.label
        layers = self.layers(generating_set.elements, search.pool_radius)
        searched = cheeger_upper(backend, generating_set, search, layers)

        known: Optional[Fraction] = None
        if prefer_analytic:
            known = analytic_h(backend, generating_set)
        cheeger = searched
        records: List[AssertionRecord] = []
        if known is not None and not searched.exact:
            cheeger = CheegerResult.from_analytic(known, generating_set.size)
            records.append(
                AssertionRecord(
                    f"cayley.search_above_exact.{label}",
                    ANCHOR_SEARCH,
                    searched.h >= known,
                    f"searched {searched.h} vs exact {known}",
                )
            )

        e, mad = e_and_mad(cheeger, generating_set)
        witness = list(searched.witness)
        stats = subset_stats(backend, generating_set, witness)
        records.append(
            AssertionRecord(
                f"cayley.counting_identity.witness.{label}",
                ANCHOR_COUNTING,
                stats.counting_identity_holds(generating_set.size),
                f"|F|={stats.size}, |∂F|={stats.boundary}",
            )
        )
        records += check_counting_identity(
            self.context.group_label, backend, [generating_set], self.seed(), trials
        )

        rho = analytic_rho(backend, generating_set)
        edge_density = None
        if rho is not None and witness:
            report = edge_density_check(
                backend, generating_set, witness, Quantity(rho, Provenance.ANALYTIC)
            )
            edge_density = {
                "lhs": report.lhs,
                "rhs": report.rhs,
                "passed": report.passed,
            }
            records.append(
                AssertionRecord(
                    f"cayley.edge_density.{label}",
                    ANCHOR_EDGE_DENSITY,
                    report.passed,
                    f"{report.lhs:.6f} <= {report.rhs:.6f}",
                )
            )

        block = {
            "size": generating_set.size,
            "contains_identity": generating_set.contains_identity,
            "h": Quantity(cheeger.h, cheeger.provenance).to_dict(),
            "e": e.to_dict(),
            "mad": mad.to_dict(),
            "search": {
                "h": fraction_to_dict(searched.h),
                "exact": searched.exact,
                "pool_optimal": searched.pool_optimal,
                "candidates_examined": searched.candidates_examined,
                "witness_size": stats.size,
                "witness_boundary": stats.boundary,
                "witness_internal_edges": stats.internal_edges,
                "witness_loops": stats.loops,
            },
            "edge_density": edge_density,
        }
        trend = [
            {
                "set": label,
                "size": size,
                "ratio": float(ratio),
                "ratio_exact": str(ratio),
            }
            for size, ratio in searched.trend
        ]
        self.logger.debug(
            f"{label}: h={cheeger.h} ({cheeger.provenance.value}), e={e.value}"
        )
        return block, records, trend
