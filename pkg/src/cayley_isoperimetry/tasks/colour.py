from typing import Any, Dict, List

from cayley_isoperimetry.cayley.cheeger import analytic_h
from cayley_isoperimetry.colouring.degeneracy import colourcor_experiment
from cayley_isoperimetry.groups.symmetric_set import SymmetricSet
from cayley_isoperimetry.model.report import AssertionRecord
from cayley_isoperimetry.model.task.base import Task, TaskContext
from cayley_isoperimetry.model.task.result import TaskResult
from cayley_isoperimetry.utils.datetime_ops import get_utc_now_formatted
from cayley_isoperimetry.verify.checks import ANCHOR_COLOURING


class ColourTask(Task):
    """Degeneracy colouring of Cayley balls.

    The colour count is checked against degeneracy + 1 always and against
    ⌊mad⌋ + 1 when mad = |S| − h is known exactly. Meeting the
    ⌊|S|^{1/α}⌋ target is reported, never asserted.
    """

    DEFAULT_ALPHA: float = 2.0
    DEFAULT_RADIUS: int = 3

    def __init__(self, context: TaskContext):
        super().__init__(context)

    @property
    def name(self) -> str:
        return "colour"

    async def execute(self) -> TaskResult:
        try:
            alpha = float(self.get_parameter("alpha", default=self.DEFAULT_ALPHA))
            radius = self.get_capped_int("radius", self.DEFAULT_RADIUS)

            outcomes = await self.per_set(lambda s: self._run_set(s, alpha, radius))

            data: Dict[str, Any] = {}
            assertions: List[AssertionRecord] = []
            rows: List[Dict[str, Any]] = []
            for generating_set, (block, records, summary) in zip(
                self.context.generating_sets, outcomes
            ):
                data[generating_set.label] = block
                assertions += records
                rows.append(summary)

            self.logger.info(
                f"Coloured ball({radius}) for {len(outcomes)} generating set(s)"
            )
            return TaskResult(
                task_name=self.name,
                success=True,
                created_at=get_utc_now_formatted(),
                data={"sets": data},
                metrics={"sets_processed": len(outcomes), "radius": radius},
                assertions=assertions,
                curves={"colouring": rows},
            )
        except Exception as e:
            return self.failure(e, metrics={"sets_processed": 0})

    def _run_set(
        self, generating_set: SymmetricSet, alpha: float, radius: int
    ) -> tuple:
        backend = self.context.backend
        label = generating_set.label
        loop_free = generating_set.without_identity(backend)
        h = analytic_h(backend, loop_free)
        mad_bound = None if h is None else loop_free.size - h

        result = colourcor_experiment(backend, generating_set, alpha, radius, mad_bound)
        report = result.report
        records = [
            AssertionRecord(
                f"colouring.proper.{label}",
                ANCHOR_COLOURING,
                report.proper,
                f"{report.vertex_count} vertices",
            ),
            AssertionRecord(
                f"colouring.degeneracy.{label}",
                ANCHOR_COLOURING,
                report.within_degeneracy_bound,
                f"{report.colours_used} colours, degeneracy {report.degeneracy}",
            ),
        ]
        if report.within_mad_bound is not None:
            records.append(
                AssertionRecord(
                    f"colouring.mad.{label}",
                    ANCHOR_COLOURING,
                    report.within_mad_bound,
                    f"{report.colours_used} colours, mad ≤ {mad_bound}",
                )
            )
        summary = {
            "set": label,
            "set_size": result.set_size,
            "vertices": report.vertex_count,
            "degeneracy": report.degeneracy,
            "colours": report.colours_used,
            "target": result.target,
            "meets_target": result.meets_target,
        }
        return result.to_dict(), records, summary
