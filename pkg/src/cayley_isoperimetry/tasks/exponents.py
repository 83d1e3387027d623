from typing import Any, Dict, List

from cayley_isoperimetry.exceptions import ParameterError
from cayley_isoperimetry.exponents.classification import GroupFacts, classify
from cayley_isoperimetry.exponents.terms import (
    ExponentDepth,
    ExponentReport,
    check_family,
    family_sets,
    set_record,
)
from cayley_isoperimetry.model.report import AssertionRecord
from cayley_isoperimetry.model.task.base import Task, TaskContext
from cayley_isoperimetry.model.task.result import TaskResult
from cayley_isoperimetry.spectral.radius import DEFAULT_MAX_SUPPORT
from cayley_isoperimetry.utils.async_progress import run_blocking
from cayley_isoperimetry.utils.datetime_ops import get_utc_now_formatted
from cayley_isoperimetry.verify.checks import ANCHOR_EXPONENTS, ANCHOR_KESTEN

ANCHOR_RANGE = "terms lie in [0, 1 + ln2/ln|S|]"


class ExponentsTask(Task):
    """η- and r-terms over a family of symmetric sets, then the Lit band.

    The family defaults to the job's own generating sets. Each set is worked
    independently on the thread pool; records keep the family order.
    """

    DEFAULT_FAMILY: Dict[str, Any] = {}
    DEFAULT_DEPTH: Dict[str, Any] = {"k_max": 8}

    def __init__(self, context: TaskContext):
        super().__init__(context)

    @property
    def name(self) -> str:
        return "exponents"

    async def execute(self) -> TaskResult:
        try:
            backend = self.context.backend
            family = self.get_parameter("family", default=self.DEFAULT_FAMILY) or {}
            depth_params = dict(
                self.get_parameter("depth", default=self.DEFAULT_DEPTH) or {}
            )
            search = dict(depth_params.get("search") or {})
            search.setdefault("seed", self.seed())
            depth_params["search"] = search
            depth_params.setdefault(
                "max_support",
                self.context.conf.get("caps.max_support", DEFAULT_MAX_SUPPORT),
            )
            cap = self.context.conf.get("caps.k_max")
            if cap is not None and int(depth_params.get("k_max", 0)) > int(cap):
                raise ParameterError(f"depth.k_max exceeds the desk-scale cap {cap}")
            depth = ExponentDepth.from_dict(depth_params)

            if family:
                pairs = family_sets(backend, family)
            else:
                pairs = [(backend, s) for s in self.context.generating_sets]
            check_family(pairs)

            jobs = [lambda g=g, s=s: set_record(g, s, depth) for g, s in pairs]
            records = await run_blocking(
                jobs,
                desc=self.name,
                logger=self.logger,
                threads=self.context.threads,
                unit="sets",
                show_progress=self.context.show_progress,
            )
            report = ExponentReport(records=records)
            facts = GroupFacts.from_backend(
                backend,
                rapid_decay=self.get_parameter("rapid_decay", default=None),
                rapid_decay_p=self.get_parameter("rapid_decay_p", default=None),
            )
            classification = classify(report, facts)

            assertions: List[AssertionRecord] = []
            for record in records:
                if record.sandwich_holds is not None:
                    assertions.append(
                        AssertionRecord(
                            f"exponents.sandwich.{record.label}.n{record.size}",
                            ANCHOR_EXPONENTS,
                            record.sandwich_holds,
                            f"r {record.r_term.as_float():.6f}, "
                            f"η {record.eta_term.as_float():.6f}",
                        )
                    )
                if record.kesten_holds is not None:
                    assertions.append(
                        AssertionRecord(
                            f"exponents.kesten.{record.label}.n{record.size}",
                            ANCHOR_KESTEN,
                            record.kesten_holds,
                            f"r-term {record.r_term.as_float():.6f}",
                        )
                    )
                assertions.append(
                    AssertionRecord(
                        f"exponents.in_range.{record.label}.n{record.size}",
                        ANCHOR_RANGE,
                        record.in_range,
                        f"ceiling {record.slack_ceiling:.6f}",
                    )
                )

            self.logger.info(
                f"Exponent terms for {len(records)} set(s); "
                f"Lit band {classification.band}"
            )
            return TaskResult(
                task_name=self.name,
                success=True,
                created_at=get_utc_now_formatted(),
                data={
                    "terms": report.to_dict(),
                    "classification": classification.to_dict(),
                },
                metrics={"sets_processed": len(records)},
                assertions=assertions,
                curves={
                    "exponent_terms": report.rows(),
                    "running_infimum": [
                        {"size": size, "eta_term": eta, "r_term": r}
                        for size, eta, r in report.running_infimum
                    ],
                },
            )
        except Exception as e:
            return self.failure(e, metrics={"sets_processed": 0})
