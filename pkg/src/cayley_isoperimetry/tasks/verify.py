from typing import List

from cayley_isoperimetry.groups.symmetric_set import (
    SymmetricSet,
    standard_generating_set,
)
from cayley_isoperimetry.model.report import AssertionRecord
from cayley_isoperimetry.model.task.base import Task, TaskContext
from cayley_isoperimetry.model.task.result import TaskResult
from cayley_isoperimetry.utils.datetime_ops import get_utc_now_formatted
from cayley_isoperimetry.verify import checks
from cayley_isoperimetry.verify.selfcheck import global_checks, instance_checks


class VerifyTask(Task):
    """Invariant suites for the job's group.

    The instance suites run on the standard set and its square; every other
    generating set of the job gets the set-level suites. ``include_global``
    adds the suites that build their own fixtures.
    """

    DEFAULT_INCLUDE_GLOBAL: bool = False

    def __init__(self, context: TaskContext):
        super().__init__(context)

    @property
    def name(self) -> str:
        return "verify"

    async def execute(self) -> TaskResult:
        try:
            backend = self.context.backend
            group = self.context.group_label
            seed = self.seed()
            include_global = bool(
                self.get_parameter(
                    "include_global", default=self.DEFAULT_INCLUDE_GLOBAL
                )
            )

            assertions = instance_checks(group, backend, seed)
            standard = set(standard_generating_set(backend).elements)
            extra = [
                s
                for s in self.context.generating_sets
                if set(s.elements) != standard
            ]
            for records in await self.per_set(lambda s: self._set_checks(s, seed)):
                assertions += records
            if backend.kind == "free" and getattr(backend, "rank", 0) == 2:
                assertions += checks.check_free_mohar_equality()
            if include_global:
                assertions += global_checks(seed)

            failed = [r.check_id for r in assertions if not r.passed]
            self.logger.info(
                f"Verified {group}: {len(assertions)} checks, {len(failed)} failed, "
                f"{len(extra)} extra set(s)"
            )
            return TaskResult(
                task_name=self.name,
                success=True,
                created_at=get_utc_now_formatted(),
                data={"checks": len(assertions), "failed": failed},
                metrics={"checks": len(assertions), "failed": len(failed)},
                assertions=assertions,
            )
        except Exception as e:
            return self.failure(e, metrics={"checks": 0})

    def _set_checks(
        self, generating_set: SymmetricSet, seed: int
    ) -> List[AssertionRecord]:
        backend = self.context.backend
        standard = standard_generating_set(backend)
        if set(generating_set.elements) == set(standard.elements):
            return []
        name = f"{self.context.group_label}.{generating_set.label}"
        records = checks.check_counting_identity(name, backend, [generating_set], seed)
        records += checks.check_mohar(name, backend, generating_set)
        records += checks.check_conservation(name, backend, generating_set)
        records += checks.check_colouring(name, backend, generating_set)
        records += checks.check_nprime_identity(name, backend, generating_set)
        return records
