import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from cayley_isoperimetry.exceptions import ToolkitError
from cayley_isoperimetry.groups.base import GroupBackend
from cayley_isoperimetry.groups.finite_table import FiniteTableGroup
from cayley_isoperimetry.groups.symmetric_set import build_symmetric_set
from cayley_isoperimetry.groups.zoo import zoo_backends
from cayley_isoperimetry.model.report import AssertionRecord
from cayley_isoperimetry.verify import checks

logger = logging.getLogger(__name__)

FOREST_MAX_ORDER = 12
FOREST_INSTANCES = ("Z/4", "(Z/2)^2")
COUNTING_TRIPLES = 10_000
COUNTING_SETS = 2


@dataclass
class SelfcheckReport:
    """All check outcomes plus a pass/fail matrix keyed by instance and suite."""

    records: List[AssertionRecord] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failed_checks(self) -> List[str]:
        return [r.check_id for r in self.records if not r.passed]

    def matrix(self) -> Dict[str, Dict[str, bool]]:
        """suite → instance → passed; checks without an instance go under "-"."""
        table: Dict[str, Dict[str, bool]] = {}
        for record in self.records:
            parts = record.check_id.split(".")
            suite = ".".join(parts[:2])
            instance = ".".join(parts[2:]) or "-"
            row = table.setdefault(suite, {})
            row[instance] = row.get(instance, True) and record.passed
        return table


def _guarded(
    check_id: str, anchor: str, run: Callable[[], List[AssertionRecord]]
) -> List[AssertionRecord]:
    """Run a suite; a toolkit error becomes one failed record."""
    try:
        return run()
    except ToolkitError as e:
        logger.error(f"Suite {check_id} raised: {e}", exc_info=True)
        return [
            AssertionRecord(
                check_id=check_id, anchor=anchor, passed=False, detail=str(e)
            )
        ]


def instance_checks(
    name: str,
    backend: GroupBackend,
    seed: int,
    counting_trials: int = checks.COUNTING_TRIALS,
) -> List[AssertionRecord]:
    standard = build_symmetric_set(backend, {"kind": "standard"})
    squared = build_symmetric_set(backend, {"kind": "power", "k": 2})
    records = checks.check_group_axioms(name, backend, seed)
    records += checks.check_counting_identity(
        name, backend, [standard, squared], seed, trials=counting_trials
    )
    records += checks.check_mohar(name, backend, standard)
    records += checks.check_conservation(name, backend, standard)
    records += checks.check_colouring(name, backend, standard)
    if backend.is_finite:
        records += checks.check_nprime_identity(name, backend, standard)
        records += checks.check_nprime_identity(name, backend, squared)
        order = backend.order() or 0
        if order <= FOREST_MAX_ORDER:
            samples = 10_000 if name in FOREST_INSTANCES else 2_000
            records += checks.check_forest(name, backend, standard, samples, seed)
    return records


def run_selfcheck(
    seed: int = 0,
    extra_tables: Sequence[Path] = (),
    zoo: Optional[Dict[str, GroupBackend]] = None,
) -> SelfcheckReport:
    """Run every suite over the instance zoo and any extra multiplication tables.

    A table that fails validation (for example a non-associative one) yields
    a failed ``groups.table`` record instead of aborting the run.
    """
    report = SelfcheckReport()
    backends = dict(zoo if zoo is not None else zoo_backends())

    for path in extra_tables:
        label = f"table:{Path(path).name}"
        try:
            backends[label] = FiniteTableGroup.from_csv(Path(path))
            report.records.append(
                AssertionRecord(
                    f"groups.table.{label}", checks.ANCHOR_AXIOMS, True, "validated"
                )
            )
        except ToolkitError as e:
            logger.error(f"Extra table {path} rejected: {e}")
            report.records.append(
                AssertionRecord(
                    f"groups.table.{label}", checks.ANCHOR_AXIOMS, False, str(e)
                )
            )

    trials = trials_per_pair(len(backends))
    for name, backend in backends.items():
        logger.info(f"Self-check on {name}")
        report.records += _guarded(
            f"instance.{name}",
            checks.ANCHOR_AXIOMS,
            lambda: instance_checks(name, backend, seed, counting_trials=trials),
        )
    report.records.append(counting_total(report.records, trials))

    report.records += global_checks(seed)

    logger.info(
        f"Self-check finished: {len(report.records)} checks, "
        f"{len(report.failed_checks)} failed"
    )
    return report


def trials_per_pair(instances: int) -> int:
    """Trials per (instance, set) pair; the zoo sees at least COUNTING_TRIPLES."""
    pairs = max(1, instances * COUNTING_SETS)
    return max(checks.COUNTING_TRIALS, math.ceil(COUNTING_TRIPLES / pairs))


def counting_total(records: Sequence[AssertionRecord], trials: int) -> AssertionRecord:
    counting = [
        r for r in records if r.check_id.startswith("cayley.counting_identity.")
    ]
    total = trials * len(counting)
    return AssertionRecord(
        "cayley.counting_identity.total",
        checks.ANCHOR_COUNTING,
        total >= COUNTING_TRIPLES and all(r.passed for r in counting),
        f"{total} (F, S) triples over {len(counting)} instance-set pairs, "
        f"{trials} each",
    )


def global_checks(seed: int = 0) -> List[AssertionRecord]:
    """Suites that build their own instances and do not depend on the zoo."""
    suites = [
        (
            "spectral.mohar_search",
            checks.ANCHOR_MOHAR,
            checks.check_free_mohar_equality,
        ),
        (
            "littlewood.box_trick",
            checks.ANCHOR_BOX,
            lambda: checks.check_box_trick(seed),
        ),
        ("littlewood.t1_certificate", checks.ANCHOR_T1, checks.check_free_t1),
        ("cogrowth", checks.ANCHOR_COGROWTH, checks.check_cogrowth),
        ("cogrowth.burnside", checks.ANCHOR_BURNSIDE, checks.check_burnside),
        (
            "colouring.fixture",
            checks.ANCHOR_COLOURING,
            checks.check_colouring_fixtures,
        ),
        ("exponents", checks.ANCHOR_EXPONENTS, checks.check_exponents),
        (
            "determinism",
            checks.ANCHOR_DETERMINISM,
            lambda: checks.check_determinism(seed),
        ),
    ]
    records: List[AssertionRecord] = []
    for check_id, anchor, suite in suites:
        logger.info(f"Self-check suite {check_id}")
        records += _guarded(check_id, anchor, suite)
    return records
