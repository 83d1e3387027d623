from typing import Any, Dict, List

from cayley_isoperimetry.cayley.cheeger import analytic_h
from cayley_isoperimetry.exceptions import ParameterError
from cayley_isoperimetry.groups.symmetric_set import SymmetricSet
from cayley_isoperimetry.model.report import AssertionRecord, Provenance, Quantity
from cayley_isoperimetry.model.task.base import Task, TaskContext
from cayley_isoperimetry.model.task.result import TaskResult
from cayley_isoperimetry.spectral.convolution import FiniteSupportFunction
from cayley_isoperimetry.spectral.inequalities import is_fully_solvable, mohar_check
from cayley_isoperimetry.spectral.radius import (
    DEFAULT_MAX_SUPPORT,
    EXACT_MODE_MAX_STEPS,
    SpectralEstimate,
    kesten_bound,
    operator_norm_lb,
    rd_growth_fit,
    rd_ratio_scan,
    return_probability_bounds,
)
from cayley_isoperimetry.utils.datetime_ops import get_utc_now_formatted
from cayley_isoperimetry.verify.checks import (
    ANCHOR_CONSERVATION,
    ANCHOR_KESTEN,
    ANCHOR_MOHAR,
)

ANCHOR_RD = "rapid decay: ‖a‖_op ≤ C(1+d)^k ‖a‖₂ on ball(d)"
TOLERANCE = 1e-10


class SpectralTask(Task):
    """Lower bounds for the spectral radius ρ(Γ,S) and the Mohar inequalities.

    Bounds come from return probabilities p_{2k}(e)^{1/2k} and from norms of
    1_S compressed to balls. An optional rapid-decay scan reports
    ‖a‖_op/‖a‖₂ over supports in growing balls.
    """

    DEFAULT_K_MAX: int = 8
    DEFAULT_COMPRESSION_RADII: List[int] = [1, 2, 3]
    DEFAULT_RD_D_MAX: int = 0
    DEFAULT_RD_TRIALS: int = 8

    def __init__(self, context: TaskContext):
        super().__init__(context)

    @property
    def name(self) -> str:
        return "spectral"

    async def execute(self) -> TaskResult:
        try:
            k_max = self.get_capped_int("k_max", self.DEFAULT_K_MAX)
            exact_limit = int(
                self.get_parameter("exact_limit", default=EXACT_MODE_MAX_STEPS)
            )
            # walks stop early rather than outgrow the support cap
            max_support = self.get_capped_int(
                "max_support",
                int(self.context.conf.get("caps.max_support", DEFAULT_MAX_SUPPORT)),
            )
            radii = [
                int(r)
                for r in self.get_parameter(
                    "compression_radii", default=self.DEFAULT_COMPRESSION_RADII
                )
            ]
            radius_cap = self.context.conf.get("caps.radius")
            if radius_cap is not None and any(r > int(radius_cap) for r in radii):
                raise ParameterError(
                    f"compression_radii {radii} exceed the desk-scale cap {radius_cap}"
                )
            rd_d_max = self.get_capped_int("rd_d_max", self.DEFAULT_RD_D_MAX)
            rd_trials = int(
                self.get_parameter("rd_trials", default=self.DEFAULT_RD_TRIALS)
            )
            seed = self.seed()

            outcomes = await self.per_set(
                lambda s: self._run_set(
                    s, k_max, exact_limit, max_support, radii, rd_d_max, rd_trials, seed
                )
            )

            data: Dict[str, Any] = {}
            assertions: List[AssertionRecord] = []
            curves: Dict[str, List[Dict[str, Any]]] = {
                "return_probability": [],
                "compression": [],
                "rd_scan": [],
            }
            for generating_set, (block, records, rows) in zip(
                self.context.generating_sets, outcomes
            ):
                data[generating_set.label] = block
                assertions += records
                for key, value in rows.items():
                    curves[key] += value

            self.logger.info(
                f"Spectral bounds computed for {len(outcomes)} generating set(s)"
            )
            return TaskResult(
                task_name=self.name,
                success=True,
                created_at=get_utc_now_formatted(),
                data={"sets": data},
                metrics={"sets_processed": len(outcomes), "k_max": k_max},
                assertions=assertions,
                curves={k: v for k, v in curves.items() if v},
            )
        except Exception as e:
            return self.failure(e, metrics={"sets_processed": 0})

    def _run_set(
        self,
        generating_set: SymmetricSet,
        k_max: int,
        exact_limit: int,
        max_support: int,
        radii: List[int],
        rd_d_max: int,
        rd_trials: int,
        seed: int,
    ) -> tuple:
        backend = self.context.backend
        label = generating_set.label
        degree = generating_set.size

        estimate = return_probability_bounds(
            backend, generating_set, k_max, exact_limit, max_support=max_support
        )
        indicator = FiniteSupportFunction.indicator(generating_set.elements)
        for radius in radii:
            norm = operator_norm_lb(
                backend, indicator, radius, generators=generating_set.elements
            )
            estimate.compression_norms.append((radius, norm))
        rho = estimate.rho()

        records = [
            AssertionRecord(
                f"spectral.conservation.{label}",
                ANCHOR_CONSERVATION,
                estimate.conservation_ok and estimate.monotone_ok,
                _steps_detail(estimate, k_max, exact_limit),
            )
        ]
        kesten = kesten_bound(degree)
        if estimate.analytic is not None:
            records.append(
                AssertionRecord(
                    f"spectral.below_exact.{label}",
                    ANCHOR_CONSERVATION,
                    estimate.best_lower_bound <= estimate.analytic + TOLERANCE,
                    f"best bound {estimate.best_lower_bound:.10f} "
                    f"vs ρ = {estimate.analytic:.10f}",
                )
            )
            records.append(
                AssertionRecord(
                    f"spectral.kesten.{label}",
                    ANCHOR_KESTEN,
                    estimate.analytic >= kesten - TOLERANCE,
                    f"ρ = {estimate.analytic:.10f} >= {kesten:.10f}",
                )
            )

        mohar = None
        if is_fully_solvable(backend, generating_set):
            h = analytic_h(backend, generating_set)
            report = mohar_check(degree, Quantity(h, Provenance.ANALYTIC), rho)
            mohar = report.to_dict()
            records.append(
                AssertionRecord(
                    f"spectral.mohar.{label}",
                    ANCHOR_MOHAR,
                    report.passed,
                    f"{report.lower:.6f} <= {report.h:.6f} <= {report.upper:.6f}",
                )
            )

        rows: Dict[str, List[Dict[str, Any]]] = {
            "return_probability": [
                {
                    "set": label,
                    "two_k": b.two_k,
                    "p_return": float(b.probability),
                    "bound": b.bound,
                    "mode": b.mode,
                }
                for b in estimate.lower_bounds
            ],
            "compression": [
                {"set": label, "radius": r, "norm": n, "rho_lower": n / degree}
                for r, n in estimate.compression_norms
            ],
            "rd_scan": [],
        }

        rd_block = None
        if rd_d_max > 0:
            points = rd_ratio_scan(backend, generating_set, rd_d_max, rd_trials, seed)
            fit = rd_growth_fit(points) if len(points) >= 2 else None
            rd_block = {
                "fit": None
                if fit is None
                else {
                    "polynomial_degree": fit.polynomial_degree,
                    "exponential_rate": fit.exponential_rate,
                },
                "sanity_ok": all(p.within_sanity_bound for p in points),
            }
            records.append(
                AssertionRecord(
                    f"spectral.rd_sanity.{label}",
                    ANCHOR_RD,
                    rd_block["sanity_ok"],
                    "ratio ≤ √|support| at every radius",
                )
            )
            rows["rd_scan"] = [
                {
                    "set": label,
                    "d": p.d,
                    "ratio": p.ratio,
                    "indicator_ratio": p.indicator_ratio,
                    "support_size": p.support_size,
                    "truncation": p.truncation,
                }
                for p in points
            ]

        block = {
            "size": degree,
            "rho": rho.to_dict(),
            "best_lower_bound": estimate.best_lower_bound,
            "kesten_bound": Quantity(kesten, Provenance.CITED).to_dict(),
            "conservation_ok": estimate.conservation_ok,
            "monotone_ok": estimate.monotone_ok,
            "truncated_at": estimate.truncated_at,
            "max_support": estimate.max_support,
            "compression_monotone": estimate.compression_monotone(),
            "return_probabilities": [
                {
                    "two_k": b.two_k,
                    "p_return": Quantity(
                        b.probability,
                        Provenance.EXACT if b.mode == "exact" else Provenance.ESTIMATE,
                    ).to_dict(),
                    "bound": Quantity(b.bound, Provenance.LOWER_BOUND).to_dict(),
                }
                for b in estimate.lower_bounds
            ],
            "mohar": mohar,
            "rapid_decay": rd_block,
        }
        return block, records, rows


def _steps_detail(estimate: SpectralEstimate, k_max: int, exact_limit: int) -> str:
    last = estimate.lower_bounds[-1].two_k if estimate.lower_bounds else 0
    detail = f"exact up to 2k={min(last, exact_limit)}"
    if estimate.truncated_at is not None:
        detail += (
            f"; stopped before 2k={estimate.truncated_at} of {2 * k_max} "
            f"(max_support={estimate.max_support})"
        )
    return detail
