from typing import Any, Dict, Optional

from cayley_isoperimetry.cogrowth.bounds import burnside_bounds, grigorchuk_rho
from cayley_isoperimetry.cogrowth.counts import reduced_word_counts
from cayley_isoperimetry.cogrowth.estimate import cogrowth_estimate
from cayley_isoperimetry.exceptions import ParameterError
from cayley_isoperimetry.model.report import AssertionRecord, Provenance, Quantity
from cayley_isoperimetry.model.task.base import Task, TaskContext
from cayley_isoperimetry.model.task.result import TaskResult
from cayley_isoperimetry.utils.datetime_ops import get_utc_now_formatted
from cayley_isoperimetry.verify.checks import ANCHOR_BURNSIDE, ANCHOR_COGROWTH

TOLERANCE = 1e-12


class CogrowthTask(Task):
    """Cogrowth of the kernel of F_m → G and the spectral radius it implies.

    The homomorphism sends the i-th free generator to the i-th entry of
    ``images`` (words in the job group). Without ``images`` the group's own
    letters are used, so m is the number of letters.
    """

    DEFAULT_K_MAX: int = 20

    def __init__(self, context: TaskContext):
        super().__init__(context)

    @property
    def name(self) -> str:
        return "cogrowth"

    async def execute(self) -> TaskResult:
        try:
            backend = self.context.backend
            k_max = self.get_capped_int("k_max", self.DEFAULT_K_MAX, "cogrowth_k_max")
            words = self.get_parameter("images", default=None) or list(backend.letters)
            images = [backend.evaluate(w) for w in words]
            m = len(images)
            if m < 2:
                raise ParameterError(
                    f"Cogrowth needs at least two generator images, got {m}"
                )

            counts = reduced_word_counts(m, images, backend, k_max)
            estimate = cogrowth_estimate(counts)
            label = self.context.group_label

            assertions = [
                AssertionRecord(
                    f"cogrowth.conservation.{label}",
                    ANCHOR_COGROWTH,
                    counts.conservation_ok,
                    f"reduced words of every length up to {k_max}",
                ),
            ]
            rho_block: Optional[Dict[str, Any]] = None
            if counts.injective:
                # α = √(2m−1), so ρ is the free-group value
                rho_block = grigorchuk_rho(estimate.alpha_min, m).to_dict()
                rho_block["provenance"] = Provenance.ANALYTIC.value
            elif not estimate.trivial_kernel:
                # finite-k ratios can overshoot 2m−1; the clamped value is reported
                alpha = estimate.clamped_alpha
                assertions.append(
                    AssertionRecord(
                        f"cogrowth.range.{label}",
                        ANCHOR_COGROWTH,
                        estimate.alpha_min - TOLERANCE
                        <= alpha
                        <= estimate.alpha_max + TOLERANCE,
                        f"α ≈ {estimate.point_estimate:.6f} reported as {alpha:.6f}, "
                        f"raw in range: "
                        f"{estimate.upper_in_range and estimate.lower_in_range}",
                    )
                )
                bound = grigorchuk_rho(alpha, m)
                rho_block = bound.to_dict()
                rho_block["provenance"] = Provenance.ESTIMATE.value
                assertions.append(
                    AssertionRecord(
                        f"cogrowth.weak_bound.{label}",
                        ANCHOR_COGROWTH,
                        bound.rho <= bound.alpha / m + TOLERANCE,
                        f"ρ ≈ {bound.rho:.6f} <= α/m = {bound.alpha / m:.6f}",
                    )
                )

            data: Dict[str, Any] = {
                "rank": m,
                "images": counts.image_encodings,
                "injective": counts.injective,
                "counts": counts.counts,
                "estimate": estimate.to_dict(),
                "rho": rho_block,
            }

            burnside = self.get_parameter("burnside", default=None)
            if burnside:
                bounds = burnside_bounds(
                    int(burnside.get("m", 2)),
                    int(burnside.get("a", 665)),
                    burnside.get("delta"),
                )
                data["burnside"] = bounds.to_dict()
                data["burnside"]["r_term_lower"] = Quantity(
                    bounds.r_term_lower, Provenance.LOWER_BOUND
                ).to_dict()
                assertions.append(
                    AssertionRecord(
                        f"cogrowth.burnside.m{bounds.m}a{bounds.a}",
                        ANCHOR_BURNSIDE,
                        bounds.rho_grigorchuk <= bounds.rho_upper + TOLERANCE,
                        f"ρ ≤ {bounds.rho_grigorchuk:.6f}, "
                        f"burn reached: {bounds.burn_reached}",
                    )
                )

            self.logger.info(
                f"Cogrowth counts up to k={k_max} for m={m}: "
                f"α ≈ {estimate.point_estimate}, "
                f"trivial kernel: {estimate.trivial_kernel}"
            )
            return TaskResult(
                task_name=self.name,
                success=True,
                created_at=get_utc_now_formatted(),
                data=data,
                metrics={"k_max": k_max, "rank": m},
                assertions=assertions,
                curves={
                    "cogrowth_counts": counts.rows(),
                    "cogrowth_ratios": [
                        {"k": k, "alpha_estimate": a}
                        for k, a in estimate.ratio_estimates
                    ],
                },
            )
        except Exception as e:
            return self.failure(e, metrics={"k_max": 0})
