from dataclasses import dataclass
from typing import Callable, Dict

from cayley_isoperimetry.exceptions import InputError
from cayley_isoperimetry.groups.base import Element
from cayley_isoperimetry.spectral.convolution import FiniteSupportFunction


@dataclass(frozen=True)
class QuotientMap:
    """Surjection π: Γ → Λ with a section R choosing one representative per coset.

    Attributes:
        projection: π
        section: Λ-element → chosen Γ-representative
    """

    projection: Callable[[Element], Element]
    section: Dict[Element, Element]

    @classmethod
    def integers_mod(cls, n: int) -> "QuotientMap":
        """ℤ → ℤ/n with representatives 0..n−1; ℤ is free abelian of rank one."""
        return cls(projection=lambda x: x[0] % n, section={i: (i,) for i in range(n)})


def quotient_lift(
    f: FiniteSupportFunction, quotient: QuotientMap
) -> FiniteSupportFunction:
    """f̃(x) = f(π(x)) on the section, 0 elsewhere; every ℓᵖ norm is preserved.

    Raises:
        InputError: a support element has no representative, a representative
            does not project back, or two cosets share a representative
    """
    lifted: Dict[Element, object] = {}
    for coset, value in f.items():
        if coset not in quotient.section:
            raise InputError(f"No representative for quotient element {coset!r}")
        x = quotient.section[coset]
        if quotient.projection(x) != coset:
            raise InputError(f"Representative {x!r} does not project to {coset!r}")
        if x in lifted:
            raise InputError(f"Representative {x!r} is shared by two cosets")
        lifted[x] = value
    return FiniteSupportFunction(lifted)  # type: ignore[arg-type]
