from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Tuple, Union

from cayley_isoperimetry.groups.base import Element, GroupBackend

Number = Union[int, Fraction, float]


@dataclass
class FiniteSupportFunction:
    """Finitely supported function Γ → ℝ; only nonzero values are stored."""

    values: Dict[Element, Number] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.values = {g: v for g, v in self.values.items() if v != 0}

    @classmethod
    def indicator(
        cls, elements: Iterable[Element], height: Number = 1
    ) -> "FiniteSupportFunction":
        return cls({g: height for g in elements})

    @classmethod
    def delta(cls, g: Element) -> "FiniteSupportFunction":
        return cls({g: 1})

    @classmethod
    def uniform(cls, elements: Iterable[Element]) -> "FiniteSupportFunction":
        """Markov kernel (1/|S|)·1_S with exact rational values."""
        members = list(elements)
        return cls({g: Fraction(1, len(members)) for g in members})

    @property
    def support(self) -> List[Element]:
        return list(self.values)

    @property
    def support_size(self) -> int:
        return len(self.values)

    def __getitem__(self, g: Element) -> Number:
        return self.values.get(g, 0)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.values)

    def items(self) -> Iterable[Tuple[Element, Number]]:
        return self.values.items()

    def absolute(self) -> "FiniteSupportFunction":
        return FiniteSupportFunction({g: abs(v) for g, v in self.values.items()})

    def total(self) -> Number:
        return sum(self.values.values(), 0)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values.values())


def convolve(
    backend: GroupBackend, f: FiniteSupportFunction, g: FiniteSupportFunction
) -> FiniteSupportFunction:
    """(f * g)(x) = Σ_y f(y) g(y⁻¹x); supported in supp(f)·supp(g)."""
    result: Dict[Element, Number] = {}
    for y, fy in f.items():
        for z, gz in g.items():
            x = backend.multiply(y, z)
            result[x] = result.get(x, 0) + fy * gz
    return FiniteSupportFunction(result)
