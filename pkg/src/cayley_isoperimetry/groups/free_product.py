from typing import Any, Dict, List, Optional, Sequence, Tuple

from cayley_isoperimetry.exceptions import DomainError, ParameterError
from cayley_isoperimetry.groups.base import GroupBackend

Syllable = Tuple[int, int]
NormalForm = Tuple[Syllable, ...]


class FreeProductCyclicGroup(GroupBackend):
    """Free product C_{n1} * ... * C_{nk} of finite cyclic groups.

    Elements are alternating syllable sequences ``((factor, exponent), ...)``
    with consecutive factors distinct and 0 < exponent < n_factor. Letter
    ``x<i>`` generates the i-th factor.
    """

    kind = "free_product_cyclic"

    def __init__(self, orders: Sequence[int]):
        if not orders:
            raise ParameterError("Free product needs at least one factor")
        if any(int(n) < 2 for n in orders):
            raise ParameterError(
                f"Factor orders must be at least 2, got {list(orders)}"
            )
        self.orders = [int(n) for n in orders]
        super().__init__({f"x{i + 1}": ((i, 1),) for i in range(len(self.orders))})

    @property
    def identity(self) -> NormalForm:
        return ()

    def multiply(self, g: NormalForm, h: NormalForm) -> NormalForm:
        left: List[Syllable] = list(g)
        right: List[Syllable] = list(h)
        while left and right and left[-1][0] == right[0][0]:
            factor = left[-1][0]
            exponent = (left[-1][1] + right[0][1]) % self.orders[factor]
            left.pop()
            right.pop(0)
            if exponent:
                left.append((factor, exponent))
                break
        return tuple(left + right)

    def inverse(self, g: NormalForm) -> NormalForm:
        return tuple(
            (factor, self.orders[factor] - exponent) for factor, exponent in reversed(g)
        )

    def encode(self, g: NormalForm) -> str:
        if not g:
            return "1"
        return " ".join(f"x{factor + 1}^{exponent}" for factor, exponent in g)

    def elements(self) -> List[NormalForm]:
        if not self.is_finite:
            raise DomainError("Free product of two or more factors is infinite")
        return [()] + [((0, k),) for k in range(1, self.orders[0])]

    @property
    def descriptor(self) -> Dict[str, Any]:
        return {"type": self.kind, "orders": list(self.orders)}

    @property
    def is_finite(self) -> bool:
        return len(self.orders) == 1

    @property
    def is_amenable(self) -> Optional[bool]:
        return len(self.orders) == 1 or self.orders == [2, 2]

    @property
    def contains_free_subgroup(self) -> Optional[bool]:
        return not self.is_amenable
