from typing import Any, Dict, List, Optional, Tuple

from cayley_isoperimetry.exceptions import ParameterError
from cayley_isoperimetry.groups.base import GroupBackend

Vector = Tuple[int, ...]


class FreeAbelianGroup(GroupBackend):
    """ℤ^d with unit-vector letters e1..ed; elements are integer tuples."""

    kind = "free_abelian"

    def __init__(self, rank: int):
        if rank < 1:
            raise ParameterError(f"Free abelian rank must be positive, got {rank}")
        self.rank = rank
        letters = {
            f"e{i + 1}": tuple(1 if j == i else 0 for j in range(rank))
            for i in range(rank)
        }
        super().__init__(letters)

    @property
    def identity(self) -> Vector:
        return (0,) * self.rank

    def multiply(self, g: Vector, h: Vector) -> Vector:
        return tuple(a + b for a, b in zip(g, h))

    def inverse(self, g: Vector) -> Vector:
        return tuple(-a for a in g)

    def encode(self, g: Vector) -> str:
        return ",".join(str(a) for a in g)

    def box(self, k: int) -> List[Vector]:
        """Elements of max-norm at most k, in lexicographic order."""
        points: List[Vector] = [()]
        for _ in range(self.rank):
            points = [p + (a,) for p in points for a in range(-k, k + 1)]
        return points

    @property
    def descriptor(self) -> Dict[str, Any]:
        return {"type": self.kind, "rank": self.rank}

    @property
    def is_amenable(self) -> Optional[bool]:
        return True

    @property
    def contains_free_subgroup(self) -> Optional[bool]:
        return False


class CyclicGroup(GroupBackend):
    """ℤ/n with the single letter t = 1; elements are residues 0..n-1."""

    kind = "cyclic"

    def __init__(self, n: int):
        if n < 1:
            raise ParameterError(f"Cyclic order must be positive, got {n}")
        self.n = n
        super().__init__({"t": 1 % n})

    @property
    def identity(self) -> int:
        return 0

    def multiply(self, g: int, h: int) -> int:
        return (g + h) % self.n

    def inverse(self, g: int) -> int:
        return (-g) % self.n

    def encode(self, g: int) -> str:
        return str(g)

    def elements(self) -> List[int]:
        return list(range(self.n))

    @property
    def descriptor(self) -> Dict[str, Any]:
        return {"type": self.kind, "n": self.n}

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def is_amenable(self) -> Optional[bool]:
        return True

    @property
    def contains_free_subgroup(self) -> Optional[bool]:
        return False
