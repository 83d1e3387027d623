from typing import Any, Dict, List, Optional, Sequence, Tuple

from cayley_isoperimetry.exceptions import InputError
from cayley_isoperimetry.groups.base import GroupBackend

Permutation = Tuple[int, ...]


class PermutationGroup(GroupBackend):
    """Group generated by permutations given as one-line image lists.

    Words act left to right: (g·h)[i] = h[g[i]]. Letters are p1..pk in the
    order the generators are listed.
    """

    kind = "permutation"

    def __init__(self, generators: Sequence[Sequence[int]]):
        if not generators:
            raise InputError("Permutation group needs at least one generator")
        degree = len(generators[0])
        perms: List[Permutation] = []
        for images in generators:
            perm = tuple(int(i) for i in images)
            if len(perm) != degree or sorted(perm) != list(range(degree)):
                raise InputError(
                    f"Not a permutation of 0..{degree - 1}: {list(images)}"
                )
            perms.append(perm)
        self.degree = degree
        self._generator_images = perms
        super().__init__({f"p{i + 1}": perm for i, perm in enumerate(perms)})

    @property
    def identity(self) -> Permutation:
        return tuple(range(self.degree))

    def multiply(self, g: Permutation, h: Permutation) -> Permutation:
        return tuple(h[i] for i in g)

    def inverse(self, g: Permutation) -> Permutation:
        result = [0] * len(g)
        for i, image in enumerate(g):
            result[image] = i
        return tuple(result)

    def encode(self, g: Permutation) -> str:
        return ",".join(str(i) for i in g)

    @property
    def descriptor(self) -> Dict[str, Any]:
        return {
            "type": self.kind,
            "generators": [list(p) for p in self._generator_images],
        }

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def is_amenable(self) -> Optional[bool]:
        return True

    @property
    def contains_free_subgroup(self) -> Optional[bool]:
        return False
