import string
from typing import Any, Dict, Optional, Tuple

from cayley_isoperimetry.exceptions import ParameterError
from cayley_isoperimetry.groups.base import GroupBackend

LETTERS = string.ascii_lowercase

FreeWord = Tuple[int, ...]


class FreeGroup(GroupBackend):
    """Free group of rank m on letters a, b, c, ...

    Elements are freely reduced words stored as tuples of nonzero ints:
    ``+i`` is the i-th letter (1-based) and ``-i`` its inverse. The encoding
    writes inverses in upper case, e.g. ``aB`` for a·b⁻¹, and ``1`` for the
    identity.
    """

    kind = "free"

    def __init__(self, rank: int):
        if not 1 <= rank <= len(LETTERS):
            raise ParameterError(
                f"Free group rank must be in 1..{len(LETTERS)}, got {rank}"
            )
        self.rank = rank
        super().__init__({LETTERS[i]: (i + 1,) for i in range(rank)})

    @property
    def identity(self) -> FreeWord:
        return ()

    def multiply(self, g: FreeWord, h: FreeWord) -> FreeWord:
        k = 0
        while k < len(g) and k < len(h) and g[len(g) - 1 - k] == -h[k]:
            k += 1
        return g[: len(g) - k] + h[k:]

    def inverse(self, g: FreeWord) -> FreeWord:
        return tuple(-x for x in reversed(g))

    def encode(self, g: FreeWord) -> str:
        if not g:
            return "1"
        return "".join(
            LETTERS[x - 1] if x > 0 else LETTERS[-x - 1].upper() for x in g
        )

    def word_length(self, g: FreeWord) -> int:
        """Length with respect to the standard basis."""
        return len(g)

    @property
    def descriptor(self) -> Dict[str, Any]:
        return {"type": self.kind, "rank": self.rank}

    @property
    def is_amenable(self) -> Optional[bool]:
        return self.rank == 1

    @property
    def contains_free_subgroup(self) -> Optional[bool]:
        return self.rank >= 2
