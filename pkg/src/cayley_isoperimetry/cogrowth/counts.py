"""Kernel word counts for a homomorphism F_m → G.

c_k is the number of freely reduced words of length k in F_m whose image in G
is the identity. The recursion runs on states (g, l): the word evaluates to
g and its last formal letter is l. Letters 0..m−1 are the generators and
m..2m−1 their formal inverses, so letter l is undone by (l + m) mod 2m.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from cayley_isoperimetry.exceptions import InputError, ParameterError, UnsupportedError
from cayley_isoperimetry.groups.base import Element, GroupBackend
from cayley_isoperimetry.groups.free import FreeGroup

logger = logging.getLogger(__name__)


@dataclass
class CogrowthCounts:
    """Exact kernel word counts c_1..c_{k_max}.

    Attributes:
        rank: m
        image_encodings: Images of the m generators in the target
        target: Target descriptor
        counts: c_k at index k − 1
        conservation_ok: Total reduced words per length matched 2m(2m−1)^{k−1}
        injective: Target is free and the images are a basis up to inversion
            and permutation, so the kernel is trivial
    """

    rank: int
    image_encodings: List[str]
    target: dict
    counts: List[int] = field(default_factory=list)
    conservation_ok: bool = True
    injective: bool = False

    @property
    def k_max(self) -> int:
        return len(self.counts)

    def total_words(self, k: int) -> int:
        m = self.rank
        return 2 * m * (2 * m - 1) ** (k - 1)

    def rows(self) -> List[dict]:
        return [{"k": k, "c_k": c} for k, c in enumerate(self.counts, start=1)]


def _is_free_basis(target: FreeGroup, images: Sequence[Element]) -> bool:
    letters = []
    for g in images:
        if len(g) != 1:  # type: ignore[arg-type]
            return False
        letters.append(abs(g[0]))  # type: ignore[index]
    return sorted(letters) == list(range(1, target.rank + 1))


def reduced_word_counts(
    m: int,
    images: Sequence[Element],
    target: GroupBackend,
    k_max: int,
) -> CogrowthCounts:
    """Count freely reduced kernel words of each length up to k_max.

    Raises:
        ParameterError: m < 1 or k_max < 1
        InputError: number of images differs from m
        UnsupportedError: infinite target other than a free group onto a basis
    """
    if m < 1:
        raise ParameterError(f"Free rank must be at least 1, got {m}")
    if k_max < 1:
        raise ParameterError(f"k_max must be at least 1, got {k_max}")
    if len(images) != m:
        raise InputError(f"Expected {m} generator images, got {len(images)}")

    result = CogrowthCounts(
        rank=m,
        image_encodings=[target.encode(g) for g in images],
        target=target.descriptor,
    )

    if not target.is_finite:
        same_rank = isinstance(target, FreeGroup) and target.rank == m
        if same_rank and _is_free_basis(target, images):
            result.counts = [0] * k_max
            result.injective = True
            logger.info(f"Images form a free basis of F_{m}; kernel is trivial")
            return result
        raise UnsupportedError(
            f"Kernel counts need a finite target or a free basis, got {target.kind}"
        )

    elements = target.elements()
    index = {g: i for i, g in enumerate(elements)}
    n = len(elements)
    letters = list(images) + [target.inverse(g) for g in images]
    # right multiplication by each formal letter as an index permutation
    moves = [
        np.array([index[target.multiply(x, g)] for x in elements], dtype=np.int64)
        for g in letters
    ]
    identity_index = index[target.identity]

    states = np.zeros((n, 2 * m), dtype=object)
    states[:, :] = 0
    for letter, g in enumerate(letters):
        states[index[g], letter] += 1

    for k in range(1, k_max + 1):
        if k > 1:
            totals = states.sum(axis=1)
            next_states = np.zeros((n, 2 * m), dtype=object)
            next_states[:, :] = 0
            for letter in range(2 * m):
                undo = (letter + m) % (2 * m)
                next_states[moves[letter], letter] = totals - states[:, undo]
            states = next_states
        grand_total = int(states.sum())
        if grand_total != result.total_words(k):
            result.conservation_ok = False
            logger.error(f"Reduced word conservation failed at k={k}: {grand_total}")
        result.counts.append(int(states[identity_index].sum()))

    logger.debug(f"Kernel counts up to k={k_max}: last c_k = {result.counts[-1]}")
    return result
