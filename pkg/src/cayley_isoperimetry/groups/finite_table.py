import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from cayley_isoperimetry.exceptions import AssociativityError, InputError
from cayley_isoperimetry.groups.base import GroupBackend

logger = logging.getLogger(__name__)

FULL_CHECK_MAX_ORDER = 64
SAMPLED_TRIPLES = 10_000


class FiniteTableGroup(GroupBackend):
    """Finite group given by its multiplication table.

    Row g, column h of the table holds the index of g·h (0-based). Elements
    are row indices. The table is validated on construction: Latin square,
    two-sided identity, and associativity (all triples for n ≤ 64, otherwise
    a seeded sample of 10⁴ triples).

    Args:
        table: n×n nested sequence or array of element indices
        generators: Optional letter → element-index map; defaults to one
            letter ``g<i>`` per non-identity element
        seed: Seed for the sampled associativity check
    """

    kind = "finite_table"

    def __init__(
        self,
        table: Union[Sequence[Sequence[int]], np.ndarray],
        generators: Optional[Dict[str, int]] = None,
        seed: int = 0,
    ):
        try:
            matrix = np.asarray(table, dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise InputError(f"Multiplication table is not an integer matrix: {e}")
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.size == 0:
            raise InputError(
                f"Multiplication table must be square, got shape {matrix.shape}"
            )
        n = matrix.shape[0]
        if matrix.min() < 0 or matrix.max() >= n:
            raise InputError(f"Table entries must lie in 0..{n - 1}")

        self.table = matrix
        self.n = n
        self._identity = self._find_identity()
        self._check_latin_square()
        self._check_associativity(seed)
        self._inverses = [
            int(np.flatnonzero(matrix[g] == self._identity)[0]) for g in range(n)
        ]

        if generators is None:
            generators = {f"g{i}": i for i in range(n) if i != self._identity}
        for name, index in generators.items():
            if not 0 <= int(index) < n:
                raise InputError(f"Generator {name} refers to missing element {index}")
        self._generator_spec = {name: int(index) for name, index in generators.items()}
        super().__init__(self._generator_spec)

    @classmethod
    def from_csv(
        cls, path: Union[str, Path], generators: Optional[Dict[str, int]] = None
    ) -> "FiniteTableGroup":
        """Load a table from CSV: n rows of n comma-separated indices, no header."""
        try:
            frame = pd.read_csv(path, header=None)
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise InputError(f"Cannot parse multiplication table {path}: {e}")
        logger.debug(f"Loaded {frame.shape[0]}x{frame.shape[1]} table from {path}")
        return cls(frame.to_numpy(), generators=generators)

    def _find_identity(self) -> int:
        reference = np.arange(self.n)
        for e in range(self.n):
            if np.array_equal(self.table[e], reference) and np.array_equal(
                self.table[:, e], reference
            ):
                return e
        raise AssociativityError("Multiplication table has no two-sided identity")

    def _check_latin_square(self) -> None:
        reference = np.arange(self.n)
        for g in range(self.n):
            if not np.array_equal(np.sort(self.table[g]), reference):
                raise AssociativityError(
                    f"Row {g} is not a permutation of the elements"
                )
            if not np.array_equal(np.sort(self.table[:, g]), reference):
                raise AssociativityError(
                    f"Column {g} is not a permutation of the elements"
                )

    def _check_associativity(self, seed: int) -> None:
        t = self.table
        if self.n <= FULL_CHECK_MAX_ORDER:
            # left[a, b, c] = (ab)c, right[a, b, c] = a(bc)
            left = t[t]
            right = t[:, t]
            bad = np.argwhere(left != right)
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(self.n, size=(3, SAMPLED_TRIPLES))
            mask = t[t[a, b], c] != t[a, t[b, c]]
            bad = np.stack([a[mask], b[mask], c[mask]], axis=1)
        if len(bad):
            a, b, c = (int(x) for x in bad[0])
            raise AssociativityError(
                "Multiplication table is not associative: "
                f"({a}*{b})*{c} != {a}*({b}*{c})"
            )

    @property
    def identity(self) -> int:
        return self._identity

    def multiply(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inverse(self, g: int) -> int:
        return self._inverses[g]

    def encode(self, g: int) -> str:
        return str(g)

    def elements(self) -> List[int]:
        return list(range(self.n))

    @property
    def descriptor(self) -> Dict[str, Any]:
        return {
            "type": self.kind,
            "table": self.table.tolist(),
            "generators": dict(self._generator_spec),
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
