"""Built-in instance zoo used by ``list-groups`` and ``selfcheck``."""

from typing import Callable, Dict, List

from cayley_isoperimetry.groups.abelian import CyclicGroup, FreeAbelianGroup
from cayley_isoperimetry.groups.base import GroupBackend
from cayley_isoperimetry.groups.finite_table import FiniteTableGroup
from cayley_isoperimetry.groups.free import FreeGroup
from cayley_isoperimetry.groups.free_product import FreeProductCyclicGroup
from cayley_isoperimetry.groups.lamplighter import LamplighterGroup

KLEIN_FOUR_TABLE: List[List[int]] = [
    [0, 1, 2, 3],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 1, 0],
]

# S3 with 0 = id, 1 = (012), 2 = (021), 3 = (01), 4 = (02), 5 = (12)
SYMMETRIC_THREE_TABLE: List[List[int]] = [
    [0, 1, 2, 3, 4, 5],
    [1, 2, 0, 5, 3, 4],
    [2, 0, 1, 4, 5, 3],
    [3, 4, 5, 0, 1, 2],
    [4, 5, 3, 2, 0, 1],
    [5, 3, 4, 1, 2, 0],
]

ZOO: Dict[str, Callable[[], GroupBackend]] = {
    "Z": lambda: FreeAbelianGroup(1),
    "Z2": lambda: FreeAbelianGroup(2),
    "Z/4": lambda: CyclicGroup(4),
    "Z/5": lambda: CyclicGroup(5),
    "Z/6": lambda: CyclicGroup(6),
    "(Z/2)^2": lambda: FiniteTableGroup(KLEIN_FOUR_TABLE),
    "S3": lambda: FiniteTableGroup(SYMMETRIC_THREE_TABLE, generators={"r": 1, "s": 3}),
    "F2": lambda: FreeGroup(2),
    "C2*C3": lambda: FreeProductCyclicGroup([2, 3]),
    "lamplighter": lambda: LamplighterGroup(),
}


def zoo_backends() -> Dict[str, GroupBackend]:
    return {name: factory() for name, factory in ZOO.items()}
