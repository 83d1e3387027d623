from pathlib import Path
from typing import Any, Dict

from cayley_isoperimetry.exceptions import InputError
from cayley_isoperimetry.groups.abelian import CyclicGroup, FreeAbelianGroup
from cayley_isoperimetry.groups.base import GroupBackend
from cayley_isoperimetry.groups.finite_table import FiniteTableGroup
from cayley_isoperimetry.groups.free import FreeGroup
from cayley_isoperimetry.groups.free_product import FreeProductCyclicGroup
from cayley_isoperimetry.groups.lamplighter import LamplighterGroup
from cayley_isoperimetry.groups.permutation import PermutationGroup

GROUP_TYPES = (
    "free",
    "free_abelian",
    "integers",
    "cyclic",
    "finite_table",
    "permutation",
    "free_product_cyclic",
    "lamplighter",
)


def backend_from_descriptor(descriptor: Dict[str, Any]) -> GroupBackend:
    """Build a group backend from its JSON descriptor.

    Examples of descriptors::

        {"type": "free", "rank": 2}
        {"type": "free_abelian", "rank": 2}
        {"type": "integers"}
        {"type": "cyclic", "n": 6}
        {"type": "finite_table", "csv": "tables/s3.csv"}
        {"type": "finite_table", "table": [[0, 1], [1, 0]]}
        {"type": "permutation", "generators": [[1, 0, 2], [0, 2, 1]]}
        {"type": "free_product_cyclic", "orders": [2, 3]}
        {"type": "lamplighter"}

    Raises:
        InputError: Unknown type or missing fields
    """
    group_type = descriptor.get("type")
    try:
        if group_type == "free":
            return FreeGroup(int(descriptor["rank"]))
        if group_type == "free_abelian":
            return FreeAbelianGroup(int(descriptor["rank"]))
        if group_type == "integers":
            return FreeAbelianGroup(1)
        if group_type == "cyclic":
            return CyclicGroup(int(descriptor["n"]))
        if group_type == "finite_table":
            generators = descriptor.get("generators")
            if "csv" in descriptor:
                return FiniteTableGroup.from_csv(Path(descriptor["csv"]), generators)
            return FiniteTableGroup(descriptor["table"], generators)
        if group_type == "permutation":
            return PermutationGroup(descriptor["generators"])
        if group_type == "free_product_cyclic":
            return FreeProductCyclicGroup(descriptor["orders"])
        if group_type == "lamplighter":
            return LamplighterGroup()
    except KeyError as e:
        raise InputError(
            f"Group descriptor of type '{group_type}' is missing field {e}"
        )
    raise InputError(
        f"Unknown group type '{group_type}' (expected one of {', '.join(GROUP_TYPES)})"
    )
