from typing import Any, Dict, Optional, Tuple

from cayley_isoperimetry.groups.base import GroupBackend

LampState = Tuple[Tuple[int, ...], int]


class LamplighterGroup(GroupBackend):
    """Lamplighter group ℤ/2 ≀ ℤ.

    An element is (lit lamps as a sorted tuple, cursor position). Letter ``t``
    moves the cursor one step right, letter ``a`` toggles the lamp under the
    cursor. Product: (L1, c1)·(L2, c2) = (L1 Δ (L2 + c1), c1 + c2).
    """

    kind = "lamplighter"

    def __init__(self) -> None:
        super().__init__({"t": ((), 1), "a": ((0,), 0)})

    @property
    def identity(self) -> LampState:
        return ((), 0)

    def multiply(self, g: LampState, h: LampState) -> LampState:
        lamps_g, cursor_g = g
        lamps_h, cursor_h = h
        toggled = set(lamps_g).symmetric_difference(x + cursor_g for x in lamps_h)
        return (tuple(sorted(toggled)), cursor_g + cursor_h)

    def inverse(self, g: LampState) -> LampState:
        lamps, cursor = g
        return (tuple(sorted(x - cursor for x in lamps)), -cursor)

    def encode(self, g: LampState) -> str:
        lamps, cursor = g
        return "{" + ",".join(str(x) for x in lamps) + "}@" + str(cursor)

    @property
    def descriptor(self) -> Dict[str, Any]:
        return {"type": self.kind}

    @property
    def is_amenable(self) -> Optional[bool]:
        return True

    @property
    def contains_free_subgroup(self) -> Optional[bool]:
        return False
