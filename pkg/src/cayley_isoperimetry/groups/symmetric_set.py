import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from cayley_isoperimetry.exceptions import (
    DomainError,
    EmptySetError,
    InputError,
    ParameterError,
    SymmetryError,
)
from cayley_isoperimetry.groups.base import Element, GroupBackend

logger = logging.getLogger(__name__)

SET_KINDS = ("standard", "explicit", "ball", "sphere", "power", "random", "box")


@dataclass(frozen=True)
class SymmetricSet:
    """A finite, inverse-closed, duplicate-free subset S of a group.

    Attributes:
        elements: Members in a fixed order
        contains_identity: Whether the identity is a member (it produces loops)
        label: Human-readable description used in reports and file names
    """

    elements: Tuple[Element, ...]
    contains_identity: bool
    label: str = "S"

    @classmethod
    def from_elements(
        cls, backend: GroupBackend, elements: Iterable[Element], label: str = "S"
    ) -> "SymmetricSet":
        members = tuple(elements)
        if not members:
            raise EmptySetError(f"Generating set '{label}' is empty")
        if len(set(members)) != len(members):
            raise InputError(f"Generating set '{label}' contains duplicates")
        member_set = set(members)
        for g in members:
            if backend.inverse(g) not in member_set:
                raise SymmetryError(
                    f"Generating set '{label}' is not inverse-closed: "
                    f"{backend.encode(g)} has no inverse in the set"
                )
        return cls(members, backend.identity in member_set, label)

    @property
    def size(self) -> int:
        return len(self.elements)

    def without_identity(self, backend: GroupBackend) -> "SymmetricSet":
        if not self.contains_identity:
            return self
        members = tuple(g for g in self.elements if g != backend.identity)
        return SymmetricSet.from_elements(backend, members, f"{self.label}-minus-e")

    def encodings(self, backend: GroupBackend) -> List[str]:
        return [backend.encode(g) for g in self.elements]

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self.elements


def ball_layers(
    backend: GroupBackend, generators: Iterable[Element], radius: int
) -> List[List[Element]]:
    """Spheres of radius 0..radius in the Cayley graph, each in breadth-first order.

    Neighbours of x are x·s for s in the generating set, visited in the set's
    order, so the output is deterministic. Stops early once a layer is empty.
    """
    if radius < 0:
        raise ParameterError(f"Ball radius must be nonnegative, got {radius}")
    steps = [s for s in generators]
    layers = [[backend.identity]]
    seen = {backend.identity}
    for _ in range(radius):
        layer = []
        for x in layers[-1]:
            for s in steps:
                y = backend.multiply(x, s)
                if y not in seen:
                    seen.add(y)
                    layer.append(y)
        if not layer:
            break
        layers.append(layer)
    return layers


def ball(
    backend: GroupBackend, generators: Iterable[Element], radius: int
) -> List[Element]:
    """Elements at word distance ≤ radius, each once, in breadth-first order."""
    return [g for layer in ball_layers(backend, generators, radius) for g in layer]


def sphere(
    backend: GroupBackend, generators: Iterable[Element], radius: int
) -> List[Element]:
    layers = ball_layers(backend, generators, radius)
    return list(layers[radius]) if radius < len(layers) else []


def word_lengths(
    backend: GroupBackend, generators: Iterable[Element], radius: int
) -> Dict[Element, int]:
    return {
        g: distance
        for distance, layer in enumerate(ball_layers(backend, generators, radius))
        for g in layer
    }


def standard_generating_set(backend: GroupBackend) -> SymmetricSet:
    """Letters and their inverses."""
    return SymmetricSet.from_elements(backend, backend.generator_elements(), "standard")


def build_symmetric_set(
    backend: GroupBackend, descriptor: Dict[str, Any]
) -> SymmetricSet:
    """Build a symmetric set from a descriptor.

    Supported kinds:
        standard: letters and inverses
        explicit: ``words`` list; must already be inverse-closed
        ball: ``radius`` ball of the standard set minus the identity
        sphere: ``radius`` sphere of the standard set
        power: S^k for ``k`` and an inner ``base`` descriptor (default standard)
        random: seeded symmetric subset of ``size`` elements from a ball of ``radius``
        box: ℤ^d max-norm box of half-width ``k`` minus 0

    Args:
        backend: Group the set lives in
        descriptor: Dict with a ``kind`` key plus kind-specific fields

    Returns:
        SymmetricSet

    Raises:
        SymmetryError: explicit words are not inverse-closed
        EmptySetError: the construction yields no elements
    """
    kind = descriptor.get("kind", "standard")
    label = descriptor.get("label")

    if kind == "standard":
        return _relabel(standard_generating_set(backend), label or "standard")

    if kind == "explicit":
        words = descriptor.get("words")
        if not isinstance(words, list):
            raise InputError("Explicit set descriptor needs a 'words' list")
        elements = [backend.evaluate(word) for word in words]
        return SymmetricSet.from_elements(backend, elements, label or "explicit")

    standard = backend.generator_elements()

    if kind == "ball":
        radius = _int_field(descriptor, "radius")
        members = ball(backend, standard, radius)[1:]
        return SymmetricSet.from_elements(backend, members, label or f"ball{radius}")

    if kind == "sphere":
        radius = _int_field(descriptor, "radius")
        members = sphere(backend, standard, radius)
        return SymmetricSet.from_elements(backend, members, label or f"sphere{radius}")

    if kind == "power":
        k = _int_field(descriptor, "k")
        if k < 1:
            raise ParameterError(f"Power exponent must be positive, got {k}")
        base = build_symmetric_set(
            backend, descriptor.get("base", {"kind": "standard"})
        )
        members = _product_power(backend, base.elements, k)
        return SymmetricSet.from_elements(
            backend, members, label or f"{base.label}^{k}"
        )

    if kind == "random":
        radius = _int_field(descriptor, "radius")
        size = _int_field(descriptor, "size")
        seed = int(descriptor.get("seed", 0))
        members = _random_symmetric_subset(backend, standard, radius, size, seed)
        return SymmetricSet.from_elements(
            backend, members, label or f"random{radius}-{size}-s{seed}"
        )

    if kind == "box":
        if backend.kind != "free_abelian":
            raise DomainError(
                f"Box sets need a free abelian group, got {backend.kind}"
            )
        k = _int_field(descriptor, "k")
        box = backend.box(k)  # type: ignore[attr-defined]
        members = [g for g in box if g != backend.identity]
        return SymmetricSet.from_elements(backend, members, label or f"box{k}")

    raise InputError(
        f"Unknown set kind '{kind}' (expected one of {', '.join(SET_KINDS)})"
    )


def _relabel(s: SymmetricSet, label: str) -> SymmetricSet:
    return SymmetricSet(s.elements, s.contains_identity, label)


def _int_field(descriptor: Dict[str, Any], key: str) -> int:
    if key not in descriptor:
        raise InputError(
            f"Set descriptor of kind '{descriptor.get('kind')}' needs '{key}'"
        )
    try:
        return int(descriptor[key])
    except (TypeError, ValueError):
        raise InputError(f"Set descriptor field '{key}' must be an integer")


def _product_power(
    backend: GroupBackend, base: Sequence[Element], k: int
) -> List[Element]:
    current: List[Element] = list(base)
    for _ in range(k - 1):
        products: List[Element] = []
        seen = set()
        for x in current:
            for s in base:
                y = backend.multiply(x, s)
                if y not in seen:
                    seen.add(y)
                    products.append(y)
        current = products
    return current


def _random_symmetric_subset(
    backend: GroupBackend,
    standard: Sequence[Element],
    radius: int,
    size: int,
    seed: int,
) -> List[Element]:
    candidates = ball(backend, standard, radius)[1:]
    pairs: List[Tuple[Element, ...]] = []
    seen = set()
    for g in candidates:
        if g in seen:
            continue
        g_inv = backend.inverse(g)
        seen.update((g, g_inv))
        pairs.append((g,) if g == g_inv else (g, g_inv))

    rng = np.random.default_rng(seed)
    members: List[Element] = []
    for index in rng.permutation(len(pairs)):
        pair = pairs[int(index)]
        # a pair that would overshoot is skipped; an involution may still fit
        if len(members) + len(pair) > size:
            continue
        members.extend(pair)
        if len(members) == size:
            break
    logger.debug(
        f"Random symmetric subset: {len(members)} of {len(candidates)} candidates"
    )
    return members
