"""Densest connected subset search.

Both the Cheeger upper bound and the N′ lower bound reduce to maximising the
pair-weight density

    W(F) / |F|,   W(F) = Σ_{a, b ∈ F} w(a⁻¹ b),

over finite vertex sets F. For w = 1_S, W(F) counts the half-edges of F that
stay inside F, so |∂F| = |F||S| − W(F). The search only visits connected
subsets of a candidate pool: a disconnected set has density at most that of
its best component (mediant inequality).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from cayley_isoperimetry.exceptions import InputError, ParameterError
from cayley_isoperimetry.groups.base import Element, GroupBackend
from cayley_isoperimetry.groups.symmetric_set import ball_layers

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, float]

STRATEGIES = ("whole_group", "exhaustive", "nested_balls", "local_search")


@dataclass
class SearchConfig:
    """Candidate pool and strategy settings for the subset search.

    Attributes:
        pool_radius: Candidates are drawn from the ball of this radius
        max_subset: Largest |F| considered
        strategies: Subset of STRATEGIES, run in that fixed order
        seed: Seed for the local search
        local_steps: Number of add/remove proposals
        exhaustive_limit: Largest pool enumerated exhaustively
        max_candidates: Budget for the exhaustive enumeration
    """

    pool_radius: int = 3
    max_subset: int = 256
    strategies: Tuple[str, ...] = STRATEGIES
    seed: int = 0
    local_steps: int = 1000
    exhaustive_limit: int = 24
    max_candidates: int = 200_000

    def __post_init__(self) -> None:
        self.strategies = tuple(self.strategies)
        unknown = [s for s in self.strategies if s not in STRATEGIES]
        if unknown:
            raise ParameterError(f"Unknown search strategies: {unknown}")
        if self.pool_radius < 0:
            raise ParameterError(
                f"pool_radius must be nonnegative, got {self.pool_radius}"
            )
        if self.max_subset < 1:
            raise ParameterError(f"max_subset must be positive, got {self.max_subset}")

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> "SearchConfig":
        data = data or {}
        known = {
            "pool_radius",
            "max_subset",
            "strategies",
            "seed",
            "local_steps",
            "exhaustive_limit",
            "max_candidates",
        }
        return cls(**{k: v for k, v in data.items() if k in known})


@dataclass
class DensestSubset:
    density: Number
    witness: Tuple[Element, ...]
    whole_group: bool
    pool_optimal: bool
    pool_size: int
    candidates_examined: int
    trend: List[Tuple[int, Number]] = field(default_factory=list)
    strategies_run: List[str] = field(default_factory=list)


def density_of(weight: Number, size: int) -> Number:
    if isinstance(weight, float):
        return weight / size
    return Fraction(weight) / size


class _Pool:
    """Indexed candidate pool with pair weights and connectivity."""

    def __init__(
        self,
        backend: GroupBackend,
        pool: Sequence[Element],
        weights: Dict[Element, Number],
        connectivity: Sequence[Element],
    ):
        self.backend = backend
        self.elements = list(pool)
        index = {g: i for i, g in enumerate(self.elements)}
        n = len(self.elements)
        self.out: List[Dict[int, Number]] = [{} for _ in range(n)]
        self.inn: List[Dict[int, Number]] = [{} for _ in range(n)]
        self.adj: List[List[int]] = [[] for _ in range(n)]
        steps = [g for g in connectivity if g != backend.identity]
        for i, x in enumerate(self.elements):
            for g, w in weights.items():
                j = index.get(backend.multiply(x, g))
                if j is not None:
                    self.out[i][j] = w
                    self.inn[j][i] = w
            neighbours = set()
            for g in steps:
                j = index.get(backend.multiply(x, g))
                if j is not None:
                    neighbours.add(j)
            self.adj[i] = sorted(neighbours)

    def __len__(self) -> int:
        return len(self.elements)

    def gain(self, u: int, members: Set[int]) -> Number:
        """W(members ∪ {u}) − W(members) for u ∉ members."""
        total: Number = self.out[u].get(u, 0)
        for j, w in self.out[u].items():
            if j != u and j in members:
                total += w
        for j, w in self.inn[u].items():
            if j != u and j in members:
                total += w
        return total

    def weight(self, members: Sequence[int]) -> Number:
        member_set = set(members)
        total: Number = 0
        for i in members:
            for j, w in self.out[i].items():
                if j in member_set:
                    total += w
        return total

    def is_connected(self, members: Set[int]) -> bool:
        if not members:
            return False
        start = next(iter(members))
        seen = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in self.adj[i]:
                if j in members and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(members)


class _Tracker:
    """Keeps the best candidate under the order (density ↓, |F| ↑, witness ↑)."""

    def __init__(self, backend: GroupBackend):
        self.backend = backend
        self.density: Optional[Number] = None
        self.witness: Tuple[Element, ...] = ()
        self.indices: Optional[Tuple[int, ...]] = None
        self.examined = 0

    def _key(self, elements: Sequence[Element]) -> Tuple[str, ...]:
        return tuple(sorted(self.backend.encode(g) for g in elements))

    def offer(
        self,
        density: Number,
        elements: Sequence[Element],
        indices: Optional[Tuple[int, ...]] = None,
    ) -> None:
        self.examined += 1
        if self.density is not None:
            if density < self.density:
                return
            if density == self.density:
                if len(elements) > len(self.witness):
                    return
                same_size = len(elements) == len(self.witness)
                if same_size and self._key(elements) >= self._key(self.witness):
                    return
        self.density = density
        self.witness = tuple(elements)
        self.indices = indices


def densest_subset(
    backend: GroupBackend,
    weights: Dict[Element, Number],
    connectivity: Sequence[Element],
    config: SearchConfig,
    layers: Optional[List[List[Element]]] = None,
) -> DensestSubset:
    """Maximise W(F)/|F| over connected candidate sets.

    Args:
        backend: Group
        weights: Nonnegative weight w(g) for each g in its support
        connectivity: Symmetric set defining adjacency and the pool ball
        config: Pool and strategy settings
        layers: Precomputed ball layers of ``connectivity`` (e.g. from the
            ball cache); computed when omitted

    Returns:
        DensestSubset with the best density found; it is attained by the witness

    Raises:
        InputError: The candidate pool is empty
    """
    if layers is None:
        layers = ball_layers(backend, connectivity, config.pool_radius)
    pool_elements = [g for layer in layers for g in layer]
    if not pool_elements:
        raise InputError("Candidate pool is empty")

    pool = _Pool(backend, pool_elements, weights, connectivity)
    tracker = _Tracker(backend)
    trend: List[Tuple[int, Number]] = []
    strategies_run: List[str] = []
    whole_group = False
    pool_optimal = False

    for strategy in config.strategies:
        if strategy == "whole_group":
            if not backend.is_finite:
                continue
            total: Number = sum(weights.values(), 0)
            tracker.offer(density_of(total, 1), backend.elements())
            whole_group = True
        elif strategy == "exhaustive":
            if len(pool) > config.exhaustive_limit:
                logger.debug(
                    f"Pool of {len(pool)} exceeds exhaustive limit "
                    f"{config.exhaustive_limit}"
                )
                continue
            pool_optimal = _exhaustive(pool, tracker, config)
        elif strategy == "nested_balls":
            trend = _nested_balls(pool, layers, tracker, config)
        elif strategy == "local_search":
            _local_search(pool, tracker, config)
        strategies_run.append(strategy)

    if tracker.density is None:
        # Nothing ran: fall back to the single vertex at the identity
        tracker.offer(density_of(pool.weight([0]), 1), [pool.elements[0]], (0,))

    logger.debug(
        f"Densest subset: density {tracker.density} on |F|={len(tracker.witness)} "
        f"after {tracker.examined} candidates from a pool of {len(pool)}"
    )
    return DensestSubset(
        density=tracker.density,
        witness=tracker.witness,
        whole_group=whole_group,
        pool_optimal=pool_optimal,
        pool_size=len(pool),
        candidates_examined=tracker.examined,
        trend=trend,
        strategies_run=strategies_run,
    )


def _exhaustive(pool: _Pool, tracker: _Tracker, config: SearchConfig) -> bool:
    """Enumerate every connected subset once; returns False if the budget ran out."""
    budget = {"left": config.max_candidates}

    def grow(
        root: int,
        members: Set[int],
        weight: Number,
        candidates: Set[int],
        excluded: Set[int],
    ) -> bool:
        if budget["left"] <= 0:
            return False
        budget["left"] -= 1
        ordered_members = tuple(sorted(members))
        tracker.offer(
            density_of(weight, len(members)),
            [pool.elements[i] for i in ordered_members],
            ordered_members,
        )
        if len(members) >= config.max_subset:
            return True
        ordered = sorted(candidates)
        for pos, u in enumerate(ordered):
            branch_excluded = excluded | set(ordered[:pos])
            branch_members = members | {u}
            branch_candidates = (
                set(ordered[pos + 1 :]) | {w for w in pool.adj[u] if w > root}
            ) - branch_members - branch_excluded
            if not grow(
                root,
                branch_members,
                weight + pool.gain(u, members),
                branch_candidates,
                branch_excluded,
            ):
                return False
        return True

    for root in range(len(pool)):
        start = {root}
        if not grow(
            root,
            start,
            pool.weight([root]),
            {w for w in pool.adj[root] if w > root},
            set(),
        ):
            logger.warning(
                f"Exhaustive enumeration stopped after "
                f"{config.max_candidates} candidates"
            )
            return False
    return True


def _nested_balls(
    pool: _Pool,
    layers: List[List[Element]],
    tracker: _Tracker,
    config: SearchConfig,
) -> List[Tuple[int, Number]]:
    trend: List[Tuple[int, Number]] = []
    size = 0
    for layer in layers:
        size += len(layer)
        if size > config.max_subset:
            break
        indices = tuple(range(size))
        density = density_of(pool.weight(indices), size)
        trend.append((size, density))
        tracker.offer(density, pool.elements[:size], indices)
    return trend


def _local_search(pool: _Pool, tracker: _Tracker, config: SearchConfig) -> None:
    """Seeded add/remove moves that keep F connected.

    A move is accepted when it raises the density, or keeps it and shrinks F.
    """
    if tracker.indices is not None:
        current = set(tracker.indices)
    else:
        current = {0}
    if len(current) > config.max_subset:
        return
    weight = pool.weight(sorted(current))
    rng = np.random.default_rng(config.seed)

    for _ in range(config.local_steps):
        can_add = len(current) < config.max_subset
        can_remove = len(current) > 1
        if not (can_add or can_remove):
            break
        if can_add and (not can_remove or rng.random() < 0.5):
            frontier = sorted({j for i in current for j in pool.adj[i]} - current)
            if not frontier:
                continue
            u = frontier[int(rng.integers(len(frontier)))]
            proposal = current | {u}
            proposal_weight = weight + pool.gain(u, current)
        else:
            members = sorted(current)
            u = members[int(rng.integers(len(members)))]
            proposal = current - {u}
            if not pool.is_connected(proposal):
                continue
            proposal_weight = weight - pool.gain(u, proposal)

        old_density = density_of(weight, len(current))
        new_density = density_of(proposal_weight, len(proposal))
        if new_density > old_density or (
            new_density == old_density and len(proposal) < len(current)
        ):
            current = proposal
            weight = proposal_weight
            ordered = tuple(sorted(current))
            tracker.offer(new_density, [pool.elements[i] for i in ordered], ordered)
