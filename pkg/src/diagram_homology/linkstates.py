"""Right link states of diagrams and the splice / deletion moves on them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .diagrams import Diagram


class LinkStateError(ValueError):
    pass


def _crosses(p: tuple[int, int], q: tuple[int, int]) -> bool:
    (a, b), (c, d) = sorted(p), sorted(q)
    return a < c < b < d or c < a < d < b


def pairs_noncrossing(pairs: Iterable[tuple[int, int]]) -> bool:
    pairs = list(pairs)
    return not any(_crosses(p, q) for p, q in combinations(pairs, 2))


@dataclass(frozen=True)
class LinkState:
    n: int
    pairs: frozenset
    singletons: frozenset
    defects: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "singletons", frozenset(self.singletons))
        object.__setattr__(self, "defects", frozenset(self.defects))
        covered = [x for p in self.pairs for x in p] + list(self.singletons) + list(self.defects)
        if sorted(covered) != list(range(1, self.n + 1)):
            raise LinkStateError("pairs, singletons and defects must partition 1..n")

    @classmethod
    def all_defects(cls, n: int) -> "LinkState":
        return cls(n, frozenset(), frozenset(), frozenset(range(1, n + 1)))

    def is_planar(self) -> bool:
        return pairs_noncrossing(self.pairs)

    def __str__(self) -> str:
        pairs = ",".join(f"{{{a},{b}}}" for a, b in sorted(self.pairs))
        return f"pairs[{pairs}] singletons{sorted(self.singletons)} defects{sorted(self.defects)}"


def right_link_state(alpha: Diagram) -> LinkState:
    pairs, singles, defects = set(), set(), set()
    for block in alpha.blocks:
        right = [x for x in block if x > 0]
        if len(right) == 2:
            pairs.add(tuple(right))
        elif len(right) == 1:
            (singles if len(block) == 1 else defects).add(right[0])
    return LinkState(alpha.n, frozenset(pairs), frozenset(singles), frozenset(defects))


def left_link_state(alpha: Diagram) -> LinkState:
    pairs, singles, defects = set(), set(), set()
    for block in alpha.blocks:
        left = [-x for x in block if x < 0]
        if len(left) == 2:
            pairs.add(tuple(sorted(left)))
        elif len(left) == 1:
            (singles if len(block) == 1 else defects).add(left[0])
    return LinkState(alpha.n, frozenset(pairs), frozenset(singles), frozenset(defects))


def splice(state: LinkState, i: int, j: int) -> LinkState:
    """Join the defects ``i`` and ``j`` into a pair."""
    if i == j or i not in state.defects or j not in state.defects:
        raise LinkStateError(f"splice needs two distinct defects, got {i}, {j}")
    new = tuple(sorted((i, j)))
    if any(_crosses(new, p) for p in state.pairs):
        raise LinkStateError(f"splicing {new} crosses an existing pair")
    return LinkState(state.n, state.pairs | {new}, state.singletons, state.defects - {i, j})


def delete_defect(state: LinkState, i: int) -> LinkState:
    if i not in state.defects:
        raise LinkStateError(f"{i} is not a defect")
    return LinkState(state.n, state.pairs, state.singletons | {i}, state.defects - {i})


def moves(state: LinkState) -> Iterator[LinkState]:
    for i in sorted(state.defects):
        yield delete_defect(state, i)
    for i, j in combinations(sorted(state.defects), 2):
        try:
            yield splice(state, i, j)
        except LinkStateError:
            continue


def link_state_reachable(target: LinkState, source: LinkState) -> bool:
    """Whether ``target`` arises from ``source`` by splices and deletions.

    Moves only consume defects, so the source's pairs and singletons persist,
    each source defect survives, is deleted, or is spliced to another source
    defect, and the resulting pairs must not cross.
    """
    if target.n != source.n:
        return False
    if not source.pairs <= target.pairs or not source.singletons <= target.singletons:
        return False
    if not target.defects <= source.defects:
        return False
    for p in target.pairs - source.pairs:
        if not set(p) <= source.defects:
            return False
    if not (target.singletons - source.singletons) <= source.defects:
        return False
    return target.is_planar()


def reachable_by_search(target: LinkState, source: LinkState) -> bool:
    """Breadth-first search over the moves; the oracle for :func:`link_state_reachable`."""
    if target.n != source.n:
        return False
    seen = {source}
    queue = deque([source])
    while queue:
        s = queue.popleft()
        if s == target:
            return True
        for t in moves(s):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return False


def all_link_states(n: int) -> Iterator[LinkState]:
    """Every assignment of pairs / singletons / defects on 1..n (crossing pairs included)."""

    def rec(rest: list[int]) -> Iterator[tuple[list, list, list]]:
        if not rest:
            yield [], [], []
            return
        first, tail = rest[0], rest[1:]
        for pairs, singles, defects in rec(tail):
            yield pairs, singles + [first], defects
            yield pairs, singles, defects + [first]
        for k, other in enumerate(tail):
            for pairs, singles, defects in rec(tail[:k] + tail[k + 1 :]):
                yield pairs + [(first, other)], singles, defects

    for pairs, singles, defects in rec(list(range(1, n + 1))):
        yield LinkState(n, frozenset(pairs), frozenset(singles), frozenset(defects))


# -- interval partitions ----------------------------------------------------


@dataclass(frozen=True)
class IntervalPartition:
    """A partition of the interval ``[a, b]`` into blocks of size at most 2."""

    a: int
    b: int
    blocks: tuple

    def __post_init__(self):
        if not self.a < self.b:
            raise LinkStateError("interval needs a < b")
        blocks = tuple(sorted(tuple(sorted(bl)) for bl in self.blocks))
        if any(not 1 <= len(bl) <= 2 for bl in blocks):
            raise LinkStateError("blocks must have size 1 or 2")
        covered = sorted(x for bl in blocks for x in bl)
        if covered != list(range(self.a, self.b + 1)):
            raise LinkStateError(f"blocks must partition [{self.a},{self.b}]")
        object.__setattr__(self, "blocks", blocks)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [bl for bl in self.blocks if len(bl) == 2]

    @property
    def singletons(self) -> list[int]:
        return [bl[0] for bl in self.blocks if len(bl) == 1]


def interval_partitions(a: int, b: int, containing: tuple[int, int] | None = None) -> Iterator[IntervalPartition]:
    """All partitions of ``[a, b]`` into blocks of size <= 2, optionally forcing one pair."""

    def rec(rest: list[int]) -> Iterator[list[tuple]]:
        if not rest:
            yield []
            return
        first, tail = rest[0], rest[1:]
        for blocks in rec(tail):
            yield [(first,)] + blocks
        for k, other in enumerate(tail):
            for blocks in rec(tail[:k] + tail[k + 1 :]):
                yield [(first, other)] + blocks

    for blocks in rec(list(range(a, b + 1))):
        part = IntervalPartition(a, b, tuple(blocks))
        if containing is None or tuple(sorted(containing)) in part.blocks:
            yield part


def link_state_of_partition(n: int, part: IntervalPartition) -> LinkState | None:
    """The link state with the partition's pairs and singletons and defects elsewhere.

    Returns None when the partition's pairs cross, in which case no such link
    state exists.
    """
    if part.b > n or part.a < 1:
        raise LinkStateError(f"[{part.a},{part.b}] not inside 1..{n}")
    if not pairs_noncrossing(part.pairs):
        return None
    inside = set(range(part.a, part.b + 1))
    return LinkState(
        n,
        frozenset(part.pairs),
        frozenset(part.singletons),
        frozenset(set(range(1, n + 1)) - inside),
    )
