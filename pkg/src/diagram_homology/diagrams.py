"""Rook-Brauer diagrams: partial matchings on the 2n nodes -n..-1, 1..n.

Node -i sits on the left column and node i on the right column, both at
height i counted from the top. Internally a diagram is also kept as a
``partner`` tuple over node indices, where the left node -i has index i-1 and
the right node j has index n+j-1; ``partner[k] == k`` marks a singleton.

The text format is ``n; {a,b},{c},...`` with every block sorted ascending and
the blocks ordered by their smallest label, e.g.
``5; {-5,-3},{-4,2},{-2},{-1,3},{1,5},{4}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class DiagramError(ValueError):
    pass


def _index(n: int, label: int) -> int:
    return -label - 1 if label < 0 else n + label - 1


def _label(n: int, index: int) -> int:
    return -(index + 1) if index < n else index - n + 1


def _blocks_from_partner(n: int, partner: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    blocks = []
    for k, p in enumerate(partner):
        if p == k:
            blocks.append((_label(n, k),))
        elif k < p:
            blocks.append(tuple(sorted((_label(n, k), _label(n, p)))))
    blocks.sort()
    return tuple(blocks)


@dataclass(frozen=True)
class Diagram:
    """A Rook-Brauer n-diagram held in canonical form.

    Use :func:`make_diagram` (validating) or :meth:`from_partner` to build one.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]
    partner: tuple[int, ...] = field(compare=False, repr=False, hash=False, default=())

    def __post_init__(self):
        if not self.partner:
            partner = list(range(2 * self.n))
            for block in self.blocks:
                if len(block) == 2:
                    a, b = (_index(self.n, x) for x in block)
                    partner[a], partner[b] = b, a
            object.__setattr__(self, "partner", tuple(partner))

    @classmethod
    def from_partner(cls, n: int, partner: Sequence[int]) -> "Diagram":
        partner = tuple(partner)
        return cls(n, _blocks_from_partner(n, partner), partner)

    def __str__(self) -> str:
        return format_diagram(self)

    def mate(self, label: int) -> int | None:
        """The label joined to ``label``, or None when it is a singleton."""
        k = _index(self.n, label)
        p = self.partner[k]
        return None if p == k else _label(self.n, p)


def make_diagram(n: int, blocks: Iterable[Iterable[int]]) -> Diagram:
    """Validate ``blocks`` and return the canonical diagram.

    Labels that appear in no block are added as singletons.
    """
    if n < 0:
        raise DiagramError("strand count must be nonnegative")
    partner = list(range(2 * n))
    seen: set[int] = set()
    for block in blocks:
        block = tuple(block)
        if not 1 <= len(block) <= 2:
            raise DiagramError(f"block {block} must have size 1 or 2")
        for x in block:
            if not isinstance(x, int) or x == 0 or abs(x) > n:
                raise DiagramError(f"label {x} out of range for n={n}")
            if x in seen:
                raise DiagramError(f"label {x} repeated")
            seen.add(x)
        if len(block) == 2:
            a, b = (_index(n, x) for x in block)
            partner[a], partner[b] = b, a
    return Diagram.from_partner(n, partner)


_BLOCK_RE = re.compile(r"\{([^{}]*)\}")


def format_diagram(d: Diagram) -> str:
    body = ",".join("{" + ",".join(str(x) for x in b) + "}" for b in d.blocks)
    return f"{d.n}; {body}"


def parse_diagram(text: str) -> Diagram:
    head, sep, rest = text.partition(";")
    if not sep:
        raise DiagramError(f"missing ';' in diagram literal {text!r}")
    try:
        n = int(head)
    except ValueError:
        raise DiagramError(f"bad strand count in {text!r}") from None
    leftover = _BLOCK_RE.sub("", rest).replace(",", "").strip()
    if leftover:
        raise DiagramError(f"unparseable text {leftover!r} in {text!r}")
    blocks = []
    for body in _BLOCK_RE.findall(rest):
        try:
            blocks.append(tuple(int(x) for x in body.split(",")))
        except ValueError:
            raise DiagramError(f"bad block {{{body}}} in {text!r}") from None
    return make_diagram(n, blocks)


# -- multiplication ---------------------------------------------------------


@dataclass(frozen=True)
class ScaledDiagram:
    """``delta**r * epsilon**s * gamma``."""

    r: int
    s: int
    gamma: Diagram

    def __str__(self) -> str:
        return f"delta^{self.r} epsilon^{self.s} * {format_diagram(self.gamma)}"


def compose_partners(n: int, pa: Sequence[int], pb: Sequence[int]) -> tuple[int, int, tuple[int, ...]]:
    """Conjoin two diagrams given as partner tuples.

    Returns ``(loops, contractible, partner_of_product)``. Right node k of the
    first factor is glued to left node -k of the second factor.
    """
    out = list(range(2 * n))
    seen = [False] * n

    # Walk from an outer endpoint through the middle column; returns the outer
    # index reached, or -1 when the path dies in the middle.
    def walk(m: int, from_first: bool) -> int:
        while True:
            seen[m] = True
            if from_first:
                q = pb[m]
                if q == m:
                    return -1
                if q >= n:
                    return q
                m = q
                from_first = False
            else:
                p = pa[n + m]
                if p == n + m:
                    return -1
                if p < n:
                    return p
                m = p - n
                from_first = True

    for i in range(n):
        p = pa[i]
        if p == i:
            continue
        if p < n:
            out[i] = p
            continue
        end = walk(p - n, True)
        if end >= 0:
            out[i], out[end] = end, i
    for j in range(n, 2 * n):
        q = pb[j]
        if q == j:
            continue
        if q >= n:
            out[j] = q
            continue
        if seen[q]:
            continue
        end = walk(q, False)
        if end >= 0:
            out[j], out[end] = end, j

    loops = contractible = 0
    for m in range(n):
        if seen[m]:
            continue
        # Components reached only now have no outer endpoint: a cycle when
        # every node has both neighbours, otherwise a contractible path.
        stack, closed = [m], True
        seen[m] = True
        while stack:
            c = stack.pop()
            p, q = pa[n + c], pb[c]
            nbrs = []
            if n <= p != n + c:
                nbrs.append(p - n)
            if c != q < n:
                nbrs.append(q)
            if len(nbrs) < 2:
                closed = False
            for d in nbrs:
                if not seen[d]:
                    seen[d] = True
                    stack.append(d)
        if closed:
            loops += 1
        else:
            contractible += 1
    return loops, contractible, tuple(out)


def multiply(alpha: Diagram, beta: Diagram) -> ScaledDiagram:
    if alpha.n != beta.n:
        raise DiagramError(f"strand-count mismatch: {alpha.n} vs {beta.n}")
    r, s, partner = compose_partners(alpha.n, alpha.partner, beta.partner)
    return ScaledDiagram(r, s, Diagram.from_partner(alpha.n, partner))


# -- predicates -------------------------------------------------------------


def is_permutation(alpha: Diagram) -> bool:
    n = alpha.n
    return all((p >= n) != (k >= n) for k, p in enumerate(alpha.partner))


def _boundary_position(n: int, index: int) -> int:
    # left column top-to-bottom, then right column bottom-to-top
    return index if index < n else 3 * n - 1 - index


def is_planar(alpha: Diagram) -> bool:
    n = alpha.n
    mate_at = [-1] * (2 * n)
    for k, p in enumerate(alpha.partner):
        if p != k:
            mate_at[_boundary_position(n, k)] = _boundary_position(n, p)
    stack: list[int] = []
    for pos, other in enumerate(mate_at):
        if other < 0:
            continue
        if other > pos:
            stack.append(other)
        elif not stack or stack.pop() != pos:
            return False
    return True


def is_identity(alpha: Diagram) -> bool:
    n = alpha.n
    return all(p == (k + n if k < n else k - n) for k, p in enumerate(alpha.partner))


# -- enumeration ------------------------------------------------------------


def _partial_matchings(nodes: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not nodes:
        yield []
        return
    first, rest = nodes[0], nodes[1:]
    for tail in _partial_matchings(rest):
        yield tail
    for i, other in enumerate(rest):
        for tail in _partial_matchings(rest[:i] + rest[i + 1 :]):
            yield [(first, other)] + tail


@lru_cache(maxsize=None)
def enumerate_rook_brauer(n: int) -> tuple[Diagram, ...]:
    """All Rook-Brauer n-diagrams, sorted lexicographically by canonical blocks."""
    if n < 0:
        raise DiagramError("n must be nonnegative")
    out = []
    for pairs in _partial_matchings(list(range(2 * n))):
        partner = list(range(2 * n))
        for a, b in pairs:
            partner[a], partner[b] = b, a
        out.append(Diagram.from_partner(n, partner))
    out.sort(key=lambda d: d.blocks)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_motzkin(n: int) -> tuple[Diagram, ...]:
    return tuple(d for d in enumerate_rook_brauer(n) if is_planar(d))


@lru_cache(maxsize=None)
def enumerate_permutations(n: int) -> tuple[Diagram, ...]:
    return tuple(d for d in enumerate_rook_brauer(n) if is_permutation(d))


# -- named diagrams ---------------------------------------------------------


def identity(n: int) -> Diagram:
    return make_diagram(n, [(-k, k) for k in range(1, n + 1)])


def generator_s(n: int, i: int) -> Diagram:
    if not 1 <= i <= n - 1:
        raise DiagramError(f"S_{i} needs 1 <= i <= n-1 (n={n})")
    blocks = [(-k, k) for k in range(1, n + 1) if k not in (i, i + 1)]
    return make_diagram(n, blocks + [(-(i + 1), i), (-i, i + 1)])


def generator_v(n: int, i: int, j: int) -> Diagram:
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise DiagramError(f"V_{i}{j} needs distinct indices in 1..{n}")
    blocks = [(-k, k) for k in range(1, n + 1) if k not in (i, j)]
    return make_diagram(n, blocks + [(-i, -j), (i, j)])


def generator_t(n: int, i: int) -> Diagram:
    if not 1 <= i <= n:
        raise DiagramError(f"T_{i} needs 1 <= i <= n (n={n})")
    blocks = [(-k, k) for k in range(1, n + 1) if k != i]
    return make_diagram(n, blocks + [(-i,), (i,)])


def embed(alpha: Diagram, n: int, first_strand: int = 1) -> Diagram:
    """Place an m-diagram on strands ``first_strand..first_strand+m-1`` of an
    n-diagram, filling the other strands with horizontal connections."""
    m = alpha.n
    if first_strand < 1 or first_strand + m - 1 > n:
        raise DiagramError(f"cannot place {m} strands at {first_strand} inside {n}")
    shift = first_strand - 1
    moved = {k for k in range(first_strand, first_strand + m)}
    blocks = [(-k, k) for k in range(1, n + 1) if k not in moved]
    for b in alpha.blocks:
        blocks.append(tuple(x + shift if x > 0 else x - shift for x in b))
    return make_diagram(n, blocks)


def permutation_of(alpha: Diagram) -> tuple[int, ...]:
    """For a permutation diagram, the images ``w`` with left -i joined to right w[i-1]."""
    if not is_permutation(alpha):
        raise DiagramError("not a permutation diagram")
    n = alpha.n
    return tuple(alpha.partner[i] - n + 1 for i in range(n))


def permutation_diagram(images: Sequence[int]) -> Diagram:
    n = len(images)
    return make_diagram(n, [(-(i + 1), w) for i, w in enumerate(images)])


def right_pairs(alpha: Diagram) -> list[tuple[int, int]]:
    return [b for b in alpha.blocks if len(b) == 2 and b[0] > 0]


def count_blocks(alpha: Diagram) -> dict[str, int]:
    kinds = {"left_pairs": 0, "right_pairs": 0, "through": 0, "singletons": 0}
    for b in alpha.blocks:
        if len(b) == 1:
            kinds["singletons"] += 1
        elif b[1] < 0:
            kinds["left_pairs"] += 1
        elif b[0] > 0:
            kinds["right_pairs"] += 1
        else:
            kinds["through"] += 1
    return kinds


__all__ = [
    "Diagram",
    "DiagramError",
    "ScaledDiagram",
    "compose_partners",
    "count_blocks",
    "embed",
    "enumerate_motzkin",
    "enumerate_permutations",
    "enumerate_rook_brauer",
    "format_diagram",
    "generator_s",
    "generator_t",
    "generator_v",
    "identity",
    "is_identity",
    "is_permutation",
    "is_planar",
    "make_diagram",
    "multiply",
    "parse_diagram",
    "permutation_diagram",
    "permutation_of",
    "right_pairs",
]
