from __future__ import annotations

import pytest

from diagram_homology import diagrams as dg
from diagram_homology.linkstates import (
    IntervalPartition,
    LinkState,
    LinkStateError,
    all_link_states,
    delete_defect,
    interval_partitions,
    link_state_of_partition,
    link_state_reachable,
    reachable_by_search,
    right_link_state,
    splice,
)


def LS(n, pairs=(), singles=(), defects=()):
    return LinkState(n, frozenset(pairs), frozenset(singles), frozenset(defects))


def test_right_link_state_examples():
    fig4 = dg.parse_diagram("4; {-1,2},{-4,-2},{3,4},{-3},{1}")
    assert right_link_state(fig4) == LS(4, [(3, 4)], [1], [2])
    assert right_link_state(dg.identity(3)) == LinkState.all_defects(3)
    assert right_link_state(dg.generator_t(3, 2)) == LS(3, [], [2], [1, 3])


def test_splice_and_delete():
    assert splice(LinkState.all_defects(3), 1, 2) == LS(3, [(1, 2)], [], [3])
    yp = LS(6, [(1, 5), (2, 3)], [4], [6])
    assert delete_defect(yp, 6).defects == frozenset()
    with pytest.raises(LinkStateError):
        splice(LS(4, [(2, 4)], [], [1, 3]), 1, 3)
    with pytest.raises(LinkStateError):
        delete_defect(yp, 4)
    with pytest.raises(LinkStateError):
        splice(yp, 6, 6)


def test_invalid_partition_rejected():
    with pytest.raises(LinkStateError):
        LS(3, [(1, 2)], [2], [3])


def test_reachability_examples():
    Y = LS(3, [(1, 2)], [], [3])
    assert link_state_reachable(Y, Y)
    assert link_state_reachable(LS(2, [(1, 2)]), LinkState.all_defects(2))
    assert not link_state_reachable(LS(3, [(2, 3)], [1]), Y)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_reachability_matches_search(n):
    states = [s for s in all_link_states(n) if s.is_planar()]
    for a in states:
        for b in states:
            assert link_state_reachable(a, b) == reachable_by_search(a, b), (a, b)


def test_interval_partitions():
    parts = list(interval_partitions(1, 3))
    assert len(parts) == 4  # involutions of 3 points
    forced = list(interval_partitions(1, 3, containing=(1, 3)))
    assert forced == [IntervalPartition(1, 3, ((1, 3), (2,)))]


def test_link_state_of_partition():
    fig = IntervalPartition(1, 3, ((1, 3), (2,)))
    assert link_state_of_partition(5, fig) == LS(5, [(1, 3)], [2], [4, 5])
    crossing = IntervalPartition(1, 4, ((1, 3), (2, 4)))
    assert link_state_of_partition(4, crossing) is None
