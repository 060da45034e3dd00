"""Bitmask Algorithm X.

Subsets of the universe ``{0..size-1}`` are given as integer masks.  The
solver branches on the uncovered item with the fewest usable subsets
(lowest index on ties) and tries subsets in index order, so the first
solution and the node count are deterministic.
"""

from __future__ import annotations


def exact_cover(size: int, masks: list[int]):
    """Return ``(solution, nodes)``; ``solution`` is a list of subset indices or ``None``."""
    full = (1 << size) - 1
    by_item = [[] for _ in range(size)]
    for i, m in enumerate(masks):
        for item in range(size):
            if m >> item & 1:
                by_item[item].append(i)
    nodes = 0
    chosen: list[int] = []

    def solve(covered):
        nonlocal nodes
        nodes += 1
        if covered == full:
            return True
        best = None
        free = full & ~covered
        while free:
            low = free & -free
            item = low.bit_length() - 1
            free ^= low
            opts = [i for i in by_item[item] if not masks[i] & covered]
            if best is None or len(opts) < len(best):
                best = opts
                if not opts:
                    break
        for i in best:
            chosen.append(i)
            if solve(covered | masks[i]):
                return True
            chosen.pop()
        return False

    found = solve(0)
    return (list(chosen) if found else None), nodes
