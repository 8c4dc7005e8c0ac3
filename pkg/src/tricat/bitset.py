"""Subsets of a finite ground set as Python ints, plus closure-family tools.

Bit i set means element i is in the subset.  Enumeration order is always
ascending int value of the mask, which gives a fixed, reproducible ordering.
"""

from __future__ import annotations


def bits(mask):
    """Yield the set bit positions of ``mask`` in ascending order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask):
    return bin(mask).count("1")


def is_subset(a, b):
    return a & ~b == 0


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def next_closure_family(closure, n):
    """All fixed points of a closure operator on {0..n-1}, lectically ordered.

    ``closure`` maps masks to masks and must be extensive, monotone and
    idempotent.  Runs in O(#closed * n * cost(closure)), so it never touches
    the full power set.  This is Ganter's next-closure scheme.
    """
    full = (1 << n) - 1
    out = []
    a = closure(0)
    out.append(a)
    while a != full:
        nxt = None
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if a & bit:
                continue
            below = bit - 1  # mask of {0..i-1}
            b = closure((a & below) | bit)
            # b is the lectic successor iff it adds nothing new below i
            if b & below & ~a == 0:
                nxt = b
                break
        if nxt is None:
            break
        a = nxt
        out.append(a)
    return out


def union_close(family, universe_size=None):
    """Close a collection of masks under pairwise union (includes 0)."""
    seen = {0}
    frontier = set(family)
    seen |= frontier
    while frontier:
        new = set()
        for f in frontier:
            for g in list(seen):
                u = f | g
                if u not in seen:
                    new.add(u)
        seen |= new
        frontier = new
    return sorted(seen)


def intersection_close(family, full):
    """Close a collection of masks under pairwise intersection; include full."""
    seen = {full}
    seen |= set(family)
    frontier = set(seen)
    while frontier:
        new = set()
        for f in frontier:
            for g in list(seen):
                u = f & g
                if u not in seen:
                    new.add(u)
        seen |= new
        frontier = new
    return sorted(seen)
