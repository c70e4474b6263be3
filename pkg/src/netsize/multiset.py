"""Counted multisets over hashable elements.

All the set-like quantities used by the estimators (free ends, matches,
cross-seed matches, code bags) are multisets: collections where an element
can occur more than once.  ``Multiset`` stores them as element -> count
maps with strictly positive counts, so cardinality is a sum of counts and
support size is a map-size read.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping


class Multiset(Counter):
    """A counted bag with strictly positive multiplicities.

    Accepts an iterable of elements (counted) or a mapping of
    element -> count; entries with count <= 0 are dropped on construction.
    """

    def __init__(self, items: Iterable | Mapping | None = None):
        super().__init__()
        if items is None:
            return
        if isinstance(items, Mapping):
            for key, count in items.items():
                if count > 0:
                    self[key] = int(count)
        else:
            for key in items:
                self[key] += 1

    def cardinality(self) -> int:
        """Total number of occurrences (sum of multiplicities)."""
        return sum(self.values())

    def support_size(self) -> int:
        """Number of distinct elements."""
        return len(self)

    def contains(self, other: "Multiset") -> bool:
        """True if every multiplicity of `other` is <= the one stored here."""
        return all(self[key] >= count for key, count in other.items())

    def as_sorted_items(self) -> list[tuple]:
        """Canonical (element, count) listing for golden comparisons."""
        return sorted(self.items())


def _wrap(counts: Counter) -> Multiset:
    # Counter's arithmetic already drops non-positive entries.
    result = Multiset()
    dict.update(result, counts)
    return result


def msum(a: Multiset, b: Multiset) -> Multiset:
    """Disjoint union: multiplicities add."""
    return _wrap(Counter.__add__(a, b))


def mintersect(a: Multiset, b: Multiset) -> Multiset:
    """Intersection: element-wise minimum multiplicity."""
    return _wrap(Counter.__and__(a, b))


def mdiff(a: Multiset, b: Multiset) -> Multiset:
    """Difference: element-wise max(0, count_a - count_b)."""
    return _wrap(Counter.__sub__(a, b))
