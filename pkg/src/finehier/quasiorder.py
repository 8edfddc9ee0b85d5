"""Finite quasiorders: the label alphabets of the term algebra.

Elements are the integers 0..k-1; JSON documents may attach display names.
"""

from __future__ import annotations

import itertools
import json

__all__ = ["Quasiorder", "antichain", "chain"]


class Quasiorder:
    """A reflexive transitive relation on {0, .., size-1}."""

    __slots__ = ("size", "le", "names", "_hash", "_auts")

    def __init__(self, le, names=None):
        le = tuple(tuple(bool(x) for x in row) for row in le)
        k = len(le)
        if any(len(row) != k for row in le):
            raise ValueError("relation matrix must be square")
        for i in range(k):
            if not le[i][i]:
                raise ValueError("relation must be reflexive")
        for i in range(k):
            for j in range(k):
                if le[i][j]:
                    for l in range(k):
                        if le[j][l] and not le[i][l]:
                            raise ValueError("relation must be transitive")
        self.size = k
        self.le = le
        self.names = tuple(names) if names else tuple(str(i) for i in range(k))
        if len(self.names) != k:
            raise ValueError("need one name per element")
        self._hash = hash(le)
        self._auts = None

    def leq(self, i, j):
        return self.le[i][j]

    def is_antichain(self):
        return all(not self.le[i][j] for i in range(self.size)
                   for j in range(self.size) if i != j)

    def automorphisms(self):
        """All permutations g with le[i][j] <=> le[g(i)][g(j)]."""
        if self._auts is None:
            k, le = self.size, self.le
            auts = []
            for g in itertools.permutations(range(k)):
                if all(le[i][j] == le[g[i]][g[j]]
                       for i in range(k) for j in range(k)):
                    auts.append(g)
            self._auts = tuple(auts)
        return self._auts

    def __eq__(self, other):
        return isinstance(other, Quasiorder) and self.le == other.le

    def __hash__(self):
        return self._hash

    def __repr__(self):
        pairs = [(i, j) for i in range(self.size)
                 for j in range(self.size) if i != j and self.le[i][j]]
        return f"Quasiorder(size={self.size}, le={pairs})"

    @classmethod
    def from_pairs(cls, size, pairs, names=None):
        """Build from generating pairs; the reflexive-transitive closure is
        applied before the invariants are re-checked."""
        le = [[i == j for j in range(size)] for i in range(size)]
        for i, j in pairs:
            le[i][j] = True
        changed = True
        while changed:
            changed = False
            for i in range(size):
                for j in range(size):
                    if le[i][j]:
                        for l in range(size):
                            if le[j][l] and not le[i][l]:
                                le[i][l] = True
                                changed = True
        return cls(le, names)

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        size = doc["size"]
        names = None
        if "names" in doc:
            names = [doc["names"].get(str(i), str(i)) for i in range(size)]
        return cls.from_pairs(size, [tuple(p) for p in doc.get("le", [])], names)

    def to_json(self):
        pairs = [[i, j] for i in range(self.size)
                 for j in range(self.size) if i != j and self.le[i][j]]
        doc = {"size": self.size, "le": pairs}
        if self.names != tuple(str(i) for i in range(self.size)):
            doc["names"] = {str(i): n for i, n in enumerate(self.names)}
        return doc


def antichain(k):
    """The discrete quasiorder on k elements."""
    return Quasiorder([[i == j for j in range(k)] for i in range(k)])


def chain(k):
    """The linear order 0 <= 1 <= ... <= k-1."""
    return Quasiorder([[i <= j for j in range(k)] for i in range(k)])
