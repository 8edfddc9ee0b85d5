"""Compact memo table for boolean binary relations on interned objects.

Stores one pair of big-int bitmask rows per left operand instead of a dict
entry per pair, which keeps exhaustive all-pairs sweeps (millions of
queries) cheap in both time and memory.
"""

from __future__ import annotations


class PairMemo:
    __slots__ = ("_ids", "_done", "_true")

    def __init__(self):
        self._ids = {}   # right operand -> local bit index
        self._done = {}  # left operand -> bitmask of decided right ids
        self._true = {}  # left operand -> bitmask of true right ids

    def _bit(self, b):
        bit = self._ids.get(b)
        if bit is None:
            bit = 1 << len(self._ids)
            self._ids[b] = bit
        return bit

    def get(self, a, b):
        """Return the cached value for (a, b), or None if undecided."""
        bit = self._bit(b)
        if self._done.get(a, 0) & bit:
            return bool(self._true.get(a, 0) & bit)
        return None

    def put(self, a, b, value):
        bit = self._bit(b)
        self._done[a] = self._done.get(a, 0) | bit
        if value:
            self._true[a] = self._true.get(a, 0) | bit
        return value
