"""Finite labeled trees and forests with the monotone-map quasiorder.

A tree is a finite prefix-closed set of index tuples (the empty tuple is
the root) with a total labeling.  ``hom_leq(T, V, label_leq)`` decides
whether some order-preserving map from T into V dominates labels pointwise;
the map need not be injective, level-preserving or root-preserving.  This
is the independent oracle used against the structural term comparison.

JSON format: ``{"nodes": ["", "0", "1", "00", ...], "labels": {"": l, ...}}``
with nodes written as digit strings (one digit per index, so arities up to
10 -- plenty at desk scale).
"""

from __future__ import annotations

import itertools
import json

from ._memo import PairMemo

__all__ = [
    "LabeledTree", "LabeledForest",
    "hom_leq", "forest_hom_leq", "hom_leq_exhaustive",
    "tree_to_dot",
]


class LabeledTree:
    __slots__ = ("nodes", "labels", "_kids", "_tnode")

    def __init__(self, nodes, labels):
        nodes = tuple(sorted(tuple(n) for n in nodes))
        if () not in nodes:
            raise ValueError("a tree contains the empty node")
        nodeset = set(nodes)
        if len(nodeset) != len(nodes):
            raise ValueError("duplicate nodes")
        for n in nodes:
            if n and n[:-1] not in nodeset:
                raise ValueError(f"nodes must be prefix-closed, missing {n[:-1]}")
        labels = dict(labels)
        if set(labels) != nodeset:
            raise ValueError("labeling must be total")
        self.nodes = nodes
        self.labels = labels
        self._kids = None
        self._tnode = None

    def children(self, node):
        if self._kids is None:
            kids = {n: [] for n in self.nodes}
            for n in self.nodes:
                if n:
                    kids[n[:-1]].append(n)
            self._kids = {n: tuple(sorted(c)) for n, c in kids.items()}
        return self._kids[node]

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return f"LabeledTree({len(self.nodes)} nodes)"

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        nodes = [tuple(int(ch) for ch in s) for s in doc["nodes"]]
        labels = {tuple(int(ch) for ch in s): l for s, l in doc["labels"].items()}
        return cls(nodes, labels)

    def to_json(self):
        key = lambda n: "".join(str(i) for i in n)
        return {"nodes": [key(n) for n in self.nodes],
                "labels": {key(n): self.labels[n] for n in self.nodes}}


class LabeledForest:
    __slots__ = ("trees",)

    def __init__(self, trees):
        trees = tuple(trees)
        if not trees:
            raise ValueError("forests are nonempty")
        for t in trees:
            if not isinstance(t, LabeledTree):
                raise TypeError("forest members must be labeled trees")
        self.trees = trees

    def __repr__(self):
        return f"LabeledForest({len(self.trees)} trees)"


# Interned immutable view used by the matcher: identity hashing makes the
# shared memo rows cheap across millions of queries.
class _TNode:
    __slots__ = ("label", "kids", "_sub")
    _table = {}

    @classmethod
    def intern(cls, label, kids):
        key = (label, kids)
        hit = cls._table.get(key)
        if hit is None:
            hit = object.__new__(cls)
            hit.label = label
            hit.kids = kids
            hit._sub = None
            cls._table[key] = hit
        return hit

    def subnodes(self):
        if self._sub is None:
            out = [self]
            for k in self.kids:
                out.extend(k.subnodes())
            self._sub = tuple(out)
        return self._sub


def _tnode(tree):
    if tree._tnode is None:
        def build(node):
            kids = tuple(build(c) for c in tree.children(node))
            return _TNode.intern(tree.labels[node], kids)
        tree._tnode = build(())
    return tree._tnode


def _emb(a, b, label_leq, memo):
    # Can the subtree at `a` map into the subtree at `b` with the root of
    # `a` landing exactly on `b`?  Children of `a` may land anywhere at or
    # below `b`; siblings are unconstrained against each other.
    got = memo.get(a, b)
    if got is not None:
        return got
    val = False
    if label_leq(a.label, b.label):
        val = all(any(_emb(c, w, label_leq, memo) for w in b.subnodes())
                  for c in a.kids)
    return memo.put(a, b, val)


def hom_leq(T, V, label_leq, cache=None):
    """Does an order-preserving, label-dominating map from T into V exist?

    ``label_leq`` must be a quasiorder on the labels.  A shared ``cache``
    (a `PairMemo`) may be passed across calls that use the same label
    comparison; results are then reused between overlapping subtrees.
    """
    a, b = _tnode(T), _tnode(V)
    memo = cache if cache is not None else PairMemo()
    return any(_emb(a, w, label_leq, memo) for w in b.subnodes())


def forest_hom_leq(F, G, label_leq, cache=None):
    """Forest extension: every tree of F maps into some tree of G."""
    memo = cache if cache is not None else PairMemo()
    return all(any(hom_leq(t, v, label_leq, cache=memo) for v in G.trees)
               for t in F.trees)


def hom_leq_exhaustive(T, V, label_leq):
    """Brute-force reference: try every node map and test order preservation
    plus label domination.  Only for tiny trees."""
    tn, vn = T.nodes, V.nodes
    for img in itertools.product(range(len(vn)), repeat=len(tn)):
        phi = {tn[i]: vn[img[i]] for i in range(len(tn))}
        ok = True
        for x in tn:
            if x:
                p = phi[x[:-1]]
                if phi[x][:len(p)] != p:
                    ok = False
                    break
            if not label_leq(T.labels[x], V.labels[phi[x]]):
                ok = False
                break
        if ok:
            return True
    return False


def tree_to_dot(tree, label_str=str, name="tree"):
    key = lambda n: "n" + "_".join(str(i) for i in n) if n else "root"
    lines = [f"digraph {name} {{"]
    for n in tree.nodes:
        lines.append(f'  {key(n)} [label="{label_str(tree.labels[n])}"];')
    for n in tree.nodes:
        if n:
            lines.append(f"  {key(n[:-1])} -> {key(n)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
