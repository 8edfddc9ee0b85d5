"""The term algebra over a finite quasiorder of constants.

Terms are built from four constructors:

* ``Const(q)`` -- a constant from the label quasiorder;
* ``Shift(alpha, body)`` -- a unary level-shift with an ordinal subscript;
* ``Fq(q, children)`` -- a branch whose root carries a constant;
* ``Fo(alpha, children)`` -- a branch whose root carries the shifted first
  child, ``Shift(alpha, children[0])``; the remaining children hang below.

Child lists are finite and nonempty.  Every term flattens to a labeled tree
(`term_tree`): constants and shift-terms flatten to singleton trees labeled
by themselves, branches put their root label at the root and the flattened
children below.  The comparison relation `term_leq` is defined by structural
recursion with one clause per constructor pair (16 in all); it is exactly
the existence of a monotone label-dominating map between the flattened
trees, and the tree-morphism engine in `labeled_trees` serves as an
independent oracle for it.  Three clauses involving branch terms are
normalized to the tree-morphism semantics where their bound variable would
otherwise be ambiguous; the cross-check suite adjudicates the reading.

Terms are immutable and interned: structurally equal terms are the same
object, so identity hashing makes the memoized recursions cheap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ._memo import PairMemo
from .labeled_trees import LabeledTree, hom_leq
from .ordinals import (Ordinal, ZERO, ord_add, ord_cmp, omega_power,
                       parse_ordinal, ord_to_str)

__all__ = [
    "Const", "Shift", "Fq", "Fo", "Term", "Decomposition",
    "SingletonTermError", "NotAutomorphismError", "TermParseError",
    "SubscriptBoundError",
    "term_size", "term_rank", "is_singleton", "singleton_value",
    "term_decompose", "term_leq", "TermOrder", "term_tree", "term_paths",
    "term_apply_aut", "term_constants", "check_subscripts",
    "parse_term", "term_to_str", "enumerate_terms", "syntax_tree",
]


class SingletonTermError(ValueError):
    pass


class NotAutomorphismError(ValueError):
    pass


class TermParseError(ValueError):
    pass


class SubscriptBoundError(ValueError):
    """An ordinal subscript exceeds the configured signature bound."""


class Const:
    __slots__ = ("q", "nodes")
    _table = {}

    def __new__(cls, q):
        hit = cls._table.get(q)
        if hit is not None:
            return hit
        if not isinstance(q, int) or q < 0:
            raise ValueError("constants are non-negative integers")
        self = object.__new__(cls)
        self.q = q
        self.nodes = 1
        cls._table[q] = self
        return self

    def __repr__(self):
        return term_to_str(self)


class Shift:
    __slots__ = ("alpha", "body", "nodes")
    _table = {}

    def __new__(cls, alpha, body):
        key = (alpha, body)
        hit = cls._table.get(key)
        if hit is not None:
            return hit
        if not isinstance(alpha, Ordinal):
            raise TypeError("subscript must be an Ordinal")
        _check_term(body)
        self = object.__new__(cls)
        self.alpha = alpha
        self.body = body
        self.nodes = 1 + body.nodes
        cls._table[key] = self
        return self

    def __repr__(self):
        return term_to_str(self)


class _Branch:
    __slots__ = ()

    def __repr__(self):
        return term_to_str(self)


class Fq(_Branch):
    __slots__ = ("q", "children", "nodes")
    _table = {}

    def __new__(cls, q, children):
        children = tuple(children)
        key = (q, children)
        hit = cls._table.get(key)
        if hit is not None:
            return hit
        if not isinstance(q, int) or q < 0:
            raise ValueError("constants are non-negative integers")
        if not children:
            raise ValueError("child lists must be nonempty")
        for c in children:
            _check_term(c)
        self = object.__new__(cls)
        self.q = q
        self.children = children
        self.nodes = 1 + sum(c.nodes for c in children)
        cls._table[key] = self
        return self


class Fo(_Branch):
    __slots__ = ("alpha", "children", "nodes")
    _table = {}

    def __new__(cls, alpha, children):
        children = tuple(children)
        key = (alpha, children)
        hit = cls._table.get(key)
        if hit is not None:
            return hit
        if not isinstance(alpha, Ordinal):
            raise TypeError("subscript must be an Ordinal")
        if not children:
            raise ValueError("child lists must be nonempty")
        for c in children:
            _check_term(c)
        self = object.__new__(cls)
        self.alpha = alpha
        self.children = children
        self.nodes = 1 + sum(c.nodes for c in children)
        cls._table[key] = self
        return self


Term = (Const, Shift, Fq, Fo)


def _check_term(t):
    if not isinstance(t, Term):
        raise TypeError(f"not a term: {t!r}")


def term_size(u):
    """Number of nodes of the syntactic tree."""
    return u.nodes


def term_rank(u):
    """Height of the syntactic tree; leaves have rank 0."""
    if isinstance(u, Const):
        return 0
    if isinstance(u, Shift):
        return 1 + term_rank(u.body)
    return 1 + max(term_rank(c) for c in u.children)


def is_singleton(u):
    """True for constants and shift-chains ending in a constant."""
    while isinstance(u, Shift):
        u = u.body
    return isinstance(u, Const)


def singleton_value(u):
    if not is_singleton(u):
        raise SingletonTermError(f"{u!r} is not a singleton term")
    while isinstance(u, Shift):
        u = u.body
    return u.q


@dataclass(frozen=True)
class Decomposition:
    shift: Ordinal
    core: object  # a Term that is not a Shift


def term_decompose(u):
    """Strip the maximal leading chain of shift constructors.

    The ``shift`` is the ordinal sum of w^alpha over the stripped chain in
    order; the ``core`` is the residue and is never a Shift.
    """
    sh = ZERO
    while isinstance(u, Shift):
        sh = ord_add(sh, omega_power(u.alpha))
        u = u.body
    return Decomposition(sh, u)


def term_constants(u):
    """The set of constants occurring in a term."""
    if isinstance(u, Const):
        return {u.q}
    if isinstance(u, Shift):
        return term_constants(u.body)
    out = {u.q} if isinstance(u, Fq) else set()
    for c in u.children:
        out |= term_constants(c)
    return out


def check_subscripts(u, gamma):
    """Enforce the signature bound: every ordinal subscript must be < gamma."""
    if gamma is None:
        return
    if isinstance(u, Const):
        return
    if isinstance(u, Shift):
        if ord_cmp(u.alpha, gamma) >= 0:
            raise SubscriptBoundError(f"subscript {u.alpha} not below {gamma}")
        check_subscripts(u.body, gamma)
        return
    if isinstance(u, Fo) and ord_cmp(u.alpha, gamma) >= 0:
        raise SubscriptBoundError(f"subscript {u.alpha} not below {gamma}")
    for c in u.children:
        check_subscripts(c, gamma)


# --- the comparison relation -------------------------------------------------


class TermOrder:
    """Memoized decision procedure for the term comparison over one label
    quasiorder.

    Each clause below matches one constructor pair (u, v).  Branch roots
    behave like their root label followed by the flattened children:
    mapping root to root compares labels and sends every child into the
    whole right tree; otherwise the whole left tree sinks into one right
    subtree.  Every recursive call strictly decreases the combined node
    count except root-label extraction, which strictly decreases the number
    of branch constructors, so the recursion terminates.
    """

    __slots__ = ("qo", "_memo")

    def __init__(self, qo):
        self.qo = qo
        self._memo = PairMemo()

    def leq(self, u, v):
        cached = self._memo.get(u, v)
        if cached is not None:
            return cached
        return self._memo.put(u, v, self._decide(u, v))

    def _decide(self, u, v):
        leq = self.leq
        if isinstance(u, Const):
            if isinstance(v, Const):
                return self.qo.leq(u.q, v.q)
            if isinstance(v, Shift):
                return leq(u, v.body)
            if isinstance(v, Fq):
                return self.qo.leq(u.q, v.q) or any(leq(u, w) for w in v.children)
            return any(leq(u, w) for w in v.children)
        if isinstance(u, Shift):
            if isinstance(v, Const):
                return leq(u.body, v)
            if isinstance(v, Shift):
                c = ord_cmp(u.alpha, v.alpha)
                if c < 0:
                    return leq(u.body, v)
                if c == 0:
                    return leq(u.body, v.body)
                return leq(u, v.body)
            if isinstance(v, Fq):
                return leq(u, Const(v.q)) or any(leq(u, w) for w in v.children)
            return (leq(u, Shift(v.alpha, v.children[0]))
                    or any(leq(u, w) for w in v.children[1:]))
        if isinstance(u, Fq):
            root = Const(u.q)
            kids = u.children
        else:
            root = Shift(u.alpha, u.children[0])
            kids = u.children[1:]
        if isinstance(v, (Const, Shift)):
            return leq(root, v) and all(leq(c, v) for c in kids)
        if isinstance(v, Fq):
            vroot = Const(v.q)
            vsub = v.children
        else:
            vroot = Shift(v.alpha, v.children[0])
            vsub = v.children[1:]
        if leq(root, vroot) and all(leq(c, v) for c in kids):
            return True
        return any(leq(u, w) for w in vsub)


_ORDERS = {}


def term_leq(qo, u, v):
    """Decide the comparison relation; memoized per label quasiorder."""
    order = _ORDERS.get(qo)
    if order is None:
        order = _ORDERS[qo] = TermOrder(qo)
    return order.leq(u, v)


def clear_caches():
    _ORDERS.clear()


# --- flattening to labeled trees ---------------------------------------------

_TREES = {}


def term_tree(u):
    """The labeled tree of a term; labels are constants and shift-terms.

    Constants and shift-terms give singleton trees labeled by the term
    itself.  ``Fq(q, cs)`` gives a root labeled ``Const(q)`` with the trees
    of all children below; ``Fo(alpha, cs)`` gives a root labeled
    ``Shift(alpha, cs[0])`` with the trees of the remaining children below.
    """
    hit = _TREES.get(u)
    if hit is not None:
        return hit
    if isinstance(u, (Const, Shift)):
        tree = LabeledTree(((),), {(): u})
    else:
        if isinstance(u, Fq):
            root = Const(u.q)
            below = u.children
        else:
            root = Shift(u.alpha, u.children[0])
            below = u.children[1:]
        nodes = [()]
        labels = {(): root}
        for i, c in enumerate(below):
            sub = term_tree(c)
            for n in sub.nodes:
                m = (i,) + n
                nodes.append(m)
                labels[m] = sub.labels[n]
        tree = LabeledTree(nodes, labels)
    _TREES[u] = tree
    return tree


def term_paths(u):
    """All finite descent sequences of a non-singleton term.

    A sequence starts at a node of the tree of the decomposed core; at a
    singleton label it stops, otherwise it recurses into the tree of the
    label's own core.  Each sequence maps to the constant of its final
    singleton label.
    """
    if is_singleton(u):
        raise SingletonTermError(f"{u!r} has no descent sequences")
    out = {}

    def walk(prefix, t):
        core = term_decompose(t).core
        tree = term_tree(core)
        for node in tree.nodes:
            lab = tree.labels[node]
            seq = prefix + (node,)
            if is_singleton(lab):
                out[seq] = singleton_value(lab)
            else:
                walk(seq, lab)

    walk((), u)
    return out


def term_apply_aut(qo, g, u):
    """Relabel the constants of a term by an automorphism of the label
    quasiorder; subscripts are unchanged."""
    g = tuple(g)
    if g not in qo.automorphisms():
        raise NotAutomorphismError(f"{g} is not an automorphism")

    def go(t):
        if isinstance(t, Const):
            return Const(g[t.q])
        if isinstance(t, Shift):
            return Shift(t.alpha, go(t.body))
        if isinstance(t, Fq):
            return Fq(g[t.q], tuple(go(c) for c in t.children))
        return Fo(t.alpha, tuple(go(c) for c in t.children))

    return go(u)


def hom_oracle_leq(qo, u, v, cache=None):
    """Independent oracle for `term_leq`: monotone label-dominating map
    search between the flattened trees, with labels compared by the same
    relation restricted to singleton labels."""
    def label_leq(a, b):
        return term_leq(qo, a, b)

    return hom_leq(term_tree(u), term_tree(v), label_leq, cache=cache)


# --- concrete syntax ----------------------------------------------------------

_TERM_TOKEN = re.compile(r"\s*(\d+|Fq|Fo|s|w|[\[\](),^*+])")


def _term_tokens(text):
    out, pos = [], 0
    while pos < len(text):
        m = _TERM_TOKEN.match(text, pos)
        if not m:
            raise TermParseError(f"bad character at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _TermParser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, tok=None):
        t = self.peek()
        if t is None or (tok is not None and t != tok):
            raise TermParseError(f"expected {tok or 'token'}, got {t!r}")
        self.i += 1
        return t

    def subscript(self):
        self.take("[")
        depth, parts = 0, []
        while True:
            t = self.peek()
            if t is None:
                raise TermParseError("unterminated subscript")
            if t == "]" and depth == 0:
                break
            if t == "(":
                depth += 1
            elif t == ")":
                depth -= 1
            parts.append(self.take())
        self.take("]")
        return parse_ordinal("".join(parts))

    def term(self):
        t = self.peek()
        if t == "s":
            self.take("s")
            alpha = self.subscript()
            self.take("(")
            body = self.term()
            self.take(")")
            return Shift(alpha, body)
        if t in ("Fq", "Fo"):
            kind = self.take()
            sub = self.subscript()
            self.take("(")
            children = [self.term()]
            while self.peek() == ",":
                self.take(",")
                children.append(self.term())
            self.take(")")
            if kind == "Fq":
                if not sub.is_natural():
                    raise TermParseError("Fq takes a constant subscript")
                return Fq(sub.as_natural(), tuple(children))
            return Fo(sub, tuple(children))
        if t is not None and t.isdigit():
            return Const(int(self.take()))
        raise TermParseError(f"unexpected token {t!r}")


def parse_term(text, gamma=None):
    p = _TermParser(_term_tokens(text))
    u = p.term()
    if p.peek() is not None:
        raise TermParseError(f"trailing input at {p.peek()!r}")
    check_subscripts(u, gamma)
    return u


def term_to_str(u):
    if isinstance(u, Const):
        return str(u.q)
    if isinstance(u, Shift):
        return f"s[{ord_to_str(u.alpha)}]({term_to_str(u.body)})"
    inner = ",".join(term_to_str(c) for c in u.children)
    if isinstance(u, Fq):
        return f"Fq[{u.q}]({inner})"
    return f"Fo[{ord_to_str(u.alpha)}]({inner})"


def syntax_tree(u):
    """The syntactic tree as a labeled tree (constructor tags at nodes)."""
    if isinstance(u, Const):
        return LabeledTree(((),), {(): str(u.q)})
    if isinstance(u, Shift):
        kids = [u.body]
        tag = f"s[{ord_to_str(u.alpha)}]"
    elif isinstance(u, Fq):
        kids = list(u.children)
        tag = f"Fq[{u.q}]"
    else:
        kids = list(u.children)
        tag = f"Fo[{ord_to_str(u.alpha)}]"
    nodes = [()]
    labels = {(): tag}
    for i, c in enumerate(kids):
        sub = syntax_tree(c)
        for n in sub.nodes:
            m = (i,) + n
            nodes.append(m)
            labels[m] = sub.labels[n]
    return LabeledTree(nodes, labels)


# --- enumeration --------------------------------------------------------------


def enumerate_terms(num_labels, max_nodes, subscripts=(), max_children=None,
                    constructors=("Const", "Shift", "Fq", "Fo")):
    """All terms with at most ``max_nodes`` syntactic nodes, deterministically
    ordered by size.  ``subscripts`` is the pool of ordinal subscripts;
    ``max_children`` bounds branch arity (None: bounded by the node budget
    only)."""
    subscripts = tuple(subscripts)
    by_size = {1: [Const(q) for q in range(num_labels)]}

    def seqs(total, remaining):
        # ordered child tuples with the given total node count
        if remaining is not None and remaining == 0:
            return
        for first in range(1, total + 1):
            for head in by_size.get(first, ()):
                if first == total:
                    yield (head,)
                else:
                    rest = None if remaining is None else remaining - 1
                    for tail in seqs(total - first, rest):
                        yield (head,) + tail

    for n in range(2, max_nodes + 1):
        out = []
        if "Shift" in constructors:
            for a in subscripts:
                for t in by_size[n - 1]:
                    out.append(Shift(a, t))
        if "Fq" in constructors:
            for q in range(num_labels):
                for cs in seqs(n - 1, max_children):
                    out.append(Fq(q, cs))
        if "Fo" in constructors:
            for a in subscripts:
                for cs in seqs(n - 1, max_children):
                    out.append(Fo(a, cs))
        by_size[n] = out

    result = []
    for n in range(1, max_nodes + 1):
        result.extend(by_size.get(n, ()))
    return tuple(result)
