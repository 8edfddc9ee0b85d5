"""Set-side of the fine hierarchy over a finite space.

A *base* grades the subsets of a carrier by ordinal thresholds: level(a) is
the family attached to the greatest threshold <= a.  Every level is a
lattice of sets containing the empty set and the carrier, each level plus
its complements sits inside every later level, and the last level is the
full power set (so arbitrary ordinal shifts stay total).  The stock example
grades a finite T0 space by (opens, everything).

A *T-family* indexes sets by the nodes of a finite tree; its *components*
subtract everything at strictly deeper nodes.  A *u-family* nests
T-families along the flattened tree of a term: nodes with singleton labels
terminate and carry that label's constant, nodes with shift labels carry a
nested family over the node's component, one level up in the base.
Evaluating a family assigns to each point the constants of the terminating
components containing it -- at most one partition arises, and reduced
families (pairwise disjoint siblings everywhere) always determine one.

``member`` decides whether a partition arises from *some* family over a
base, by structural recursion on the term; ``member_enum`` is the direct
enumeration cross-oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ordinals import ZERO, ONE, ord_cmp, left_subtract, parse_ordinal, ord_to_str
from .spaces import (QPartition, mask_points, points_mask, cat_quantifier,
                     is_cos, NotOpenSurjectionError, DifferentSpacesError)
from .terms import (Shift, Fq, is_singleton, singleton_value,
                    term_decompose, term_tree, term_to_str)

__all__ = [
    "Base", "borel", "base_shift", "base_restrict",
    "TFamily", "components", "reduce_tfamily", "trivial_tfamily",
    "level_has_reduction",
    "UFamily", "WHOLE", "NotDetermined",
    "InvalidFamilyError", "NoReductError", "NodeNotInTreeError",
    "validate_family", "family_eval", "family_restrict", "family_reduct",
    "family_pullback", "family_pushforward",
    "member", "member_enum", "enumerate_families", "level_set",
    "family_from_json", "family_to_json", "clear_caches",
]


class InvalidFamilyError(ValueError):
    pass


class NoReductError(ValueError):
    pass


class NodeNotInTreeError(ValueError):
    pass


# --- bases -------------------------------------------------------------------


def _all_submasks(mask):
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return tuple(sorted(out))


class Base:
    """Interned threshold-graded family of set lattices over a carrier."""

    __slots__ = ("space", "carrier", "steps", "_hash")
    _table = {}

    def __new__(cls, space, carrier, steps):
        steps = tuple((t, tuple(sorted(set(lvl)))) for t, lvl in steps)
        key = (space, carrier, steps)
        hit = cls._table.get(key)
        if hit is not None:
            return hit
        if not steps or not steps[0][0].is_zero:
            raise ValueError("the first threshold must be 0")
        for (t1, _), (t2, _) in zip(steps, steps[1:]):
            if ord_cmp(t1, t2) >= 0:
                raise ValueError("thresholds must strictly increase")
        for _, lvl in steps:
            lvls = set(lvl)
            if 0 not in lvls or carrier not in lvls:
                raise ValueError("levels contain the empty set and the carrier")
            for a in lvl:
                if a & ~carrier:
                    raise ValueError("level sets must lie inside the carrier")
                for b in lvl:
                    if (a | b) not in lvls or (a & b) not in lvls:
                        raise ValueError("levels are lattices of sets")
        for (_, l1), (_, l2) in zip(steps, steps[1:]):
            l2s = set(l2)
            for a in l1:
                if a not in l2s or (carrier & ~a) not in l2s:
                    raise ValueError("each level and its complements sit in "
                                     "every later level")
        if steps[-1][1] != _all_submasks(carrier):
            raise ValueError("the final level must be the full power set")
        self = object.__new__(cls)
        self.space = space
        self.carrier = carrier
        self.steps = steps
        self._hash = hash(key)
        cls._table[key] = self
        return self

    def level(self, alpha):
        """The level at threshold ``alpha``: greatest step threshold <= it."""
        lvl = self.steps[0][1]
        for t, l in self.steps:
            if ord_cmp(t, alpha) <= 0:
                lvl = l
            else:
                break
        return lvl

    @property
    def level0(self):
        return self.steps[0][1]

    def shift(self, beta):
        """Re-index so the new level(a) is the old level(beta + a)."""
        if beta.is_zero:
            return self
        steps = [(ZERO, self.level(beta))]
        for t, lvl in self.steps:
            if ord_cmp(t, beta) > 0:
                steps.append((left_subtract(beta, t), lvl))
        return Base(self.space, self.carrier, steps)

    def restrict(self, mask):
        """Trace every level on a sub-carrier."""
        mask &= self.carrier
        if mask == self.carrier:
            return self
        steps = [(t, tuple(sorted({a & mask for a in lvl})))
                 for t, lvl in self.steps]
        return Base(self.space, mask, steps)

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return self._hash

    def __repr__(self):
        pts = self.space.set_of_names(self.carrier)
        return f"Base(carrier={pts}, {len(self.steps)} steps)"

    @classmethod
    def from_json(cls, space, doc):
        steps = []
        for step in doc["steps"]:
            t = parse_ordinal(step["threshold"])
            lvl = tuple(space.mask_of_names(s) for s in step["sets"])
            steps.append((t, lvl))
        carrier = space.mask_of_names(doc["carrier"]) if "carrier" in doc \
            else space.full
        return cls(space, carrier, steps)

    def to_json(self):
        return {
            "carrier": list(self.space.set_of_names(self.carrier)),
            "steps": [{"threshold": ord_to_str(t),
                       "sets": [list(self.space.set_of_names(m)) for m in lvl]}
                      for t, lvl in self.steps],
        }


def borel(space):
    """The stock base on a finite T0 space: opens at 0, everything from 1
    on (every subset of a finite T0 space is a difference of opens)."""
    return Base(space, space.full,
                ((ZERO, space.opens()), (ONE, _all_submasks(space.full))))


def base_shift(base, beta):
    return base.shift(beta)


def base_restrict(base, mask):
    return base.restrict(mask)


# --- tree-indexed families ----------------------------------------------------


def _check_tree_nodes(nodes):
    nodes = tuple(sorted(tuple(n) for n in nodes))
    nodeset = set(nodes)
    if () not in nodeset:
        raise ValueError("a tree contains the empty node")
    for n in nodes:
        if n and n[:-1] not in nodeset:
            raise ValueError("tree nodes must be prefix-closed")
        if n and n[-1] > 0 and n[:-1] + (n[-1] - 1,) not in nodeset:
            raise ValueError("tree nodes must be normal (no sibling gaps)")
    return nodes


class TFamily:
    """Sets indexed by the nodes of a finite normal tree."""

    __slots__ = ("nodes", "sets")

    def __init__(self, nodes, sets):
        self.nodes = _check_tree_nodes(nodes)
        sets = dict(sets)
        if set(sets) != set(self.nodes):
            raise ValueError("need exactly one set per node")
        self.sets = sets

    def children(self, node):
        d = len(node)
        return tuple(n for n in self.nodes
                     if len(n) == d + 1 and n[:d] == node)

    def is_monotone(self):
        return all(self.sets[n] & ~self.sets[n[:-1]] == 0
                   for n in self.nodes if n)

    def is_reduced(self):
        if not self.is_monotone():
            return False
        for n in self.nodes:
            kids = self.children(n)
            for a, b in itertools.combinations(kids, 2):
                if self.sets[a] & self.sets[b]:
                    return False
        return True

    def monotonize(self):
        """Replace each set by the union over its subtree; components are
        unchanged by this."""
        new = {n: 0 for n in self.nodes}
        for m in self.nodes:
            for n in self.nodes:
                if m[:len(n)] == n:
                    new[n] |= self.sets[m]
        return TFamily(self.nodes, new)

    def __eq__(self, other):
        return (isinstance(other, TFamily) and self.nodes == other.nodes
                and self.sets == other.sets)

    def __repr__(self):
        return f"TFamily({len(self.nodes)} nodes)"


def components(fam):
    """The set at each node minus everything at strictly deeper nodes."""
    out = {}
    for n in fam.nodes:
        deeper = 0
        for m in fam.nodes:
            if len(m) > len(n) and m[:len(n)] == n:
                deeper |= fam.sets[m]
        out[n] = fam.sets[n] & ~deeper
    return out


def _popcount(m):
    return bin(m).count("1")


def _reduce_sequence(sets, level):
    """A pairwise-disjoint refinement of ``sets`` inside ``level`` with the
    same union, each member below the original; earliest positions prefer
    the largest candidates, so the result is deterministic."""
    k = len(sets)
    total = 0
    for s in sets:
        total |= s
    cands = [sorted((m for m in level if m & ~s == 0),
                    key=lambda m: (-_popcount(m), m)) for s in sets]
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        acc = 0
        for m in cands[i]:
            acc |= m
        suffix[i] = suffix[i + 1] | acc
    out = [0] * k

    def bt(i, used):
        if total & ~(used | suffix[i]):
            return False
        if i == k:
            return used == total
        for m in cands[i]:
            if m & used:
                continue
            out[i] = m
            if bt(i + 1, used | m):
                return True
        return False

    if not bt(0, 0):
        raise NoReductError(f"no reduct for {sets} in the given level")
    return tuple(out)


def reduce_tfamily(fam, level):
    """Top-down sibling reduction of a monotone T-family: reduce the sets at
    each node's children, intersect everything deeper with the choice, and
    recurse.  Components only shrink."""
    if not fam.is_monotone():
        raise ValueError("reduction applies to monotone families")
    level = tuple(sorted(set(level)))
    sets = dict(fam.sets)

    def go(node):
        kids = [n for n in fam.nodes
                if len(n) == len(node) + 1 and n[:len(node)] == node]
        if kids:
            vs = _reduce_sequence([sets[k] for k in kids], level)
            for k, v in zip(kids, vs):
                for m in fam.nodes:
                    if m[:len(k)] == k:
                        sets[m] &= v
            for k in kids:
                go(k)

    go(())
    return TFamily(fam.nodes, sets)


def trivial_tfamily(nodes, rho, carrier):
    """The unique reduced family whose only nonempty component, the whole
    carrier, sits at ``rho``: the carrier along the path to ``rho``, empty
    elsewhere."""
    nodes = _check_tree_nodes(nodes)
    rho = tuple(rho)
    if rho not in nodes:
        raise NodeNotInTreeError(f"{rho} is not a node of the tree")
    sets = {n: (carrier if rho[:len(n)] == n else 0) for n in nodes}
    return TFamily(nodes, sets)


def level_has_reduction(level, carrier, max_len=3):
    """Bounded check that every short sequence from the level admits a
    pairwise-disjoint refinement with the same union inside the level.
    ``max_len`` bounds the sequence length (existence of a refinement is
    permutation-invariant, so unordered selections suffice)."""
    level = tuple(sorted(set(level)))
    for k in range(1, max_len + 1):
        for seq in itertools.combinations_with_replacement(level, k):
            try:
                _reduce_sequence(list(seq), level)
            except NoReductError:
                return False
    return True


# --- iterated families --------------------------------------------------------


class _Whole:
    __slots__ = ()

    def __repr__(self):
        return "Whole"


WHOLE = _Whole()


class UFamily:
    """A nested family: a monotone T-family over the flattened tree of the
    term's core, plus one nested family per shift-labeled node, living on
    that node's component."""

    __slots__ = ("carrier", "sets", "children", "_key")

    def __init__(self, carrier, sets, children=()):
        self.carrier = carrier
        self.sets = dict(sets)
        self.children = dict(children)
        self._key = (carrier,
                     tuple(sorted(self.sets.items())),
                     tuple(sorted(self.children.items())))

    def __eq__(self, other):
        return isinstance(other, UFamily) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"UFamily(carrier={self.carrier:b}, {len(self.sets)} nodes)"


@dataclass(frozen=True)
class NotDetermined:
    """Evaluation found a point inside terminating components that carry
    different constants."""
    point: int
    labels: tuple

    def to_json(self, space):
        return {"undetermined": {"point": space.names[self.point],
                                 "labels": list(self.labels)}}


def _components_of(nodes, sets):
    out = {}
    for n in nodes:
        deeper = 0
        for m in nodes:
            if len(m) > len(n) and m[:len(n)] == n:
                deeper |= sets[m]
        out[n] = sets[n] & ~deeper
    return out


def validate_family(F, u, base):
    """Structural and level-membership validation of a family for a term
    over a base (whose carrier is the family's carrier)."""
    if is_singleton(u):
        if F is not WHOLE:
            raise InvalidFamilyError(
                f"a singleton term takes the whole-carrier marker, got {F!r}")
        return
    if F is WHOLE:
        raise InvalidFamilyError(f"{term_to_str(u)} needs an explicit family")
    dec = term_decompose(u)
    b2 = base.shift(dec.shift)
    tree = term_tree(dec.core)
    if F.carrier != base.carrier:
        raise InvalidFamilyError("family carrier differs from the base carrier")
    if set(F.sets) != set(tree.nodes):
        raise InvalidFamilyError("sets must be indexed by the flattened tree")
    lvl = set(b2.level0)
    for node in tree.nodes:
        m = F.sets[node]
        if m not in lvl:
            raise InvalidFamilyError(f"set at {node} is outside the working level")
        if node and m & ~F.sets[node[:-1]]:
            raise InvalidFamilyError(f"family is not monotone at {node}")
    if F.sets[()] != base.carrier:
        raise InvalidFamilyError("the root set must be the whole carrier")
    comps = _components_of(tree.nodes, F.sets)
    for node in tree.nodes:
        lab = tree.labels[node]
        child = F.children.get(node)
        if is_singleton(lab):
            if child is not None and child is not WHOLE:
                raise InvalidFamilyError(
                    f"node {node} has a singleton label and takes no nested family")
        else:
            if child is None:
                raise InvalidFamilyError(f"missing nested family at {node}")
            validate_family(child, lab, b2.restrict(comps[node]))


def _terminating_pieces(F, u, base, out):
    """Collect (component mask, constant) across all nesting levels."""
    if is_singleton(u):
        out.append((base.carrier, singleton_value(u)))
        return
    dec = term_decompose(u)
    b2 = base.shift(dec.shift)
    tree = term_tree(dec.core)
    comps = _components_of(tree.nodes, F.sets)
    for node in tree.nodes:
        lab = tree.labels[node]
        if is_singleton(lab):
            out.append((comps[node], singleton_value(lab)))
        else:
            _terminating_pieces(F.children[node], lab,
                                b2.restrict(comps[node]), out)


def _eval_pieces(F, u, base, qo):
    pieces = []
    _terminating_pieces(F, u, base, pieces)
    space = base.space
    values = [None] * space.n
    conflicts = {}
    for m, q in pieces:
        for p in mask_points(m):
            if values[p] is None:
                values[p] = q
            elif values[p] != q:
                conflicts.setdefault(p, {values[p]}).add(q)
    if conflicts:
        p = min(conflicts)
        return NotDetermined(p, tuple(sorted(conflicts[p])))
    uncovered = base.carrier & ~points_mask(
        p for p in range(space.n) if values[p] is not None)
    assert uncovered == 0, "terminating components must cover the carrier"
    return QPartition(space, qo, values)


def family_eval(F, u, base, qo):
    """Run the mind-change evaluation.  Returns the determined partition of
    the carrier, or a `NotDetermined` witness (one point and its clashing
    constants)."""
    validate_family(F, u, base)
    return _eval_pieces(F, u, base, qo)


def family_restrict(F, mask):
    """Trace a family on a subset: intersect every carrier and set."""
    if F is WHOLE:
        return WHOLE
    return UFamily(F.carrier & mask,
                   {n: m & mask for n, m in F.sets.items()},
                   {n: family_restrict(c, mask) for n, c in F.children.items()})


def family_reduct(F, u, base):
    """A reduced family whose terminating components sit inside the
    originals; if the input determined a partition, so does the reduct,
    and reduced families always determine one."""
    validate_family(F, u, base)

    def go(F, u, base):
        if F is WHOLE:
            return WHOLE
        dec = term_decompose(u)
        b2 = base.shift(dec.shift)
        tree = term_tree(dec.core)
        rtf = reduce_tfamily(TFamily(tree.nodes, F.sets), b2.level0)
        comps = _components_of(tree.nodes, rtf.sets)
        children = {}
        for node in tree.nodes:
            lab = tree.labels[node]
            if not is_singleton(lab):
                sub = family_restrict(F.children[node], comps[node])
                children[node] = go(sub, lab, b2.restrict(comps[node]))
        return UFamily(F.carrier, rtf.sets, children)

    return go(F, u, base)


def _family_map_masks(F, fn):
    if F is WHOLE:
        return WHOLE
    return UFamily(fn(F.carrier),
                   {n: fn(m) for n, m in F.sets.items()},
                   {n: _family_map_masks(c, fn) for n, c in F.children.items()})


def family_pullback(f, F, u, base_target):
    """Replace every set by its preimage under a continuous map.  The result
    is a family over the stock base of the source (restricted to the
    preimage of the carrier); evaluation commutes with precomposition."""
    if f.dst != base_target.space:
        raise DifferentSpacesError("map target differs from the base space")
    validate_family(F, u, base_target)
    G = _family_map_masks(F, f.preimage_mask)
    src_base = borel(f.src).restrict(f.preimage_mask(base_target.carrier))
    validate_family(G, u, src_base)
    return G


def family_pushforward(f, F, u, base_source):
    """Push a full-carrier family through a continuous open surjection by
    applying the category quantifier to every set, clipping nested levels to
    the new components.  If the input determined A o f, the image determines
    A."""
    if not is_cos(f):
        raise NotOpenSurjectionError("pushforward needs a continuous open surjection")
    if f.src != base_source.space:
        raise DifferentSpacesError("map source differs from the base space")
    if base_source.carrier != f.src.full:
        raise ValueError("pushforward applies to full-carrier families")
    validate_family(F, u, base_source)

    def go(F, u, dst_carrier):
        if F is WHOLE:
            return WHOLE
        dec = term_decompose(u)
        tree = term_tree(dec.core)
        newsets = {n: cat_quantifier(f, m) & dst_carrier
                   for n, m in F.sets.items()}
        # the clipped image of the root is exactly the new carrier: the new
        # component sits inside the image of the old one
        assert newsets[()] == dst_carrier
        comps = _components_of(tree.nodes, newsets)
        children = {}
        for node in tree.nodes:
            lab = tree.labels[node]
            if not is_singleton(lab):
                children[node] = go(F.children[node], lab, comps[node])
        return UFamily(dst_carrier, newsets, children)

    G = go(F, u, f.dst.full)
    validate_family(G, u, borel(f.dst))
    return G


# --- membership ---------------------------------------------------------------

_MEMBER_CACHE = {}
_MISS = object()


def clear_caches():
    _MEMBER_CACHE.clear()


def _restrict_avals(avals, mask):
    return tuple(v if mask >> p & 1 else None for p, v in enumerate(avals))


def _member(base, u, avals):
    key = (base, u, avals)
    hit = _MEMBER_CACHE.get(key, _MISS)
    if hit is not _MISS:
        return hit
    if is_singleton(u):
        q = singleton_value(u)
        r = all(avals[p] == q for p in mask_points(base.carrier))
    else:
        dec = term_decompose(u)
        b2 = base.shift(dec.shift)
        core = dec.core
        cands = b2.level0
        carrier = base.carrier
        if isinstance(core, Fq):
            kids = core.children
            need = 0
            for p in mask_points(carrier):
                if avals[p] != core.q:
                    need |= 1 << p
            unions = {0}
            for kid in kids:
                valid = [m for m in cands
                         if _member(b2.restrict(m), kid, _restrict_avals(avals, m))]
                unions = {un | m for un in unions for m in valid}
            r = any(need & ~un == 0 for un in unions)
        else:
            head = Shift(core.alpha, core.children[0])
            unions = {0}
            for kid in core.children[1:]:
                valid = [m for m in cands
                         if _member(b2.restrict(m), kid, _restrict_avals(avals, m))]
                unions = {un | m for un in unions for m in valid}
            r = any(_member(b2.restrict(carrier & ~un), head,
                            _restrict_avals(avals, carrier & ~un))
                    for un in sorted(unions))
    _MEMBER_CACHE[key] = r
    return r


def member(A, u, base):
    """Does some family for ``u`` over ``base`` determine ``A`` (restricted
    to the carrier)?  Decided by structural recursion: singleton terms need
    a constant partition; shift chains move the base up by the chain's
    ordinal; a branch guesses working-level sets for its children, requires
    the root constant (or the shifted head term) on the residue, and
    recurses on the restrictions."""
    if A.space != base.space:
        raise DifferentSpacesError("partition and base live on different spaces")
    if base.carrier & ~A.carrier:
        raise ValueError("the partition must label the whole carrier")
    return _member(base, u, _restrict_avals(A.values, base.carrier))


def enumerate_families(u, base, reduced=False):
    """All structurally valid families for a term over a base, depth-first,
    deterministic.  With ``reduced`` only families with pairwise disjoint
    siblings at every nesting level are produced."""
    if is_singleton(u):
        yield WHOLE
        return
    dec = term_decompose(u)
    b2 = base.shift(dec.shift)
    tree = term_tree(dec.core)
    nodes = tree.nodes
    cands = b2.level0
    snodes = [n for n in nodes if not is_singleton(tree.labels[n])]

    def assign(i, sets):
        if i == len(nodes):
            yield dict(sets)
            return
        node = nodes[i]
        if node == ():
            sets[node] = base.carrier
            yield from assign(i + 1, sets)
            del sets[node]
            return
        pm = sets[node[:-1]]
        for m in cands:
            if m & ~pm:
                continue
            if reduced and any(
                    sets.get(node[:-1] + (j,), 0) & m for j in range(node[-1])):
                continue
            sets[node] = m
            yield from assign(i + 1, sets)
            del sets[node]

    for sets in assign(0, {}):
        comps = _components_of(nodes, sets)

        def rec(j, acc):
            if j == len(snodes):
                yield UFamily(base.carrier, sets, dict(acc))
                return
            n = snodes[j]
            for sub in enumerate_families(tree.labels[n],
                                          b2.restrict(comps[n]), reduced):
                acc[n] = sub
                yield from rec(j + 1, acc)
            acc.pop(n, None)

        yield from rec(0, {})


def member_enum(A, u, base, qo=None, reduced=False, max_families=None):
    """Direct-enumeration cross-oracle for `member`: try every structurally
    valid family and test whether one evaluates to the partition.  Intended
    for tiny instances; ``max_families`` aborts oversized searches."""
    if A.space != base.space:
        raise DifferentSpacesError("partition and base live on different spaces")
    if base.carrier & ~A.carrier:
        raise ValueError("the partition must label the whole carrier")
    qo = qo or A.qo
    target = _restrict_avals(A.values, base.carrier)
    count = 0
    for F in enumerate_families(u, base, reduced=reduced):
        count += 1
        if max_families is not None and count > max_families:
            raise RuntimeError("enumeration budget exceeded")
        res = _eval_pieces(F, u, base, qo)
        if isinstance(res, QPartition) and res.values == target:
            return True
    return False


def level_set(space, qo, u, base=None):
    """All partitions of the base's carrier that some family for the term
    determines; the stock base of the space by default."""
    if base is None:
        base = borel(space)
    pts = mask_points(base.carrier)
    out = []
    for combo in itertools.product(range(qo.size), repeat=len(pts)):
        values = [None] * space.n
        for p, v in zip(pts, combo):
            values[p] = v
        A = QPartition(space, qo, values)
        if member(A, u, base):
            out.append(A)
    return tuple(out)


def level_set_enum(space, qo, u, base=None, reduced=False, max_families=None):
    """The level computed the slow way: evaluate every family and collect
    the determined partitions.  Cross-oracle for `level_set`/`member`."""
    if base is None:
        base = borel(space)
    seen = set()
    count = 0
    for F in enumerate_families(u, base, reduced=reduced):
        count += 1
        if max_families is not None and count > max_families:
            raise RuntimeError("enumeration budget exceeded")
        res = _eval_pieces(F, u, base, qo)
        if isinstance(res, QPartition):
            seen.add(res.values)
    return seen


# --- JSON ----------------------------------------------------------------------


def _node_key(node):
    return "".join(str(i) for i in node)


def _node_from_key(key):
    return tuple(int(ch) for ch in key)


def family_from_json(space, doc):
    if "sets" not in doc or doc.get("whole"):
        return WHOLE
    carrier = space.mask_of_names(doc["carrier"])
    sets = {_node_from_key(k): space.mask_of_names(v)
            for k, v in doc["sets"].items()}
    children = {_node_from_key(k): family_from_json(space, sub)
                for k, sub in doc.get("children", {}).items()}
    return UFamily(carrier, sets, children)


def family_to_json(space, F, u):
    doc = {"term": term_to_str(u)}
    if F is WHOLE:
        doc["whole"] = True
        return doc
    dec = term_decompose(u)
    tree = term_tree(dec.core)
    doc["carrier"] = list(space.set_of_names(F.carrier))
    doc["sets"] = {_node_key(n): list(space.set_of_names(m))
                   for n, m in sorted(F.sets.items())}
    if F.children:
        doc["children"] = {_node_key(n): family_to_json(space, c, tree.labels[n])
                           for n, c in sorted(F.children.items())}
    return doc
