"""Seeded exhaustive property suites over desk-scale instances.

Each suite enumerates every instance inside its configured bounds (seeded
sampling only where the instance space is unbounded, e.g. transitivity
triples), evaluates one theorem-shaped invariant, and reports counts plus
any counterexample verbatim.  Reports are byte-identical across runs with
equal configuration.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cmp_to_key

from ._memo import PairMemo
from . import hierarchy
from .hierarchy import (borel, member, level_set, family_eval, family_reduct,
                        enumerate_families, NotDetermined)
from .labeled_trees import hom_leq
from .ordinals import (Ordinal, ZERO, from_int, omega_power, ord_cmp,
                       ord_to_str, f_map, wadge_cmp, wadge_from_int,
                       wadge_to_str, OMEGA)
from .quasiorder import antichain
from .spaces import (FinSpace, QPartition, enum_cos, enumerate_posets,
                     discrete, sierpinski, product, is_meager,
                     is_meager_bruteforce, monotone_selfmaps)
from .terms import (Shift, TermOrder, enumerate_terms, term_tree,
                    term_to_str, parse_term)

__all__ = ["SuiteConfig", "SuiteReport", "UnknownSuiteError", "run_suite",
           "SUITE_NAMES"]


class UnknownSuiteError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suite: str
    max_nodes: int = 4
    max_subscript: int = 1
    max_points: int = 3
    max_q: int = 3
    max_children: int | None = None
    seed: int = 0
    sample: int = 100_000
    families: int = 1000
    out: str | None = None

    def __post_init__(self):
        for name in ("max_nodes", "max_subscript", "max_points", "max_q"):
            if getattr(self, name) < 0 or (name != "max_subscript"
                                           and getattr(self, name) < 1):
                raise ValueError(f"{name} must be positive")


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checked: int = 0
    violations: int = 0
    counterexamples: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return self.violations == 0

    def fail(self, message):
        self.violations += 1
        self.counterexamples.append(message)

    def text(self):
        lines = [f"suite: {self.suite}"]
        lines.append("params: " + " ".join(f"{k}={v}"
                                           for k, v in sorted(self.params.items())))
        lines.append(f"checked: {self.checked}")
        lines.append(f"violations: {self.violations}")
        for c in self.counterexamples:
            lines.append(f"counterexample: {c}")
        for n in self.notes:
            lines.append(f"note: {n}")
        lines.append("result: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {"suite": self.suite, "params": self.params,
                "checked": self.checked, "violations": self.violations,
                "counterexamples": list(self.counterexamples),
                "notes": list(self.notes),
                "result": "PASS" if self.passed else "FAIL"}


def _subscripts(cfg):
    return tuple(from_int(i) for i in range(cfg.max_subscript + 1))


def _spaces(cfg, max_points=None):
    n = max_points if max_points is not None else cfg.max_points
    out = []
    for k in range(1, n + 1):
        out.extend(enumerate_posets(k))
    return tuple(out)


def _space_tag(space):
    rel = ",".join(f"{space.names[i]}<{space.names[j]}"
                   for i in range(space.n) for j in range(space.n)
                   if i != j and space.le[i][j])
    return f"[{' '.join(space.names)};{rel}]"


def _partitions(space, qo):
    return tuple(itertools.product(range(qo.size), repeat=space.n))


def _qpartition(space, qo, values):
    return QPartition(space, qo, values)


def _level_masks(space, qo, terms, base=None):
    """Per term, the bitmask over the index of all total partitions that
    belong to its level over the base."""
    parts = _partitions(space, qo)
    base = base if base is not None else borel(space)
    out = {}
    for u in terms:
        mask = 0
        for i, vals in enumerate(parts):
            if member(_qpartition(space, qo, vals), u, base):
                mask |= 1 << i
        out[u] = mask
    return out


def _part_tag(space, values):
    return "{" + ",".join(f"{space.names[p]}:{v}"
                          for p, v in enumerate(values)) + "}"


# --- individual suites ---------------------------------------------------------


def _suite_qo_axioms(cfg, rep):
    qo = antichain(cfg.max_q)
    terms = enumerate_terms(cfg.max_q, cfg.max_nodes, _subscripts(cfg),
                            cfg.max_children)
    order = TermOrder(qo)
    for u in terms:
        rep.checked += 1
        if not order.leq(u, u):
            rep.fail(f"not reflexive at {term_to_str(u)}")
    rng = random.Random(cfg.seed)
    n = len(terms)
    for _ in range(cfg.sample):
        u = terms[rng.randrange(n)]
        v = terms[rng.randrange(n)]
        w = terms[rng.randrange(n)]
        rep.checked += 1
        if order.leq(u, v) and order.leq(v, w) and not order.leq(u, w):
            rep.fail(f"not transitive at {term_to_str(u)} / "
                     f"{term_to_str(v)} / {term_to_str(w)}")
    rep.notes.append(f"terms={n} sampled_triples={cfg.sample}")


def _suite_hom_oracle(cfg, rep):
    qo = antichain(cfg.max_q)
    terms = enumerate_terms(cfg.max_q, cfg.max_nodes, _subscripts(cfg),
                            cfg.max_children)
    order = TermOrder(qo)
    cache = PairMemo()
    label_leq = order.leq
    for u in terms:
        tu = term_tree(u)
        for v in terms:
            rep.checked += 1
            a = order.leq(u, v)
            b = hom_leq(tu, term_tree(v), label_leq, cache=cache)
            if a != b:
                rep.fail(f"structural={a} tree-map={b} at "
                         f"{term_to_str(u)} vs {term_to_str(v)}")
    rep.notes.append(f"terms={len(terms)}")


def _suite_inclusion(cfg, rep):
    spaces = _spaces(cfg)
    for k in range(2, cfg.max_q + 1):
        qo = antichain(k)
        terms = enumerate_terms(k, cfg.max_nodes, _subscripts(cfg),
                                cfg.max_children)
        order = TermOrder(qo)
        masks = [_level_masks(space, qo, terms) for space in spaces]
        for u in terms:
            rows = [m[u] for m in masks]
            for v in terms:
                if not order.leq(u, v):
                    continue
                for si, space in enumerate(spaces):
                    rep.checked += 1
                    if rows[si] & ~masks[si][v]:
                        rep.fail(f"k={k} {_space_tag(space)} "
                                 f"{term_to_str(u)} below {term_to_str(v)} "
                                 "but level sets are not nested")
        rep.notes.append(f"k={k} terms={len(terms)} spaces={len(spaces)}")


def _suite_shift_law(cfg, rep):
    qo = antichain(2)
    terms = enumerate_terms(2, max(cfg.max_nodes - 1, 1), _subscripts(cfg),
                            cfg.max_children)
    for space in _spaces(cfg):
        base = borel(space)
        for alpha in _subscripts(cfg):
            shifted = base.shift(omega_power(alpha))
            for u in terms:
                rep.checked += 1
                left = {A.values for A in level_set(space, qo, Shift(alpha, u))}
                right = {A.values for A in level_set(space, qo, u, shifted)}
                if left != right:
                    rep.fail(f"{_space_tag(space)} alpha={ord_to_str(alpha)} "
                             f"{term_to_str(u)}: wrapped level set differs "
                             "from the shifted-base level set")


def _suite_wadge_closure(cfg, rep):
    spaces = _spaces(cfg)
    for k in range(2, cfg.max_q + 1):
        qo = antichain(k)
        terms = enumerate_terms(k, cfg.max_nodes, _subscripts(cfg),
                                cfg.max_children)
        for space in spaces:
            parts = _partitions(space, qo)
            idx = {vals: i for i, vals in enumerate(parts)}
            below = [0] * len(parts)
            selfmaps = monotone_selfmaps(space)
            for i, a in enumerate(parts):
                for b in parts:
                    # b reduces to a when some monotone self-map matches
                    # labels pointwise (antichain labels compare by equality)
                    if any(all(b[x] == a[g[x]] for x in range(space.n))
                           for g in selfmaps):
                        below[i] |= 1 << idx[b]
            masks = _level_masks(space, qo, terms)
            for u in terms:
                ls = masks[u]
                rep.checked += 1
                for i in range(len(parts)):
                    if ls >> i & 1 and below[i] & ~ls:
                        bad = below[i] & ~ls
                        j = bad.bit_length() - 1
                        rep.fail(f"k={k} {_space_tag(space)} {term_to_str(u)}: "
                                 f"{_part_tag(space, parts[j])} reduces to "
                                 f"{_part_tag(space, parts[i])} but is outside")
                        break


def _suite_preservation(cfg, rep):
    xs = _spaces(cfg)
    ys = _spaces(cfg, max_points=min(2, cfg.max_points))
    for k in range(2, cfg.max_q + 1):
        qo = antichain(k)
        terms = enumerate_terms(k, cfg.max_nodes, _subscripts(cfg),
                                cfg.max_children)
        ymasks = {y: _level_masks(y, qo, terms) for y in ys}
        for X in xs:
            xmasks = None
            for Y in ys:
                maps = enum_cos(X, Y)
                if not maps:
                    continue
                if xmasks is None:
                    xmasks = _level_masks(X, qo, terms)
                yparts = _partitions(Y, qo)
                xidx = {vals: i for i, vals in enumerate(_partitions(X, qo))}
                for f in maps:
                    pulled = [xidx[tuple(vals[f(x)] for x in range(X.n))]
                              for vals in yparts]
                    for u in terms:
                        xm, ym = xmasks[u], ymasks[Y][u]
                        for i in range(len(yparts)):
                            rep.checked += 1
                            if (ym >> i & 1) != (xm >> pulled[i] & 1):
                                rep.fail(
                                    f"k={k} {f!r} {term_to_str(u)} "
                                    f"{_part_tag(Y, yparts[i])}: membership "
                                    "is not preserved")
        # the 4-point product projecting onto its first factor
        S = sierpinski()
        X4, proj, _ = product(S, discrete(2, names=("0", "1")))
        sbase, xbase = borel(S), borel(X4)
        smasks = _level_masks(S, qo, terms)
        for i, vals in enumerate(_partitions(S, qo)):
            A = _qpartition(S, qo, vals)
            Af = A.precompose(proj)
            for u in terms:
                rep.checked += 1
                if (smasks[u] >> i & 1) != member(Af, u, xbase):
                    rep.fail(f"k={k} product projection {term_to_str(u)} "
                             f"{_part_tag(S, vals)}: membership is not preserved")
        rep.notes.append(f"k={k} terms={len(terms)}")


def _suite_reduct(cfg, rep):
    qo = antichain(3)
    spaces = (discrete(2), sierpinski(), discrete(3),
              FinSpace.from_pairs("abc", [("a", "b"), ("b", "c")]))
    pool = ["Fq[0](1)", "Fq[0](1,0)", "Fq[0](Fq[1](0))", "Fq[1](0,2)",
            "Fo[1](0,1)", "s[1](Fq[0](1,0))", "Fq[0](s[0](Fq[1](0)),2)",
            "Fq[0](1,2)", "Fq[2](0,1)", "Fq[1](0,0)", "Fo[0](1,0)",
            "Fq[0](Fq[1](0),2)", "Fq[2](Fq[0](1),0)", "Fo[1](0,1,2)",
            "Fq[0](1,0,2)", "s[0](Fq[1](2,0))"]
    determining = 0
    for space in spaces:
        base = borel(space)
        for text in pool:
            u = parse_term(text)
            for F in enumerate_families(u, base):
                if determining >= cfg.families:
                    break
                res = family_eval(F, u, base, qo)
                if isinstance(res, NotDetermined):
                    continue
                determining += 1
                rep.checked += 1
                G = family_reduct(F, u, base)
                res2 = family_eval(G, u, base, qo)
                if isinstance(res2, NotDetermined):
                    rep.fail(f"{_space_tag(space)} {text}: reduct of a "
                             "determining family is undetermined")
                elif res2.values != res.values:
                    rep.fail(f"{_space_tag(space)} {text}: reduct determines "
                             f"{_part_tag(space, res2.values)} instead of "
                             f"{_part_tag(space, res.values)}")
            if determining >= cfg.families:
                break
    rep.notes.append(f"determining_families={determining}")
    if determining < cfg.families:
        rep.notes.append("pool exhausted before the family budget")


def _suite_hk(cfg, rep):
    spaces = _spaces(cfg)
    for k in range(2, cfg.max_q + 1):
        qo = antichain(k)
        terms = enumerate_terms(k, cfg.max_nodes, (),
                                constructors=("Const", "Fq"))
        for space in spaces:
            base = borel(space)
            remaining = dict.fromkeys(_partitions(space, qo))
            witnesses = {}
            for u in terms:
                if not remaining:
                    break
                for vals in list(remaining):
                    if member(_qpartition(space, qo, vals), u, base):
                        witnesses[vals] = u
                        del remaining[vals]
            rep.checked += len(witnesses) + len(remaining)
            for vals in remaining:
                rep.fail(f"k={k} {_space_tag(space)} {_part_tag(space, vals)}: "
                         f"no witness term within {cfg.max_nodes} nodes")
            for vals, u in sorted(witnesses.items()):
                rep.notes.append(f"k={k} {_space_tag(space)} "
                                 f"{_part_tag(space, vals)} <- {term_to_str(u)}")


def _suite_meager_oracle(cfg, rep):
    for space in _spaces(cfg):
        for mask in range(space.full + 1):
            rep.checked += 1
            a = is_meager(space, mask)
            b = is_meager_bruteforce(space, mask)
            if a != b:
                rep.fail(f"{_space_tag(space)} set="
                         f"{space.set_of_names(mask)}: singleton criterion "
                         f"{a} vs decomposition search {b}")


def _cnf_pool(exponents, coeffs, max_terms):
    desc = sorted(exponents, key=cmp_to_key(ord_cmp), reverse=True)
    pool = [ZERO]
    for k in range(1, max_terms + 1):
        for exps in itertools.combinations(desc, k):
            for cs in itertools.product(coeffs, repeat=k):
                pool.append(Ordinal(tuple(zip(exps, cs))))
    return pool


def _suite_fmap(cfg, rep):
    rep.checked += 1
    if not f_map(ZERO).is_zero:
        rep.fail("image of 0 is not 0")
    for n in range(50):
        rep.checked += 1
        img = f_map(from_int(n))
        if img != wadge_from_int(n):
            rep.fail(f"image of {n} is {wadge_to_str(img)}")
    rep.checked += 2
    w1 = wadge_from_int(1)
    if f_map(OMEGA).terms != ((w1, 1),):
        rep.fail("image of w is not the first-power base term")
    expected = ((f_map(OMEGA), 1),)
    if f_map(omega_power(OMEGA)).terms != expected:
        rep.fail("image of w^w is not the iterated power")
    two = from_int(2)
    pool = _cnf_pool([ZERO, from_int(1), two, OMEGA,
                      Ordinal(((from_int(1), 1), (ZERO, 1))),  # w+1
                      omega_power(from_int(1), 2),             # w*2
                      omega_power(two)],                       # w^2
                     (1, 2), 3)
    for a in pool:
        for b in pool:
            rep.checked += 1
            if ord_cmp(a, b) < 0 and wadge_cmp(f_map(a), f_map(b)) >= 0:
                rep.fail(f"not strictly increasing at {ord_to_str(a)} vs "
                         f"{ord_to_str(b)}")
    rep.notes.append(f"ordinal_pool={len(pool)}")


_SUITES = {
    "qo-axioms": _suite_qo_axioms,
    "hom-oracle": _suite_hom_oracle,
    "inclusion": _suite_inclusion,
    "shift-law": _suite_shift_law,
    "wadge-closure": _suite_wadge_closure,
    "preservation": _suite_preservation,
    "reduct": _suite_reduct,
    "hk": _suite_hk,
    "meager-oracle": _suite_meager_oracle,
    "fmap": _suite_fmap,
}

SUITE_NAMES = tuple(sorted(_SUITES))


def run_suite(cfg):
    """Run one suite; deterministic given the configuration."""
    fn = _SUITES.get(cfg.suite)
    if fn is None:
        raise UnknownSuiteError(f"unknown suite {cfg.suite!r}; "
                                f"choose from {', '.join(SUITE_NAMES)}")
    hierarchy.clear_caches()
    params = {k: v for k, v in vars(cfg).items()
              if k not in ("suite", "out") and v is not None}
    rep = SuiteReport(cfg.suite, params)
    fn(cfg, rep)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(rep.text())
    return rep
