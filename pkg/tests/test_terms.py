import pytest

from finehier.ordinals import ZERO, from_int, parse_ordinal
from finehier.quasiorder import antichain, chain
from finehier.terms import (Const, Shift, Fq, Fo, term_size, term_rank,
                            term_decompose, term_leq, TermOrder, term_tree,
                            term_paths, term_apply_aut, parse_term,
                            term_to_str, enumerate_terms, is_singleton,
                            singleton_value, check_subscripts, syntax_tree,
                            hom_oracle_leq, SingletonTermError,
                            NotAutomorphismError, TermParseError,
                            SubscriptBoundError)

Q2 = antichain(2)
SUBS = (ZERO, from_int(1))


def T(text):
    return parse_term(text)


def test_decompose_examples():
    d = term_decompose(Const(0))
    assert d.shift is ZERO and d.core is Const(0)
    d = term_decompose(T("s[2](s[1](Fq[0](1)))"))
    assert d.shift is parse_ordinal("w^2+w") and d.core is T("Fq[0](1)")
    d = term_decompose(T("s[0](1)"))
    assert d.shift is parse_ordinal("1") and d.core is Const(1)


def test_decomposition_laws():
    for u in enumerate_terms(2, 4, SUBS):
        d = term_decompose(u)
        assert not isinstance(d.core, Shift)
        # rewrapping the stripped chain restores the term
        rebuilt, t = d.core, u
        chain_alphas = []
        while isinstance(t, Shift):
            chain_alphas.append(t.alpha)
            t = t.body
        for a in reversed(chain_alphas):
            rebuilt = Shift(a, rebuilt)
        assert rebuilt is u
        assert term_rank(d.core) <= term_rank(u)
        if not d.shift.is_zero:
            assert term_rank(d.core) < term_rank(u)


def test_rank_examples():
    assert term_rank(Const(0)) == 0
    assert term_rank(T("Fq[0](1,1)")) == 1
    # longest-path oracle over the syntactic tree
    u = T("s[1](Fq[0](s[2](0)))")
    tree = syntax_tree(u)
    assert max(len(n) for n in tree.nodes) == 3
    assert term_rank(u) == 3


def test_leq_examples_with_oracle():
    cases = [
        (Const(0), Const(0), True),
        (Const(0), T("Fq[1](0)"), True),
        (T("Fq[0](1)"), T("Fq[1](0)"), False),
        (T("s[1](0)"), Const(0), True),
    ]
    for u, v, expect in cases:
        assert term_leq(Q2, u, v) is expect
        assert hom_oracle_leq(Q2, u, v) is expect


def test_leq_over_nontrivial_quasiorder():
    c2 = chain(2)
    assert term_leq(c2, Const(0), Const(1))
    assert not term_leq(c2, Const(1), Const(0))
    assert term_leq(c2, T("Fq[0](0)"), Const(1))


def test_tree_examples():
    t = term_tree(T("Fq[0](1)"))
    assert t.nodes == ((), (0,))
    assert t.labels[()] is Const(0) and t.labels[(0,)] is Const(1)
    u = T("s[1](Fq[0](1))")
    t = term_tree(u)
    assert t.nodes == ((),) and t.labels[()] is u
    t = term_tree(T("Fo[1](0,1)"))
    assert t.nodes == ((), (0,))
    assert t.labels[()] is T("s[1](0)") and t.labels[(0,)] is Const(1)


def test_paths_examples():
    assert term_paths(T("Fq[0](1)")) == {((),): 0, ((0,),): 1}
    with pytest.raises(SingletonTermError):
        term_paths(Const(0))
    with pytest.raises(SingletonTermError):
        term_paths(T("s[1](s[0](1))"))
    got = term_paths(T("Fq[0](s[1](Fq[1](0)))"))
    assert got == {((),): 0, ((0,), ()): 1, ((0,), (0,)): 0}


def test_paths_end_at_singletons():
    for u in enumerate_terms(2, 4, SUBS):
        if is_singleton(u):
            continue
        for seq, q in term_paths(u).items():
            assert len(seq) >= 1
            assert q in (0, 1)


def test_apply_aut_examples():
    swap = (1, 0)
    assert term_apply_aut(Q2, swap, T("Fq[0](1)")) is T("Fq[1](0)")
    assert term_apply_aut(Q2, swap, T("s[1](0)")) is T("s[1](1)")
    u = T("Fo[1](0,Fq[1](0))")
    assert term_apply_aut(Q2, (0, 1), u) is u
    with pytest.raises(NotAutomorphismError):
        term_apply_aut(chain(2), swap, Const(0))


def _leq_matrix(qo, terms):
    order = TermOrder(qo)
    idx = {u: i for i, u in enumerate(terms)}
    rows = []
    for u in terms:
        row = 0
        for v in terms:
            if order.leq(u, v):
                row |= 1 << idx[v]
        rows.append(row)
    return rows


def test_leq_is_a_quasiorder_small():
    terms = enumerate_terms(2, 3, SUBS)
    rows = _leq_matrix(Q2, terms)
    for i, u in enumerate(terms):
        assert rows[i] >> i & 1, f"not reflexive at {u}"
        r = rows[i]
        j = 0
        while r >> j:
            if r >> j & 1:
                assert rows[j] & ~rows[i] == 0, "not transitive"
            j += 1


def test_leq_invariant_under_automorphisms():
    terms = enumerate_terms(2, 3, SUBS)
    swap = (1, 0)
    images = [term_apply_aut(Q2, swap, u) for u in terms]
    for i, u in enumerate(terms):
        assert term_apply_aut(Q2, swap, images[i]) is u  # involution
        for j, v in enumerate(terms):
            assert term_leq(Q2, u, v) == term_leq(Q2, images[i], images[j])


def test_oracle_equivalence_small():
    terms = enumerate_terms(2, 3, SUBS, max_children=2)
    for u in terms:
        for v in terms:
            assert term_leq(Q2, u, v) == hom_oracle_leq(Q2, u, v)


def test_parser_round_trip():
    for u in enumerate_terms(3, 4, SUBS):
        assert parse_term(term_to_str(u)) is u
    for bad in ("", "s[", "Fq[0]()", "Fq()", "s[1]", "Fq[w](0)", "2,"):
        with pytest.raises(TermParseError):
            parse_term(bad)


def test_subscript_bound():
    gamma = parse_ordinal("2")
    check_subscripts(T("s[1](Fo[0](1,0))"), gamma)
    with pytest.raises(SubscriptBoundError):
        parse_term("s[2](0)", gamma)
    with pytest.raises(SubscriptBoundError):
        parse_term("Fo[w](0)", gamma)
    parse_term("s[w](0)")  # unbounded by default


def test_enumeration_counts():
    # 2 constants; 2 subscripts each for the unary and ordinal-branch forms
    assert len(enumerate_terms(2, 1, SUBS)) == 2
    assert len(enumerate_terms(2, 2, SUBS)) == 2 + 12
    assert len(enumerate_terms(2, 2, SUBS, constructors=("Const", "Fq"))) == 2 + 4
    two = enumerate_terms(2, 2, SUBS)
    assert len(set(two)) == len(two)


def test_term_interning_and_size():
    assert Fq(0, (Const(1),)) is Fq(0, (Const(1),))
    assert term_size(T("Fo[1](0,Fq[1](0))")) == 4
    assert singleton_value(T("s[1](s[0](1))")) == 1
    with pytest.raises(ValueError):
        Fq(0, ())
