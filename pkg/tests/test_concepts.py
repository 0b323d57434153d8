import numpy as np
import pytest
from hypothesis import given, settings

from deltaclosure.concepts import Concept, build_graph, delta_closure, delta_of_itemset, enumerate_closed, mine_graph
from deltaclosure.context import FormalContext, closure
from deltaclosure.errors import ConceptCapExceeded, IntegrityError
from deltaclosure.oracle import brute_closed, phi

from conftest import contexts

TOY_DELTA = {"abc": 3, "ab": 2, "abde": 2, "abcde": 2}


def test_toy_concepts(toy):
    concepts = enumerate_closed(toy)
    assert len(concepts) == 16
    assert {c.intent for c in concepts} == brute_closed(toy)
    assert concepts[0].intent == 0 and concepts[0].support == 10
    assert concepts[-1].intent == toy.all_attributes and concepts[-1].support == 0


def test_toy_delta_cls(toy):
    g = mine_graph(toy)
    for cid, c in enumerate(g.concepts):
        name = toy.format_itemset(c.intent, "")
        if cid == g.bottom:
            assert g.delta_cls[cid] == 10
            assert g.ref[cid] == -1
        else:
            assert g.delta_cls[cid] == TOY_DELTA.get(name, 1), name


def test_toy_neighbours(toy):
    g = mine_graph(toy)
    names = lambda ids: {toy.format_itemset(g.intent(i), "") for i in ids}  # noqa: E731
    assert names(g.lower_neighbors[g.id_of(toy.itemset("ab"))]) == {"abc", "abd", "abe"}
    assert names(g.lower_neighbors[g.top]) == {"a", "b"}
    assert toy.format_itemset(g.intent(g.ref[g.id_of(toy.itemset("abc"))]), "") == "abcd"
    upper = g.upper_neighbors()
    assert names(upper[g.id_of(toy.itemset("ab"))]) == {"a", "b"}


def test_n_nonempty(toy):
    assert mine_graph(toy).n_nonempty == 15


def test_cap(toy):
    with pytest.raises(ConceptCapExceeded):
        enumerate_closed(toy, cap=5)


def test_workers_same_result(toy):
    assert [c.intent for c in enumerate_closed(toy, workers=2)] == [c.intent for c in enumerate_closed(toy)]


def test_build_graph_integrity(toy):
    good = enumerate_closed(toy)
    with pytest.raises(IntegrityError):
        build_graph(toy, good + [good[3]])
    with pytest.raises(IntegrityError):
        build_graph(toy, good[1:])
    with pytest.raises(IntegrityError):
        build_graph(toy, [c for c in good if c.intent != toy.itemset("abc")])
    not_closed = Concept(toy.itemset("c"), 5)
    with pytest.raises(IntegrityError):
        build_graph(toy, good + [not_closed])
    wrong_support = [Concept(c.intent, c.support + (i == 2)) for i, c in enumerate(good)]
    with pytest.raises(IntegrityError):
        build_graph(toy, wrong_support)


def test_delta_closure_toy(toy):
    g = mine_graph(toy)
    assert delta_closure(g, toy, toy.itemset("a"), 3) == toy.itemset("abc")
    assert delta_closure(g, toy, toy.itemset("a"), 1) == toy.itemset("a")
    assert delta_closure(g, toy, toy.itemset("c"), 4) == toy.all_attributes
    with pytest.raises(ValueError):
        delta_closure(g, toy, 0, 0)
    with pytest.raises(ValueError):
        delta_closure(g, toy, 0, 11)


def test_delta_of_itemset(toy):
    g = mine_graph(toy)
    assert delta_of_itemset(g, toy, toy.itemset("abc")) == 3
    assert delta_of_itemset(g, toy, toy.itemset("c")) == 0


def test_empty_contexts():
    for ctx in (FormalContext.from_rows([], 0), FormalContext.from_rows([], 3), FormalContext.from_rows([0, 0], 0)):
        g = mine_graph(ctx)
        assert len(g) == 1
        assert g.top == g.bottom == 0


@settings(max_examples=150, deadline=None)
@given(contexts())
def test_closed_sets_match_oracle(ctx):
    g = mine_graph(ctx)
    assert set(g.index) == brute_closed(ctx)
    supports = g.supports
    assert all(supports[i] >= supports[i + 1] for i in range(len(g) - 1))


@settings(max_examples=150, deadline=None)
@given(contexts())
def test_covering_relation(ctx):
    g = mine_graph(ctx)
    intents = [c.intent for c in g.concepts]
    for cid, lows in enumerate(g.lower_neighbors):
        b = intents[cid]
        below = [j for j, x in enumerate(intents) if x != b and x & b == b]
        cover = {j for j in below if not any(k != j and intents[k] & b == b and intents[j] & intents[k] == intents[k]
                                                 and intents[k] != b for k in below)}
        assert set(lows) == cover
        if lows:
            best = max(g.concepts[j].support for j in lows)
            assert g.concepts[g.ref[cid]].support == best
            assert g.delta_cls[cid] == g.concepts[cid].support - best


@settings(max_examples=100, deadline=None)
@given(contexts())
def test_delta_closure_matches_definition(ctx):
    g = mine_graph(ctx)
    for d in range(1, max(ctx.n_objects, 1) + 1):
        for x in range(1 << ctx.n_attributes):
            assert delta_closure(g, ctx, x, d) == phi(ctx, x, d)
    assert all(delta_closure(g, ctx, x, 1) == closure(ctx, x) for x in range(1 << ctx.n_attributes))
