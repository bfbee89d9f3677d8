import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hlkit.canon import canonical_form, is_isomorphic
from hlkit.hypergraph import (
    GraphError,
    Hypergraph,
    Symbol,
    disjoint_union,
    graph,
    handle,
    relabel,
    repeated,
    replace,
    replace_many,
    string_graph,
)

a0 = Symbol("a", 0)
a2 = Symbol("a", 2)
b2 = Symbol("b", 2)
c3 = Symbol("c", 3)


def test_handle_rank0():
    g = handle(a0)
    assert g.num_nodes == 0
    assert g.num_edges == 1
    assert g.external == ()


def test_handle_rank2():
    g = handle(a2)
    assert g.num_nodes == 2
    assert g.attach[0] == (0, 1)
    assert g.external == (0, 1)


@pytest.mark.parametrize("sym", [a0, a2, c3, Symbol("d", 5)])
def test_handle_rank_matches_label(sym):
    assert handle(sym).rank == sym.rank


def test_string_graph_empty():
    g = string_graph([])
    assert g.num_nodes == 1
    assert g.num_edges == 0
    assert g.external == (0, 0)


def test_string_graph_two_letters():
    g = string_graph([a2, b2])
    assert g.num_nodes == 3
    assert g.attach == ((0, 1), (1, 2))
    assert g.external == (0, 2)


def test_string_graph_rejects_bad_rank():
    with pytest.raises(GraphError):
        string_graph([c3])


def test_relabel_identity_isomorphic():
    g = string_graph([a2, b2])
    assert is_isomorphic(relabel(g, {}), g)


def test_relabel_swap():
    g = string_graph([a2, b2])
    swapped = relabel(g, {0: b2, 1: a2})
    assert canonical_form(swapped) != canonical_form(g)
    assert canonical_form(relabel(swapped, {0: a2, 1: b2})) == canonical_form(g)


def test_relabel_rank_mismatch():
    g = string_graph([a2])
    with pytest.raises(GraphError):
        relabel(g, {0: c3})


def test_replace_handle_is_identity():
    g = string_graph([a2, b2])
    for e in g.edges():
        out = replace(g, e, handle(g.labels[e]))
        assert is_isomorphic(out, g)


def test_replace_rank_mismatch():
    g = string_graph([a2])
    with pytest.raises(GraphError):
        replace(g, 0, handle(c3))
    with pytest.raises(GraphError):
        replace(g, 5, handle(a2))


def test_replace_fuses_repeated_attachments():
    # A loop edge replaced by a two-node string merges the string's ends.
    loop = graph(1, [(a2, (0, 0))], ())
    out = replace(loop, 0, string_graph([b2]))
    assert out.num_nodes == 1
    assert out.attach[0] == (0, 0)
    assert out.labels[0] == b2


def test_replace_many_empty_is_identity():
    g = string_graph([a2, b2])
    assert replace_many(g, {}) == g


def test_replace_many_order_independent():
    g = string_graph([a2, b2])
    h1 = string_graph([b2, b2])
    h2 = string_graph([a2])
    both = replace_many(g, {0: h1, 1: h2})
    # Order 1: replace edge 1 first (edge 0 keeps its id), then edge 0.
    seq1 = replace(replace(g, 1, h2), 0, h1)
    # Order 2: replace edge 0 first; the kept edge b2 becomes edge 0.
    step = replace(g, 0, h1)
    e_b = next(e for e in step.edges() if step.labels[e] == b2)
    seq2 = replace(step, e_b, h2)
    assert is_isomorphic(both, seq1)
    assert is_isomorphic(both, seq2)


def test_disjoint_union_counts_and_external():
    g, h = string_graph([a2]), handle(b2)
    u = disjoint_union(g, h)
    assert u.num_nodes == g.num_nodes + h.num_nodes
    assert u.num_edges == g.num_edges + h.num_edges
    assert u.external == g.external + tuple(v + g.num_nodes for v in h.external)


def test_union_commutes_for_rank0():
    g = graph(0, [(a0, ())])
    h = graph(1, [], ())
    assert is_isomorphic(disjoint_union(g, h), disjoint_union(h, g))


def test_repeated():
    h = graph(1, [(a0, ()), (a0, ())], ())
    out = repeated(3, h)
    assert out.num_edges == 6
    assert out.num_nodes == 3
    with pytest.raises(GraphError):
        repeated(2, handle(a2))


def test_rank_preserved_by_replace():
    g = string_graph([a2, b2])
    assert replace(g, 0, string_graph([a2, a2])).rank == g.rank


# Random small graphs for property checks.
@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=0, max_value=4))
    syms = [a0, a2, b2, c3]
    edges = []
    for _ in range(draw(st.integers(min_value=0, max_value=3))):
        lab = draw(st.sampled_from([s for s in syms if s.rank == 0 or n > 0]))
        att = tuple(draw(st.integers(min_value=0, max_value=n - 1)) for _ in range(lab.rank)) if lab.rank else ()
        edges.append((lab, att))
    ext_len = draw(st.integers(min_value=0, max_value=3))
    ext = tuple(draw(st.integers(min_value=0, max_value=n - 1)) for _ in range(ext_len)) if n else ()
    return graph(n, edges, ext)


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_handle_absorption_everywhere(g):
    for e in g.edges():
        assert is_isomorphic(replace(g, e, handle(g.labels[e])), g)


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_simultaneous_matches_both_orders(g):
    if g.num_edges < 2:
        return
    f0 = string_graph([a2]) if len(g.attach[0]) == 2 else handle(Symbol("f0", len(g.attach[0])))
    f1 = handle(Symbol("f1", len(g.attach[1])))
    sim = replace_many(g, {0: f0, 1: f1})
    # Replacing edge 1 first leaves edge 0's id unchanged.
    seq = replace(replace(g, 1, f1), 0, f0)
    assert is_isomorphic(sim, seq)
