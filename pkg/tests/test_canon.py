import itertools
import random

from hlkit.canon import canonical_form, is_isomorphic
from hlkit.hypergraph import Hypergraph, Symbol, graph, handle

a1 = Symbol("a", 1)
b2 = Symbol("b", 2)


def shuffled_copy(g: Hypergraph, seed: int) -> Hypergraph:
    rng = random.Random(seed)
    perm = list(range(g.num_nodes))
    rng.shuffle(perm)
    edge_order = list(g.edges())
    rng.shuffle(edge_order)
    return graph(
        g.num_nodes,
        [(g.labels[e], tuple(perm[v] for v in g.attach[e])) for e in edge_order],
        tuple(perm[v] for v in g.external),
    )


def small_universe(max_nodes=3, max_edges=2):
    """Every graph over {a:1, b:2} within the bounds, as raw tuples."""
    syms = [a1, b2]
    for n in range(max_nodes + 1):
        pairs = []
        for s in syms:
            pairs.extend((s, att) for att in itertools.product(range(n), repeat=s.rank))
        for m in range(max_edges + 1):
            for combo in itertools.combinations_with_replacement(pairs, m):
                for ext_len in range(3):
                    for ext in itertools.product(range(n), repeat=ext_len):
                        yield graph(n, combo, ext)


def test_canonical_invariant_under_shuffles():
    for g in itertools.islice(small_universe(), 0, 400, 7):
        for seed in (1, 2, 3):
            assert canonical_form(shuffled_copy(g, seed)) == canonical_form(g)


def test_handles_of_distinct_labels_differ():
    assert canonical_form(handle(a1)) != canonical_form(handle(Symbol("c", 1)))


def test_external_sequences_positional():
    # Same underlying graph; ext v0 v0 v1 vs v0 v1 v1 are not isomorphic.
    g = graph(2, [(b2, (0, 1))], (0, 0, 1))
    h = graph(2, [(b2, (0, 1))], (0, 1, 1))
    assert not is_isomorphic(g, h)
    assert canonical_form(g) != canonical_form(h)


def test_canon_agrees_with_bruteforce_iso_on_universe():
    universe = list(small_universe(max_nodes=2, max_edges=2))
    # Compare every pair within matching cheap invariants.
    keys = [canonical_form(g) for g in universe]
    for i, g in enumerate(universe):
        for j in range(i, len(universe)):
            h = universe[j]
            if g.num_nodes != h.num_nodes or g.num_edges != h.num_edges:
                continue
            if len(g.external) != len(h.external):
                continue
            iso = is_isomorphic(g, h)
            assert iso == (keys[i] == keys[j]), (g, h)


def test_isolated_node_matters():
    g = handle(b2)
    h = graph(3, [(b2, (0, 1))], (0, 1))
    assert not is_isomorphic(g, h)
    assert canonical_form(g) != canonical_form(h)


def test_parallel_edges():
    g = graph(2, [(b2, (0, 1)), (b2, (0, 1))], (0, 1))
    h = graph(2, [(b2, (0, 1)), (b2, (1, 0))], (0, 1))
    assert not is_isomorphic(g, h)
    assert canonical_form(g) != canonical_form(h)
    assert is_isomorphic(g, shuffled_copy(g, 5))
