import pytest

from hlkit.hltypes import (
    CalculusMode,
    Div,
    Dollar,
    Prim,
    Prod,
    Sequent,
    TypeError_,
    connective_count,
    full_size,
    sequent_well_formed,
    size_bound,
    well_formed_type,
)
from hlkit.hypergraph import graph, handle, string_graph

p = Prim("p", 2)
q = Prim("q", 2)
r = Prim("r", 2)


def sg(*labels):
    return string_graph(list(labels))


def test_full_size_primitives():
    assert full_size(p) == 3
    assert full_size(Prim("z", 0)) == 1


def test_full_size_division():
    # p over the string pattern ($ q): 3 + 3 + 3 nodes + rank 2 + 1 = 12
    t = Div(p, sg(Dollar(2), q))
    assert full_size(t) == 12


def test_full_size_product():
    t = Prod(sg(p, q))
    assert full_size(t) == 3 + 3 + 3 + 2 + 1


def test_size_bound_axiom():
    seq = Sequent(handle(p), p)
    assert size_bound(seq) == 6


def test_division_validation():
    with pytest.raises(TypeError_):
        Div(p, sg(q, q))  # no $ edge
    with pytest.raises(TypeError_):
        Div(p, sg(Dollar(2), Dollar(2)))  # two $ edges
    with pytest.raises(TypeError_):
        Div(Prim("z", 0), sg(Dollar(2), q))  # numerator rank mismatch


def test_type_rank():
    t = Div(p, sg(Dollar(2), q))
    assert t.rank == 2
    t0 = Div(Prod(graph(0)), graph(0, [(Dollar(0), ())], ()))
    assert t0.rank == 0


def test_type_equality_up_to_iso():
    # Same denominator built with different node numbering.
    d1 = sg(Dollar(2), q)
    d2 = graph(3, [(q, (1, 2)), (Dollar(2), (0, 1))], (0, 2))
    assert Div(p, d1) == Div(p, d2)
    assert hash(Div(p, d1)) == hash(Div(p, d2))
    assert Div(p, d1) != Div(q, d1)


def test_well_formed_restricted():
    lone = Div(p, sg(Dollar(2)))  # denominator has only the placeholder
    assert well_formed_type(lone, CalculusMode.HLSTAR)
    assert not well_formed_type(lone, CalculusMode.HL)
    empty_prod = Prod(graph(1, [], (0, 0)))
    assert well_formed_type(empty_prod, CalculusMode.HLSTAR)
    assert not well_formed_type(empty_prod, CalculusMode.HL)
    nested = Prod(sg(lone))
    assert not well_formed_type(nested, CalculusMode.HL)


def test_sequent_validation_and_modes():
    with pytest.raises(TypeError_):
        Sequent(handle(p), Prim("z", 0))  # rank mismatch
    edgeless = Sequent(graph(1, [], (0, 0)), p)
    assert sequent_well_formed(edgeless, CalculusMode.HLSTAR)
    assert not sequent_well_formed(edgeless, CalculusMode.HL)


def test_connective_count():
    t = Div(Prod(sg(p, q)), sg(Dollar(2), Prod(sg(r))))
    assert connective_count(t) == 3
    assert connective_count(p) == 0
