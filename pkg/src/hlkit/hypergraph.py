"""Labeled hypergraphs with ordered attachments and external nodes.

A hypergraph value holds a finite set of nodes, a finite set of hyperedges,
an ordered attachment sequence per edge, a ranked label per edge, and an
ordered sequence of external nodes (repetitions allowed).  The rank of an
edge is its attachment length and must equal the rank of its label; the
rank of a hypergraph is the length of its external sequence.

Node identifiers are always ``0 .. num_nodes-1`` and edge identifiers
``0 .. num_edges-1``, local to one value.  Every operation returns a fresh
value with renumbered identifiers; nothing is ever mutated, so values can
be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Protocol, Sequence, runtime_checkable


class GraphError(ValueError):
    """Raised when a hypergraph construction or operation is ill-formed."""


@runtime_checkable
class Label(Protocol):
    """Anything usable as an edge label: carries a rank and a stable key.

    ``sort_key`` must be a nested tuple of strings/ints/bytes, totally
    ordered across all label kinds (each kind uses a distinct leading tag).
    Labels with equal sort keys are interchangeable.
    """

    @property
    def rank(self) -> int: ...

    def sort_key(self) -> tuple: ...


@dataclass(frozen=True)
class Symbol:
    """A ranked alphabet symbol (terminal or nonterminal label)."""

    name: str
    rank: int

    def sort_key(self) -> tuple:
        return ("sym", self.name, self.rank)

    def __repr__(self) -> str:
        return f"{self.name}:{self.rank}"


@dataclass(frozen=True)
class Hole:
    """Placeholder label marking the hole edge of a context graph."""

    rank: int

    def sort_key(self) -> tuple:
        return ("hole", self.rank)

    def __repr__(self) -> str:
        return f"<hole:{self.rank}>"


@dataclass(frozen=True)
class Hypergraph:
    """An immutable labeled hypergraph.

    Attributes:
        num_nodes: node identifiers are ``0 .. num_nodes-1``.
        labels: label of edge ``e`` is ``labels[e]``.
        attach: attachment sequence of edge ``e`` is ``attach[e]``.
        external: ordered external node sequence, repetitions allowed.
    """

    num_nodes: int
    labels: tuple[Label, ...]
    attach: tuple[tuple[int, ...], ...]
    external: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.num_nodes < 0:
            raise GraphError("negative node count")
        if len(self.labels) != len(self.attach):
            raise GraphError("labels and attachments differ in length")
        for lab, att in zip(self.labels, self.attach):
            if lab.rank != len(att):
                raise GraphError(f"label {lab!r} has rank {lab.rank}, attachment has length {len(att)}")
            for v in att:
                if not 0 <= v < self.num_nodes:
                    raise GraphError(f"attachment node {v} out of range")
        for v in self.external:
            if not 0 <= v < self.num_nodes:
                raise GraphError(f"external node {v} out of range")

    @property
    def num_edges(self) -> int:
        return len(self.labels)

    @property
    def rank(self) -> int:
        return len(self.external)

    def edges(self) -> range:
        return range(len(self.labels))

    def nodes(self) -> range:
        return range(self.num_nodes)

    def label(self, e: int) -> Label:
        return self.labels[e]

    def att(self, e: int) -> tuple[int, ...]:
        return self.attach[e]

    def is_edgeless(self) -> bool:
        return not self.labels

    def __repr__(self) -> str:
        es = "; ".join(f"e{e}={self.labels[e]!r}{self.attach[e]}" for e in self.edges())
        return f"Hypergraph(V={self.num_nodes}, [{es}], ext={self.external})"


def graph(
    num_nodes: int,
    edges: Sequence[tuple[Label, Sequence[int]]] = (),
    external: Sequence[int] = (),
) -> Hypergraph:
    """Convenience constructor from (label, attachment) pairs."""
    return Hypergraph(
        num_nodes=num_nodes,
        labels=tuple(lab for lab, _ in edges),
        attach=tuple(tuple(att) for _, att in edges),
        external=tuple(external),
    )


EMPTY = graph(0)


def handle(label: Label) -> Hypergraph:
    """The one-edge hypergraph: n distinct nodes, all attached and external."""
    n = label.rank
    return graph(n, [(label, range(n))], range(n))


def string_graph(word: Sequence[Label]) -> Hypergraph:
    """The string graph of a word of rank-2 labels.

    Has nodes ``v0 .. vn``, edge i attached ``(v_{i-1}, v_i)``, and external
    sequence ``(v0, vn)``.  The empty word gives one node with ``ext=(v0,v0)``.
    """
    for lab in word:
        if lab.rank != 2:
            raise GraphError(f"string graph labels must have rank 2, got {lab!r}")
    n = len(word)
    return graph(n + 1, [(lab, (i, i + 1)) for i, lab in enumerate(word)], (0, n))


def relabel(g: Hypergraph, mapping: Mapping[int, Label]) -> Hypergraph:
    """Replace edge labels; edges absent from the mapping keep their label.

    Each new label must have the rank of the edge it replaces.
    """
    new_labels = list(g.labels)
    for e, lab in mapping.items():
        if not 0 <= e < g.num_edges:
            raise GraphError(f"edge {e} not in graph")
        if lab.rank != len(g.attach[e]):
            raise GraphError(f"relabeling rank mismatch on edge {e}")
        new_labels[e] = lab
    return Hypergraph(g.num_nodes, tuple(new_labels), g.attach, g.external)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # Smaller root wins so renumbering is deterministic.
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def replace_many(g: Hypergraph, assignment: Mapping[int, Hypergraph]) -> Hypergraph:
    """Simultaneously replace distinct edges of ``g`` by hypergraphs.

    For each pair ``e -> h``, edge ``e`` is removed, a disjoint copy of ``h``
    inserted, and the i-th external node of ``h`` fused with the i-th
    attachment node of ``e`` (the quotient under the smallest such
    equivalence).  The result is independent of replacement order.
    """
    replaced = sorted(assignment)
    for e in replaced:
        if not 0 <= e < g.num_edges:
            raise GraphError(f"edge {e} not in graph")
        if len(g.attach[e]) != assignment[e].rank:
            raise GraphError(f"replacement rank mismatch on edge {e}: edge rank {len(g.attach[e])}, graph rank {assignment[e].rank}")

    offsets = {}
    total = g.num_nodes
    for e in replaced:
        offsets[e] = total
        total += assignment[e].num_nodes

    uf = _UnionFind(total)
    for e in replaced:
        h = assignment[e]
        for pos, v in enumerate(g.attach[e]):
            uf.union(v, offsets[e] + h.external[pos])

    remap: dict[int, int] = {}

    def node_of(old: int) -> int:
        root = uf.find(old)
        if root not in remap:
            remap[root] = len(remap)
        return remap[root]

    new_edges: list[tuple[Label, tuple[int, ...]]] = []
    for e in g.edges():
        if e in assignment:
            continue
        new_edges.append((g.labels[e], tuple(node_of(v) for v in g.attach[e])))
    for e in replaced:
        h = assignment[e]
        off = offsets[e]
        for he in h.edges():
            new_edges.append((h.labels[he], tuple(node_of(off + v) for v in h.attach[he])))
    new_ext = tuple(node_of(v) for v in g.external)
    # Nodes never touched by an edge or the external sequence must survive too.
    for v in range(total):
        node_of(v)
    return Hypergraph(len(remap), tuple(l for l, _ in new_edges), tuple(a for _, a in new_edges), new_ext)


def replace(g: Hypergraph, e0: int, h: Hypergraph) -> Hypergraph:
    """Replace one edge.  Equal to ``replace_many(g, {e0: h})``.

    Edge ordering in the result is deterministic: the kept edges of ``g``
    in identifier order, then the edges of ``h`` in identifier order.
    """
    return replace_many(g, {e0: h})


def disjoint_union(h1: Hypergraph, h2: Hypergraph) -> Hypergraph:
    """Put two hypergraphs side by side; external sequences concatenate."""
    off = h1.num_nodes
    labels = h1.labels + h2.labels
    attach = h1.attach + tuple(tuple(v + off for v in att) for att in h2.attach)
    external = h1.external + tuple(v + off for v in h2.external)
    return Hypergraph(h1.num_nodes + h2.num_nodes, labels, attach, external)


def union_all(graphs: Iterable[Hypergraph]) -> Hypergraph:
    out = EMPTY
    for g in graphs:
        out = disjoint_union(out, g)
    return out


def repeated(k: int, h: Hypergraph) -> Hypergraph:
    """The disjoint union of ``k`` copies of a rank-0 hypergraph."""
    if h.rank != 0:
        raise GraphError("repeated union requires a rank-0 hypergraph")
    if k < 0:
        raise GraphError("negative repetition count")
    return union_all(h for _ in range(k))


def add_isolated_nodes(g: Hypergraph, k: int) -> Hypergraph:
    """Append ``k`` isolated nodes (ids num_nodes .. num_nodes+k-1)."""
    return Hypergraph(g.num_nodes + k, g.labels, g.attach, g.external)


def with_external(g: Hypergraph, external: Sequence[int]) -> Hypergraph:
    """The same graph with a different external sequence."""
    return Hypergraph(g.num_nodes, g.labels, g.attach, tuple(external))


def label_multiset(g: Hypergraph) -> tuple[tuple, ...]:
    return tuple(sorted(lab.sort_key() for lab in g.labels))
