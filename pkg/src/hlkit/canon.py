"""Canonical forms and isomorphism testing for hypergraphs.

``canonical_form`` computes a byte string equal for two hypergraphs exactly
when they are isomorphic; it is the key used for memoization and language
sets throughout the package.  The algorithm is iterative partition
refinement seeded by external-node positions, with backtracking
individualization when refinement stalls.

``is_isomorphic`` is an independent backtracking bijection search.  It
deliberately shares no code with the canonical labeling so the two can be
tested against each other.
"""

from __future__ import annotations

import itertools

from .hypergraph import Hypergraph

def canonical_form(g: Hypergraph) -> bytes:
    """A canonical byte string: equal iff the graphs are isomorphic."""
    cached = g.__dict__.get("_canon")
    if cached is None:
        cached = _canonize(g)
        object.__setattr__(g, "_canon", cached)
    return cached


def _initial_colors(g: Hypergraph) -> list:
    ext_positions: list[tuple[int, ...]] = [() for _ in range(g.num_nodes)]
    by_node: dict[int, list[int]] = {}
    for pos, v in enumerate(g.external):
        by_node.setdefault(v, []).append(pos)
    colors: list = []
    for v in range(g.num_nodes):
        colors.append(tuple(by_node.get(v, ())))
    return colors


def _refine(g: Hypergraph, colors: list) -> list[int]:
    """Refine node colors to a fixpoint; returns colors compressed to ints."""
    colors = _compress(colors)
    while True:
        edge_sigs = [
            (g.labels[e].sort_key(), tuple(colors[v] for v in g.attach[e]))
            for e in g.edges()
        ]
        incidence: list[list] = [[] for _ in range(g.num_nodes)]
        for e in g.edges():
            for pos, v in enumerate(g.attach[e]):
                incidence[v].append((edge_sigs[e], pos))
        new = [
            (colors[v], tuple(sorted(incidence[v])))
            for v in range(g.num_nodes)
        ]
        new_compressed = _compress(new)
        if new_compressed == colors:
            return colors
        colors = new_compressed


def _compress(colors: list) -> list[int]:
    order = sorted(set(colors))
    index = {c: i for i, c in enumerate(order)}
    return [index[c] for c in colors]


def _encode(g: Hypergraph, colors: list[int]) -> bytes:
    # Discrete coloring: the color of a node is its canonical index.
    perm = colors
    edges = sorted(
        (g.labels[e].sort_key(), tuple(perm[v] for v in g.attach[e]))
        for e in g.edges()
    )
    ext = tuple(perm[v] for v in g.external)
    return repr((g.num_nodes, edges, ext)).encode()


def _canonize(g: Hypergraph) -> bytes:
    colors = _refine(g, _initial_colors(g))
    return _canonize_from(g, colors)


def _canonize_from(g: Hypergraph, colors: list[int]) -> bytes:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    target = None
    for c in sorted(cells):
        if len(cells[c]) > 1:
            target = cells[c]
            break
    if target is None:
        return _encode(g, colors)
    best: bytes | None = None
    n = g.num_nodes
    for v in target:
        branched = list(colors)
        branched[v] = n + 1  # strictly larger than every compressed color
        refined = _refine(g, branched)
        candidate = _canonize_from(g, refined)
        if best is None or candidate < best:
            best = candidate
    assert best is not None
    return best


def canonical_key(g: Hypergraph) -> bytes:
    return canonical_form(g)


def _node_profile(g: Hypergraph) -> list[tuple]:
    prof: list[list] = [[] for _ in range(g.num_nodes)]
    for e in g.edges():
        key = g.labels[e].sort_key()
        for pos, v in enumerate(g.attach[e]):
            prof[v].append((key, pos))
    ext: dict[int, list[int]] = {}
    for pos, v in enumerate(g.external):
        ext.setdefault(v, []).append(pos)
    return [
        (tuple(ext.get(v, ())), tuple(sorted(prof[v])))
        for v in range(g.num_nodes)
    ]


def is_isomorphic(g: Hypergraph, h: Hypergraph) -> bool:
    """Backtracking bijection search preserving attach, label, and external.

    Independent of ``canonical_form``; used as its correctness oracle and in
    reconstruction checks.
    """
    if g.num_nodes != h.num_nodes or g.num_edges != h.num_edges:
        return False
    if len(g.external) != len(h.external):
        return False
    if sorted(l.sort_key() for l in g.labels) != sorted(l.sort_key() for l in h.labels):
        return False
    gp, hp = _node_profile(g), _node_profile(h)
    if sorted(gp) != sorted(hp):
        return False

    h_edge_set = sorted((h.labels[e].sort_key(), h.attach[e]) for e in h.edges())
    candidates = [[u for u in range(h.num_nodes) if hp[u] == gp[v]] for v in range(g.num_nodes)]
    order = sorted(range(g.num_nodes), key=lambda v: len(candidates[v]))
    mapping = [-1] * g.num_nodes
    used = [False] * h.num_nodes

    def full_check() -> bool:
        mapped = sorted(
            (g.labels[e].sort_key(), tuple(mapping[v] for v in g.attach[e]))
            for e in g.edges()
        )
        if mapped != h_edge_set:
            return False
        return tuple(mapping[v] for v in g.external) == h.external

    def assign(i: int) -> bool:
        if i == len(order):
            return full_check()
        v = order[i]
        for u in candidates[v]:
            if used[u]:
                continue
            mapping[v] = u
            used[u] = True
            if assign(i + 1):
                return True
            used[u] = False
            mapping[v] = -1
        return False

    if g.num_nodes == 0:
        return full_check()
    return assign(0)


def all_isomorphisms_exist_bruteforce(g: Hypergraph, h: Hypergraph) -> bool:
    """Exhaustive bijection check with no pruning (test oracle only)."""
    if g.num_nodes != h.num_nodes:
        return False
    h_edge_set = sorted((h.labels[e].sort_key(), h.attach[e]) for e in h.edges())
    for perm in itertools.permutations(range(h.num_nodes)):
        mapped = sorted(
            (g.labels[e].sort_key(), tuple(perm[v] for v in g.attach[e]))
            for e in g.edges()
        )
        if mapped == h_edge_set and tuple(perm[v] for v in g.external) == h.external:
            return True
    return False
