"""Backward proof search for hypergraph sequents, plus a forward verifier.

The search enumerates, for a goal sequent, the complete set of ways it can
be the conclusion of one inference; each backward step removes exactly one
division or product occurrence, so the search terminates.  Results are
memoized on the canonical form of the sequent.

The hard part is decomposition: writing the antecedent as a pattern
hypergraph whose edges have been replaced by subgraphs (and, for the
division-left rule, all of that inside a context).  Replacement can fuse
nodes, so a subgraph of the decomposition may have more nodes than its
image; candidates are therefore enumerated with explicit "block" choices
for merged interface nodes and every candidate is validated by rebuilding
the replacement and checking isomorphism.  Validation by reconstruction is
the correctness anchor; the enumeration merely has to cover everything.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .canon import canonical_form, is_isomorphic
from .hltypes import (
    AXIOM,
    DIV_L,
    DIV_R,
    TIMES_L,
    TIMES_R,
    CalculusMode,
    DerivationTree,
    Div,
    DivLWitness,
    Prod,
    Sequent,
    TimesLWitness,
    TimesRWitness,
    sequent_well_formed,
)
from .hypergraph import Hole, Hypergraph, Label, handle, relabel, replace, replace_many


class SearchLimitExceeded(RuntimeError):
    """The search gave up; distinct from a definite negative answer."""


@dataclass
class SearchLimits:
    """Caps on search effort; exceeding them raises, never answers 'no'."""

    max_work: int = 2_000_000


@dataclass
class _Budget:
    remaining: int

    def spend(self, amount: int = 1) -> None:
        self.remaining -= amount
        if self.remaining < 0:
            raise SearchLimitExceeded("search limit exceeded")


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """All partitions of ``items`` into nonempty blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


@dataclass(frozen=True)
class Cover:
    """One validated decomposition of a graph against a pattern."""

    context: Hypergraph | None
    hole: int | None
    fillers: tuple[Hypergraph, ...]


def cover_decompositions(
    g: Hypergraph,
    pattern: Hypergraph,
    *,
    pinned: Mapping[int, int],
    slots: Sequence[int],
    with_context: bool,
    region_labels: Mapping[int, Label] | None = None,
    budget: _Budget | None = None,
) -> Iterator[Cover]:
    """Enumerate ways to present ``g`` as the pattern with slots filled.

    ``pinned`` maps pattern edges to the g-edges they must become (their
    attachments align positionally); ``slots`` are pattern edges to be
    replaced by unknown subgraphs.  With ``with_context`` the instantiated
    pattern sits inside an unknown context at a hole of the pattern's rank;
    without it, the instantiated pattern must be the whole of ``g`` and the
    pattern's external sequence aligns with g's.

    ``region_labels`` relabels pattern edges (typically the pinned one) for
    the reconstruction check.  Every yielded cover satisfies, up to
    isomorphism::

        g  ==  context[hole / region]      (with context)
        g  ==  region                      (without)

    where region = relabeled-pattern with each slot replaced by its filler.
    """
    budget = budget or _Budget(10_000_000)
    slots = tuple(slots)
    assert set(pinned) | set(slots) == set(pattern.edges())
    assert len(set(pinned.values())) == len(pinned)

    region_pattern = relabel(pattern, region_labels) if region_labels else pattern
    g_key = canonical_form(g)

    def validate(context: Hypergraph | None, hole: int | None, fillers: tuple[Hypergraph, ...]) -> bool:
        region = replace_many(region_pattern, dict(zip(slots, fillers)))
        full = replace(context, hole, region) if context is not None else region
        return canonical_form(full) == g_key

    # No unknowns at all: the region must simply be isomorphic to g.
    if not slots and not with_context:
        budget.spend()
        if canonical_form(region_pattern) == g_key:
            yield Cover(None, None, ())
        return

    # Pin-induced partial node map from pattern nodes to g nodes.
    mu0: dict[int, int] = {}

    def bind(pv: int, gv: int) -> bool:
        if pv in mu0 and mu0[pv] != gv:
            return False
        mu0[pv] = gv
        return True

    if not with_context:
        if pattern.rank != g.rank:
            return
        for pv, gv in zip(pattern.external, g.external):
            if not bind(pv, gv):
                return
    for pe, ge in pinned.items():
        if len(pattern.attach[pe]) != len(g.attach[ge]):
            return
        for pv, gv in zip(pattern.attach[pe], g.attach[ge]):
            if not bind(pv, gv):
                return

    free_nodes = [v for v in pattern.nodes() if v not in mu0]
    assignable = [e for e in g.edges() if e not in set(pinned.values())]
    n_parts = len(slots) + (1 if with_context else 0)
    ctx_part = len(slots)  # context is the last part when present

    if free_nodes and g.num_nodes == 0:
        return

    seen: set[tuple] = set()

    for images in itertools.product(range(g.num_nodes), repeat=len(free_nodes)):
        mu = dict(mu0)
        mu.update(zip(free_nodes, images))
        image_nodes = set(mu.values())

        for sigma in itertools.product(range(n_parts), repeat=len(assignable)):
            budget.spend()
            # Ownership of g-nodes outside the pattern image.
            owner: dict[int, int] = {}
            ok = True
            for e, part in zip(assignable, sigma):
                for v in g.attach[e]:
                    if v in image_nodes:
                        continue
                    if owner.setdefault(v, part) != part:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            unowned = [
                v
                for v in g.nodes()
                if v not in image_nodes and v not in owner
            ]
            # Isolated unowned nodes may live in any part.
            for owners in itertools.product(range(n_parts), repeat=len(unowned)):
                full_owner = dict(owner)
                full_owner.update(zip(unowned, owners))
                yield from _expand_blocks(
                    g,
                    pattern,
                    slots,
                    with_context,
                    ctx_part,
                    mu,
                    [e for e in assignable],
                    sigma,
                    full_owner,
                    validate,
                    seen,
                    budget,
                )


def _expand_blocks(
    g: Hypergraph,
    pattern: Hypergraph,
    slots: tuple[int, ...],
    with_context: bool,
    ctx_part: int,
    mu: dict[int, int],
    assignable: list[int],
    sigma: tuple[int, ...],
    owner: dict[int, int],
    validate,
    seen: set,
    budget: _Budget,
) -> Iterator[Cover]:
    """Choose interface blocks per part, build candidates, validate."""

    # Image sequences: slot i's filler externals map to mu(att(slot_i));
    # the context hole's attachments map to mu(ext_pattern).
    specs: list[tuple[int, ...]] = [tuple(mu[v] for v in pattern.attach[s]) for s in slots]
    if with_context:
        specs.append(tuple(mu[v] for v in pattern.external))

    def partition_options(spec: tuple[int, ...]) -> Iterator[list[tuple[int, tuple[int, ...]]]]:
        # Partition positions into blocks; only same-image positions may share.
        groups: dict[int, list[int]] = {}
        for pos, w in enumerate(spec):
            groups.setdefault(w, []).append(pos)
        group_keys = sorted(groups)
        per_group = [list(set_partitions(groups[w])) for w in group_keys]
        for combo in itertools.product(*per_group):
            blocks: list[tuple[int, tuple[int, ...]]] = []
            for w, parts in zip(group_keys, combo):
                for block in parts:
                    blocks.append((w, tuple(sorted(block))))
            blocks.sort(key=lambda b: b[1][0])
            yield blocks

    def build_part(
        part: int, blocks: list[tuple[int, tuple[int, ...]]]
    ) -> Iterator[tuple[Hypergraph, int | None]]:
        """All concrete graphs for one part given its interface blocks."""
        owned = sorted(v for v, p in owner.items() if p == part)
        local = {v: i for i, v in enumerate(owned)}
        block_base = len(owned)
        edges_here = [e for e, p in zip(assignable, sigma) if p == part]

        # Per attachment occurrence, the candidate local nodes.
        choice_lists: list[list[int]] = []
        occ_index: list[tuple[int, int]] = []
        for e in edges_here:
            for pos, w in enumerate(g.attach[e]):
                if w in local:
                    continue
                cands = [block_base + bi for bi, (bw, _) in enumerate(blocks) if bw == w]
                if not cands:
                    return
                occ_index.append((e, pos))
                choice_lists.append(cands)

        is_ctx = with_context and part == ctx_part
        ext_choices: list[list[int]] = []
        if is_ctx:
            for w in g.external:
                if w in local:
                    ext_choices.append([local[w]])
                else:
                    cands = [block_base + bi for bi, (bw, _) in enumerate(blocks) if bw == w]
                    if not cands:
                        return
                    ext_choices.append(cands)

        pos_to_block = {}
        for bi, (_, positions) in enumerate(blocks):
            for pos in positions:
                pos_to_block[pos] = block_base + bi

        num_local = block_base + len(blocks)
        spec_len = len(specs[part]) if part < len(specs) else 0

        for attachment_choice in itertools.product(*choice_lists):
            budget.spend()
            chosen = dict(zip(occ_index, attachment_choice))
            labels: list[Label] = []
            attach: list[tuple[int, ...]] = []
            for e in edges_here:
                att = []
                for pos, w in enumerate(g.attach[e]):
                    if w in local:
                        att.append(local[w])
                    else:
                        att.append(chosen[(e, pos)])
                labels.append(g.labels[e])
                attach.append(tuple(att))
            if is_ctx:
                hole_att = tuple(pos_to_block[p] for p in range(spec_len))
                for ext_choice in itertools.product(*ext_choices):
                    hole_id = len(labels)
                    yield (
                        Hypergraph(
                            num_local,
                            tuple(labels) + (Hole(spec_len),),
                            tuple(attach) + (hole_att,),
                            tuple(ext_choice),
                        ),
                        hole_id,
                    )
            else:
                ext = tuple(pos_to_block[p] for p in range(spec_len))
                yield (
                    Hypergraph(num_local, tuple(labels), tuple(attach), ext),
                    None,
                )

    part_block_options = [list(partition_options(spec)) for spec in specs]
    for block_combo in itertools.product(*part_block_options):
        part_graphs: list[list[tuple[Hypergraph, int | None]]] = []
        dead = False
        for part in range(len(specs)):
            options = list(build_part(part, block_combo[part]))
            if not options:
                dead = True
                break
            part_graphs.append(options)
        if dead:
            continue
        for combo in itertools.product(*part_graphs):
            fillers = tuple(gr for gr, _ in combo[: len(slots)])
            if with_context:
                context, hole = combo[ctx_part]
            else:
                context, hole = None, None
            key = (
                None if context is None else canonical_form(context),
                tuple(canonical_form(f) for f in fillers),
            )
            if key in seen:
                continue
            budget.spend()
            if validate(context, hole, fillers):
                seen.add(key)
                yield Cover(context, hole, fillers)


Expansion = tuple[str, tuple[Sequent, ...], object]


def backward_expansions(
    seq: Sequent, mode: CalculusMode, budget: _Budget | None = None
) -> list[Expansion]:
    """All ways ``seq`` arises as the conclusion of one inference rule.

    Returns (rule tag, premises, witness) triples, deduplicated on the
    premise list, in a deterministic order.  In restricted mode, expansions
    with an edgeless premise antecedent are dropped.
    """
    budget = budget or _Budget(10_000_000)
    ant, succ = seq.antecedent, seq.succedent
    out: list[Expansion] = []

    if is_isomorphic(ant, handle(succ)):
        out.append((AXIOM, (), None))

    if isinstance(succ, Div):
        premise = Sequent(replace(succ.denominator, succ.dollar_edge, ant), succ.numerator)
        out.append((DIV_R, (premise,), None))

    for e in ant.edges():
        lab = ant.labels[e]
        if isinstance(lab, Prod):
            premise = Sequent(replace(ant, e, lab.body), succ)
            out.append((TIMES_L, (premise,), TimesLWitness(e)))

    if isinstance(succ, Prod):
        body = succ.body
        slot_edges = tuple(body.edges())
        for cover in cover_decompositions(
            ant, body, pinned={}, slots=slot_edges, with_context=False, budget=budget
        ):
            premises = tuple(
                Sequent(f, body.labels[s]) for f, s in zip(cover.fillers, slot_edges)
            )
            out.append((TIMES_R, premises, TimesRWitness(slot_edges)))

    for e_star in ant.edges():
        dtype = ant.labels[e_star]
        if not isinstance(dtype, Div):
            continue
        den = dtype.denominator
        slot_edges = dtype.slot_edges()
        for cover in cover_decompositions(
            ant,
            den,
            pinned={dtype.dollar_edge: e_star},
            slots=slot_edges,
            with_context=True,
            region_labels={dtype.dollar_edge: dtype},
            budget=budget,
        ):
            assert cover.context is not None and cover.hole is not None
            p0_ant = replace(cover.context, cover.hole, handle(dtype.numerator))
            numerator_edge = p0_ant.num_edges - 1  # inserted handle edge comes last
            premises = (Sequent(p0_ant, succ),) + tuple(
                Sequent(f, den.labels[s]) for f, s in zip(cover.fillers, slot_edges)
            )
            out.append((DIV_L, premises, DivLWitness(dtype, numerator_edge, slot_edges)))

    if mode is CalculusMode.HL:
        out = [
            exp
            for exp in out
            if all(not p.antecedent.is_edgeless() for p in exp[1])
        ]

    deduped: list[Expansion] = []
    seen: set[tuple] = set()
    for exp in out:
        key = (exp[0], tuple(p.key for p in exp[1]))
        if key not in seen:
            seen.add(key)
            deduped.append(exp)
    return deduped


class HlProver:
    """Complete backward search for derivability in either calculus mode.

    A prover may be reused across goals; the memo table persists and is
    keyed on canonical sequent forms.  ``derive`` either returns a
    derivation tree, returns None (definitely not derivable), or raises
    SearchLimitExceeded.
    """

    def __init__(self, mode: CalculusMode, limits: SearchLimits | None = None):
        self.mode = mode
        self.limits = limits or SearchLimits()
        self._memo: dict[tuple, DerivationTree | None] = {}

    def derive(self, seq: Sequent) -> DerivationTree | None:
        if not sequent_well_formed(seq, self.mode):
            raise ValueError(f"sequent not well-formed in mode {self.mode.value}: {seq!r}")
        budget = _Budget(self.limits.max_work)
        return self._derive(seq, budget)

    def _derive(self, seq: Sequent, budget: _Budget) -> DerivationTree | None:
        key = seq.key
        if key in self._memo:
            return self._memo[key]
        budget.spend()
        result: DerivationTree | None = None
        for rule, premises, witness in backward_expansions(seq, self.mode, budget):
            subtrees: list[DerivationTree] = []
            for p in premises:
                sub = self._derive(p, budget)
                if sub is None:
                    break
                subtrees.append(sub)
            else:
                result = DerivationTree(seq, rule, tuple(subtrees), witness)
                break
        self._memo[key] = result
        return result


def derive(
    seq: Sequent, mode: CalculusMode, limits: SearchLimits | None = None
) -> DerivationTree | None:
    """One-shot derivability search; see HlProver."""
    return HlProver(mode, limits).derive(seq)


def check_derivation(tree: DerivationTree, mode: CalculusMode) -> bool:
    """Verify a derivation tree by forward rule application.

    Every node's conclusion must be reproduced, up to isomorphism, by
    applying its rule tag and witness to its premises; leaves must be
    axioms.  Shares no search machinery with ``derive``.
    """
    seq = tree.conclusion
    if not sequent_well_formed(seq, mode):
        return False
    ant, succ = seq.antecedent, seq.succedent
    rule, premises, witness = tree.rule, tree.premises, tree.witness

    if rule == AXIOM:
        if premises or not is_isomorphic(ant, handle(succ)):
            return False
    elif rule == DIV_R:
        if len(premises) != 1 or not isinstance(succ, Div):
            return False
        p = premises[0].conclusion
        if p.succedent != succ.numerator:
            return False
        expected = replace(succ.denominator, succ.dollar_edge, ant)
        if not is_isomorphic(p.antecedent, expected):
            return False
    elif rule == TIMES_L:
        if len(premises) != 1 or not isinstance(witness, TimesLWitness):
            return False
        e = witness.edge
        if not 0 <= e < ant.num_edges or not isinstance(ant.labels[e], Prod):
            return False
        p = premises[0].conclusion
        if p.succedent != succ:
            return False
        if not is_isomorphic(p.antecedent, replace(ant, e, ant.labels[e].body)):
            return False
    elif rule == TIMES_R:
        if not isinstance(succ, Prod) or not isinstance(witness, TimesRWitness):
            return False
        body = succ.body
        if tuple(sorted(witness.slot_edges)) != tuple(body.edges()):
            return False
        if len(premises) != body.num_edges:
            return False
        for p, s in zip(premises, witness.slot_edges):
            if p.conclusion.succedent != body.labels[s]:
                return False
        rebuilt = replace_many(
            body,
            {s: p.conclusion.antecedent for p, s in zip(premises, witness.slot_edges)},
        )
        if not is_isomorphic(rebuilt, ant):
            return False
    elif rule == DIV_L:
        if not isinstance(witness, DivLWitness) or not premises:
            return False
        dtype = witness.dtype
        den = dtype.denominator
        if tuple(witness.slot_edges) != dtype.slot_edges():
            return False
        if len(premises) != 1 + len(witness.slot_edges):
            return False
        p0 = premises[0].conclusion
        if p0.succedent != succ:
            return False
        ne = witness.numerator_edge
        if not 0 <= ne < p0.antecedent.num_edges:
            return False
        if p0.antecedent.labels[ne] != dtype.numerator:
            return False
        for p, s in zip(premises[1:], witness.slot_edges):
            if p.conclusion.succedent != den.labels[s]:
                return False
        region = replace_many(
            relabel(den, {dtype.dollar_edge: dtype}),
            {s: p.conclusion.antecedent for p, s in zip(premises[1:], witness.slot_edges)},
        )
        rebuilt = replace(p0.antecedent, ne, region)
        if not is_isomorphic(rebuilt, ant):
            return False
    else:
        return False

    return all(check_derivation(p, mode) for p in premises)
