"""Types and sequents of the hypergraph Lambek calculus.

A type is a primitive, a division ``N ÷ D`` whose denominator is a
hypergraph containing exactly one placeholder ``$_d`` edge, or a product
``×(M)`` over a type-labeled hypergraph.  Types are values compared up
to isomorphism of their embedded hypergraphs.

Two calculi are supported: the restricted one where antecedents must carry
at least one edge, denominators more than their placeholder, and product
bodies at least one edge; and the unrestricted variant with all those
conditions dropped.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .canon import canonical_form
from .hypergraph import Hypergraph


class TypeError_(ValueError):
    """Raised on ill-formed types or sequents."""


@dataclass(frozen=True)
class Dollar:
    """The placeholder label of a division denominator."""

    rank: int

    def sort_key(self) -> tuple:
        return ("$", self.rank)

    def __repr__(self) -> str:
        return f"$_{self.rank}"


class HlType:
    """Base class of types; equality and hashing are up to isomorphism."""

    @property
    def rank(self) -> int:
        raise NotImplementedError

    @property
    def key(self) -> tuple:
        k = self.__dict__.get("_key")
        if k is None:
            k = self._compute_key()
            self.__dict__["_key"] = k
        return k

    def _compute_key(self) -> tuple:
        raise NotImplementedError

    def sort_key(self) -> tuple:
        return self.key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HlType) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)


class Prim(HlType):
    """A primitive type of a given rank."""

    def __init__(self, name: str, rank: int):
        if rank < 0:
            raise TypeError_("negative rank")
        self.name = name
        self._rank = rank

    @property
    def rank(self) -> int:
        return self._rank

    def _compute_key(self) -> tuple:
        return ("prim", self.name, self._rank)

    def __repr__(self) -> str:
        return f"{self.name}:{self._rank}"


class Div(HlType):
    """A division type: numerator over a denominator hypergraph.

    Exactly one denominator edge carries a ``$`` label; the rank of the
    type is the rank of that edge, and the numerator's rank must equal the
    denominator's rank.
    """

    def __init__(self, numerator: HlType, denominator: Hypergraph):
        dollar = None
        for e in denominator.edges():
            lab = denominator.labels[e]
            if isinstance(lab, Dollar):
                if dollar is not None:
                    raise TypeError_("denominator has more than one $ edge")
                dollar = e
            elif not isinstance(lab, HlType):
                raise TypeError_(f"denominator label {lab!r} is not a type")
        if dollar is None:
            raise TypeError_("denominator has no $ edge")
        if numerator.rank != denominator.rank:
            raise TypeError_(
                f"numerator rank {numerator.rank} != denominator rank {denominator.rank}"
            )
        self.numerator = numerator
        self.denominator = denominator
        self.dollar_edge = dollar

    @property
    def rank(self) -> int:
        return len(self.denominator.attach[self.dollar_edge])

    def slot_edges(self) -> tuple[int, ...]:
        """Denominator edges other than the placeholder, in id order."""
        return tuple(e for e in self.denominator.edges() if e != self.dollar_edge)

    def _compute_key(self) -> tuple:
        return ("div", self.numerator.key, canonical_form(self.denominator))

    def __repr__(self) -> str:
        return f"({self.numerator!r} / {self.denominator!r})"


class Prod(HlType):
    """A product type over a type-labeled hypergraph body."""

    def __init__(self, body: Hypergraph):
        for e in body.edges():
            if not isinstance(body.labels[e], HlType):
                raise TypeError_(f"product body label {body.labels[e]!r} is not a type")
        self.body = body

    @property
    def rank(self) -> int:
        return self.body.rank

    def _compute_key(self) -> tuple:
        return ("prod", canonical_form(self.body))

    def __repr__(self) -> str:
        return f"x({self.body!r})"


class CalculusMode(enum.Enum):
    """Restricted calculus (edgeful antecedents) or the unrestricted one."""

    HL = "hl"
    HLSTAR = "hl*"


def well_formed_type(t: HlType, mode: CalculusMode) -> bool:
    """Check the edge-count side conditions of the restricted calculus."""
    if isinstance(t, Prim):
        return True
    if isinstance(t, Div):
        if mode is CalculusMode.HL and t.denominator.num_edges <= 1:
            return False
        return well_formed_type(t.numerator, mode) and all(
            well_formed_type(t.denominator.labels[e], mode) for e in t.slot_edges()
        )
    if isinstance(t, Prod):
        if mode is CalculusMode.HL and t.body.num_edges == 0:
            return False
        return all(well_formed_type(lab, mode) for lab in t.body.labels)
    raise TypeError_(f"unknown type {t!r}")


class Sequent:
    """A type-labeled antecedent hypergraph with a succedent of equal rank."""

    def __init__(self, antecedent: Hypergraph, succedent: HlType):
        for lab in antecedent.labels:
            if not isinstance(lab, HlType):
                raise TypeError_(f"antecedent label {lab!r} is not a type")
        if antecedent.rank != succedent.rank:
            raise TypeError_(
                f"antecedent rank {antecedent.rank} != succedent rank {succedent.rank}"
            )
        self.antecedent = antecedent
        self.succedent = succedent

    @property
    def key(self) -> tuple:
        k = self.__dict__.get("_key")
        if k is None:
            k = (canonical_form(self.antecedent), self.succedent.key)
            self.__dict__["_key"] = k
        return k

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Sequent) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{self.antecedent!r} -> {self.succedent!r}"


def sequent_well_formed(seq: Sequent, mode: CalculusMode) -> bool:
    if mode is CalculusMode.HL and seq.antecedent.is_edgeless():
        return False
    return all(well_formed_type(lab, mode) for lab in seq.antecedent.labels) and well_formed_type(
        seq.succedent, mode
    )


def full_size(t: HlType) -> int:
    """The size measure bounding derivation length.

    Primitives count rank+1.  A division counts its numerator, the sizes of
    the non-placeholder denominator labels, the denominator's nodes, and
    the placeholder's rank plus one.  A product counts its body labels,
    nodes, and external nodes plus one.  The placeholder edge itself has no
    label size; its contribution is the ``rank+1`` term, mirroring the
    primitive clause.
    """
    if isinstance(t, Prim):
        return t.rank + 1
    if isinstance(t, Div):
        den = t.denominator
        return (
            full_size(t.numerator)
            + sum(full_size(den.labels[e]) for e in t.slot_edges())
            + den.num_nodes
            + t.rank
            + 1
        )
    if isinstance(t, Prod):
        body = t.body
        return sum(full_size(lab) for lab in body.labels) + body.num_nodes + len(body.external) + 1
    raise TypeError_(f"unknown type {t!r}")


def size_bound(seq: Sequent) -> int:
    """Sum of antecedent label sizes plus the succedent size.

    Bounds the number of axioms plus rule applications in any derivation of
    the sequent, together with the antecedent's node count.
    """
    return sum(full_size(lab) for lab in seq.antecedent.labels) + full_size(seq.succedent)


def connective_count(t: HlType) -> int:
    """Number of division and product constructors in a type."""
    if isinstance(t, Prim):
        return 0
    if isinstance(t, Div):
        return (
            1
            + connective_count(t.numerator)
            + sum(connective_count(t.denominator.labels[e]) for e in t.slot_edges())
        )
    if isinstance(t, Prod):
        return 1 + sum(connective_count(lab) for lab in t.body.labels)
    raise TypeError_(f"unknown type {t!r}")


def sequent_connectives(seq: Sequent) -> int:
    return sum(connective_count(lab) for lab in seq.antecedent.labels) + connective_count(
        seq.succedent
    )


# Rule tags of the calculus.
AXIOM = "axiom"
DIV_L = "div-l"
DIV_R = "div-r"
TIMES_L = "times-l"
TIMES_R = "times-r"


@dataclass(frozen=True)
class TimesLWitness:
    """The product-labeled antecedent edge that was unfolded."""

    edge: int


@dataclass(frozen=True)
class DivLWitness:
    """Matching data for a division-left inference.

    ``dtype`` is the division type consumed; ``numerator_edge`` is the edge
    of the first premise's antecedent carrying the numerator; premise i+1
    fills denominator edge ``slot_edges[i]``.
    """

    dtype: Div
    numerator_edge: int
    slot_edges: tuple[int, ...]


@dataclass(frozen=True)
class TimesRWitness:
    """Premise i fills body edge ``slot_edges[i]`` of the product."""

    slot_edges: tuple[int, ...]


@dataclass(frozen=True)
class DerivationTree:
    """A derivation: conclusion, rule tag, premise subtrees, and witness."""

    conclusion: Sequent
    rule: str
    premises: tuple["DerivationTree", ...]
    witness: object | None = None

    def axiom_count(self) -> int:
        if self.rule == AXIOM:
            return 1
        return sum(p.axiom_count() for p in self.premises)

    def rule_count(self) -> int:
        if self.rule == AXIOM:
            return 0
        return 1 + sum(p.rule_count() for p in self.premises)

    def iter_nodes(self):
        yield self
        for p in self.premises:
            yield from p.iter_nodes()
