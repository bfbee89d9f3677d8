"""The string Lambek calculus, with and without empty premises.

Sequents here are plain lists of formulas; no graph machinery is involved,
so this prover can serve as an independent oracle for the string-graph
embedding.  Backward search with memoization; complete because every rule
removes one connective.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class LcFormula:
    """A formula: atom, left division, right division, or product."""

    def connectives(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class Atom(LcFormula):
    name: str

    def connectives(self) -> int:
        return 0

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Over(LcFormula):
    """B / A : expects an A on the right to form a B."""

    num: LcFormula
    den: LcFormula

    def connectives(self) -> int:
        return 1 + self.num.connectives() + self.den.connectives()

    def __repr__(self) -> str:
        return f"({self.num!r}/{self.den!r})"


@dataclass(frozen=True)
class Under(LcFormula):
    """A \\ B : expects an A on the left to form a B."""

    den: LcFormula
    num: LcFormula

    def connectives(self) -> int:
        return 1 + self.num.connectives() + self.den.connectives()

    def __repr__(self) -> str:
        return f"({self.den!r}\\{self.num!r})"


@dataclass(frozen=True)
class Product(LcFormula):
    left: LcFormula
    right: LcFormula

    def connectives(self) -> int:
        return 1 + self.left.connectives() + self.right.connectives()

    def __repr__(self) -> str:
        return f"({self.left!r}*{self.right!r})"


class LcProver:
    """Backward prover with a persistent memo table, one per mode."""

    def __init__(self, allow_empty: bool):
        self.allow_empty = allow_empty
        self._memo: dict[tuple, bool] = {}

    def derive(self, antecedent: tuple[LcFormula, ...], succedent: LcFormula) -> bool:
        return self._go(tuple(antecedent), succedent)

    def _go(self, ants: tuple[LcFormula, ...], succ: LcFormula) -> bool:
        if not self.allow_empty and not ants:
            return False
        key = (ants, succ)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        result = _expand(ants, succ, self._go, self.allow_empty)
        self._memo[key] = result
        return result


def lc_derive(antecedent: tuple[LcFormula, ...], succedent: LcFormula, allow_empty: bool) -> bool:
    """Derivability of ``antecedent -> succedent``.

    With ``allow_empty`` False this is the calculus with Lambek's
    restriction (every antecedent, and every split used by a rule, must be
    nonempty); with True, empty premises are allowed.
    """
    return LcProver(allow_empty).derive(tuple(antecedent), succedent)


def _expand(ants, succ, go, allow_empty) -> bool:
    if len(ants) == 1 and ants[0] == succ:
        return True

    # Right rules.
    if isinstance(succ, Over):  # Pi -> B/A from Pi, A -> B
        if go(ants + (succ.den,), succ.num):
            return True
    if isinstance(succ, Under):  # Pi -> A\B from A, Pi -> B
        if go((succ.den,) + ants, succ.num):
            return True
    if isinstance(succ, Product):  # Pi, Psi -> A*B
        lo = 0 if allow_empty else 1
        hi = len(ants) if allow_empty else len(ants) - 1
        for split in range(lo, hi + 1):
            if go(ants[:split], succ.left) and go(ants[split:], succ.right):
                return True

    # Left rules.
    for i, f in enumerate(ants):
        if isinstance(f, Product):  # replace A*B at i by A, B
            if go(ants[:i] + (f.left, f.right) + ants[i + 1 :], succ):
                return True
        if isinstance(f, Over):  # Gamma, B/A, Pi, Delta -> C
            lo = i + 1 if allow_empty else i + 2
            for j in range(lo, len(ants) + 1):
                pi = ants[i + 1 : j]
                if go(ants[:i] + (f.num,) + ants[j:], succ) and go(pi, f.den):
                    return True
        if isinstance(f, Under):  # Gamma, Pi, A\B, Delta -> C
            hi = i if allow_empty else i - 1
            for j in range(0, hi + 1):
                pi = ants[j:i]
                if go(ants[:j] + (f.num,) + ants[i + 1 :], succ) and go(pi, f.den):
                    return True
    return False
