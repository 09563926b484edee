# src/coordination/satisfaction.py
"""
Structured complements and the relations by which they satisfy requirements.

A composite joins saturated categories of possibly different parts
(``NP∧Compl``). A tuple is an ordered sequence of composites acting jointly
as one conjunct; only its last element may be unsaturated. A coordination
signature joins tuples of equal arity and carries the requirement the
conjuncts share.

Witnesses are returned rather than booleans so that the parser can keep
every way a requirement was met.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Optional

from .categories import Cat, unify_cat
from .requirements import EMPTY, ArgSpec, Requirement


@dataclass(frozen=True)
class Composite:
    conjuncts: tuple

    def __post_init__(self):
        if not self.conjuncts:
            raise ValueError("a composite needs at least one conjunct")
        if len(self.conjuncts) > 1 and any(not c.saturated for c in self.conjuncts):
            raise ValueError("only a single-conjunct composite may be unsaturated")

    @classmethod
    def of(cls, *cats: Cat) -> "Composite":
        return cls(tuple(cats))

    @property
    def saturated(self) -> bool:
        return all(c.saturated for c in self.conjuncts)

    @property
    def residual(self) -> Requirement:
        return self.conjuncts[0].subcat if len(self.conjuncts) == 1 else EMPTY

    @property
    def label(self) -> str:
        return "∧".join(c.label for c in self.conjuncts)


@dataclass(frozen=True)
class Tuple:
    elements: tuple

    def __post_init__(self):
        if not self.elements:
            raise ValueError("a tuple needs at least one element")
        if any(not e.saturated for e in self.elements[:-1]):
            raise ValueError("only the last element of a tuple may be unsaturated")

    @classmethod
    def of(cls, *elements) -> "Tuple":
        return cls(tuple(e if isinstance(e, Composite) else Composite((e,)) for e in elements))

    @property
    def arity(self) -> int:
        return len(self.elements)

    @property
    def residual(self) -> Requirement:
        return self.elements[-1].residual

    @property
    def label(self) -> str:
        if self.arity == 1:
            return self.elements[0].label
        parts = (e.label if len(e.conjuncts) == 1 else f"({e.label})" for e in self.elements)
        return "<" + ",".join(parts) + ">"


@dataclass(frozen=True)
class CoordSig:
    tuples: tuple
    residual: Requirement = EMPTY

    def __post_init__(self):
        if not self.tuples:
            raise ValueError("a coordination needs at least one tuple")
        if len({t.arity for t in self.tuples}) != 1:
            raise ValueError("coordinated tuples must have the same arity")

    @property
    def arity(self) -> int:
        return self.tuples[0].arity

    @property
    def uniform_part(self) -> Optional[str]:
        """The part shared by every conjunct of a coordination of 1-tuples."""
        if self.arity != 1:
            return None
        parts = {c.part for t in self.tuples for c in t.elements[0].conjuncts}
        return parts.pop() if len(parts) == 1 else None

    @property
    def conjunct_cats(self) -> list:
        return [c for t in self.tuples for e in t.elements for c in e.conjuncts]

    @property
    def label(self) -> str:
        return "∧".join(t.label for t in self.tuples)


def satisfies_argspec(c: Composite, a: ArgSpec) -> bool:
    """Every conjunct of the composite matches at least one disjunct."""
    return all(any(unify_cat(x, d) is not None for d in a.disjuncts) for x in c.conjuncts)


def match_tuple(t: Tuple, p: Requirement) -> list:
    """
    All bijections from tuple positions to requirement slots under which
    each element satisfies its slot. An assignment maps position i to slot
    ``assignment[i]``; assignments reaching identical specifications are
    reported once.
    """
    if t.arity != len(p):
        raise ValueError(f"tuple of arity {t.arity} cannot match a {len(p)}-requirement")
    ok = [[satisfies_argspec(e, a) for a in p.specs] for e in t.elements]
    seen, assignments = set(), []
    for perm in permutations(range(t.arity)):
        if all(ok[i][j] for i, j in enumerate(perm)):
            signature = tuple(p.specs[j] for j in perm)
            if signature not in seen:
                seen.add(signature)
                assignments.append(perm)
    return assignments


def satisfies_coord(s: CoordSig, p: Requirement) -> list:
    """One assignment per tuple, for every combination; empty when unsatisfied."""
    per_tuple = []
    for t in s.tuples:
        assignments = match_tuple(t, p)
        if not assignments:
            return []
        per_tuple.append(assignments)
    return list(product(*per_tuple))


def select_subrequirements(p: Requirement, m: int) -> list:
    """Every size-m sub-multiset of p with its complement, deduplicated."""
    n = len(p)
    if not 0 < m <= n:
        raise ValueError(f"cannot select {m} of {n} specifications")
    splits = {}
    for chosen in combinations(range(n), m):
        picked = set(chosen)
        selected = Requirement(tuple(p.specs[i] for i in chosen))
        remainder = Requirement(tuple(a for i, a in enumerate(p.specs) if i not in picked))
        splits.setdefault((selected, remainder), None)
    return list(splits)
