# src/coordination/requirements.py
"""
Argument specifications, n-requirements and their extended unifications.

An argument specification is a disjunction of categories, any of which may
realize one argument slot. An n-requirement is a multiset of n argument
specifications. Two requirements unify when some permutation pairs their
specifications so that every pair unifies; several permutations may succeed,
and all of their outcomes are returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Optional

from .categories import Cat, subsumes, unify_cat

# Permutation search is exhaustive, so requirements are capped at load time.
MAX_ARITY = 8


@dataclass(frozen=True)
class ArgSpec:
    disjuncts: tuple

    def __post_init__(self):
        unique = set(self.disjuncts)
        if not unique:
            raise ValueError("an argument specification needs at least one disjunct")
        # A disjunct strictly subsumed by another adds no realization.
        kept = [
            c for c in unique
            if not any(d != c and subsumes(d, c) and not subsumes(c, d) for d in unique)
        ]
        object.__setattr__(self, "disjuncts", tuple(sorted(kept, key=lambda c: c.sort_key)))

    @classmethod
    def of(cls, *cats: Cat) -> "ArgSpec":
        return cls(tuple(cats))

    @cached_property
    def sort_key(self) -> tuple:
        return tuple(d.sort_key for d in self.disjuncts)

    def __str__(self):
        return "|".join(str(d) for d in self.disjuncts)


@dataclass(frozen=True)
class Requirement:
    specs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "specs", tuple(sorted(self.specs, key=lambda a: a.sort_key)))

    @classmethod
    def of(cls, *specs: ArgSpec) -> "Requirement":
        return cls(tuple(specs))

    @cached_property
    def sort_key(self) -> tuple:
        return tuple(a.sort_key for a in self.specs)

    def union(self, other: "Requirement") -> "Requirement":
        """Multiset sum, the set-union of the saturation schemata."""
        return Requirement(self.specs + other.specs)

    def __len__(self):
        return len(self.specs)

    def __iter__(self):
        return iter(self.specs)

    def __str__(self):
        return "{" + ", ".join(str(a) for a in self.specs) + "}"


EMPTY = Requirement()


@lru_cache(maxsize=None)
def unify_argspec(a: ArgSpec, b: ArgSpec) -> Optional[ArgSpec]:
    """Disjunction of every pairwise unification that exists; None if none does."""
    unified = [u for s in a.disjuncts for t in b.disjuncts if (u := unify_cat(s, t)) is not None]
    if not unified:
        return None
    return ArgSpec(tuple(unified))


@lru_cache(maxsize=None)
def unify_requirement(p: Requirement, q: Requirement) -> tuple:
    """
    All distinct outcomes of unifying two n-requirements, in canonical order.

    Requirements of different cardinality never unify (conjoined functors
    must have the same valence). Two empty requirements yield the empty
    requirement.
    """
    n = len(p)
    if n != len(q):
        return ()
    if n == 0:
        return (EMPTY,)
    table = [[unify_argspec(a, b) for b in q.specs] for a in p.specs]
    outcomes = set()
    for perm in permutations(range(n)):
        paired = [table[i][j] for i, j in enumerate(perm)]
        if all(u is not None for u in paired):
            outcomes.add(Requirement(tuple(paired)))
    return tuple(sorted(outcomes, key=lambda r: r.sort_key))


def compatible(p: Requirement, q: Requirement) -> bool:
    return bool(unify_requirement(p, q))


def subsumes_argspec(a: ArgSpec, b: ArgSpec) -> bool:
    """True iff every realization allowed by b is allowed by a."""
    return all(any(subsumes(s, t) for s in a.disjuncts) for t in b.disjuncts)


def subsumes_requirement(p: Requirement, q: Requirement) -> bool:
    """True iff some pairing of the specifications has each one of p subsume its partner in q."""
    if len(p) != len(q):
        return False
    return any(
        all(subsumes_argspec(a, q.specs[j]) for a, j in zip(p.specs, perm))
        for perm in permutations(range(len(q)))
    )


def most_general(outcomes) -> tuple:
    """The outcomes no other outcome strictly subsumes, order preserved."""
    return tuple(
        r for r in outcomes
        if not any(
            o != r and subsumes_requirement(o, r) and not subsumes_requirement(r, o)
            for o in outcomes
        )
    )
