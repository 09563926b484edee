# src/coordination/categories.py
"""
Atomic-part categories and the base unification on which every other
operation is built.

A category is a part symbol (NP, PP, Compl, ...), a flat map of atomic
features and a subcategorization requirement. A feature that is absent is
unconstrained, not negative. A category with an empty requirement is
saturated; anything else is a functor.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .requirements import Requirement


@dataclass(frozen=True)
class Cat:
    part: str
    feats: tuple = ()
    subcat: Optional["Requirement"] = field(default=None)

    def __post_init__(self):
        from .requirements import Requirement

        feats = self.feats
        if isinstance(feats, Mapping):
            feats = feats.items()
        object.__setattr__(self, "feats", tuple(sorted((str(k), str(v)) for k, v in feats)))
        subcat = self.subcat
        if subcat is None:
            subcat = Requirement()
        elif not isinstance(subcat, Requirement):
            subcat = Requirement(tuple(subcat))
        object.__setattr__(self, "subcat", subcat)

    @property
    def features(self) -> dict:
        return dict(self.feats)

    @property
    def saturated(self) -> bool:
        return not self.subcat

    @cached_property
    def sort_key(self) -> tuple:
        return (self.part, self.feats, self.subcat.sort_key)

    @property
    def label(self) -> str:
        """Part and features, without the requirement."""
        if not self.feats:
            return self.part
        return self.part + "[" + ",".join(f"{k}={v}" for k, v in self.feats) + "]"

    def with_subcat(self, subcat: "Requirement") -> "Cat":
        return Cat(self.part, self.feats, subcat)

    def __str__(self):
        if self.saturated:
            return self.label
        return self.label + str(self.subcat)


def merge_features(s: Cat, t: Cat) -> Optional[tuple]:
    merged = dict(s.feats)
    for name, value in t.feats:
        if merged.setdefault(name, value) != value:
            return None
    return tuple(sorted(merged.items()))


@lru_cache(maxsize=None)
def unify_cat(s: Cat, t: Cat) -> Optional[Cat]:
    """
    The usual unification of two categories.

    Returns None when the parts differ, a feature takes two values, or the
    two requirements have no extended unification. When the requirements
    unify in several ways, the outcomes no other outcome strictly subsumes
    are kept and the first of them in canonical order is returned. The
    choice depends on the outcome set only, so the operation is commutative,
    and for s with itself the identity pairing subsumes every other outcome.
    """
    from .requirements import most_general, unify_requirement

    if s.part != t.part:
        return None
    feats = merge_features(s, t)
    if feats is None:
        return None
    outcomes = unify_requirement(s.subcat, t.subcat)
    if not outcomes:
        return None
    return Cat(s.part, feats, most_general(outcomes)[0])


def subsumes(s: Cat, t: Cat) -> bool:
    """True iff every constraint of s is entailed by t."""
    from .requirements import subsumes_requirement

    if s.part != t.part:
        return False
    t_feats = t.features
    if any(t_feats.get(name) != value for name, value in s.feats):
        return False
    return subsumes_requirement(s.subcat, t.subcat)
