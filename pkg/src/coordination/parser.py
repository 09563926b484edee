# src/coordination/parser.py
"""
Bottom-up chart parser for head saturation and lexicalized coordination.

The chart is closed under four operations until nothing new appears:

* head-complement saturation, partial or total, where the last complement
  may remain unsaturated and pass its requirement up to the mother;
* coordination, which builds tuples on both sides of a conjunction token and
  saturates the conjunction with them;
* the subject rule, which joins a saturated NP and a saturated verbal edge
  into an S;
* lexical scanning, which seeds the chart.

Edges are packed: two derivations of the same span and body share one edge.
"""
from __future__ import annotations

import logging
import random
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .categories import Cat
from .config import ParserConfig
from .errors import ChartOverflowError, UnknownTokenError
from .lexicon import CONJ_PART, Lexicon, instantiate_coordination, lookup
from .requirements import EMPTY, Requirement
from .satisfaction import (
    Composite,
    CoordSig,
    Tuple,
    satisfies_argspec,
    satisfies_coord,
    select_subrequirements,
)

logger = logging.getLogger(__name__)

RULE_LEX = "lex"
RULE_HEAD = "head-complements"
RULE_SUBJECT = "subject"
RULE_COORD = "coordination"

SUBJECT_PART = "NP"
VERB_PART = "V"
SENTENCE_PART = "S"


@dataclass(frozen=True)
class Derivation:
    rule: str
    children: tuple = ()

    @property
    def sort_key(self) -> tuple:
        return (self.rule, tuple((c.start, c.end, str(c)) for c in self.children))


@dataclass(eq=False)
class Edge:
    start: int
    end: int
    body: Union[Cat, CoordSig]
    phon: tuple
    derivations: list = field(default_factory=list)

    @property
    def key(self) -> tuple:
        return (self.start, self.end, self.body)

    @property
    def is_coord(self) -> bool:
        return isinstance(self.body, CoordSig)

    @property
    def residual(self) -> Requirement:
        return self.body.residual if self.is_coord else self.body.subcat

    @property
    def saturated(self) -> bool:
        return not self.residual

    @property
    def uniform_part(self) -> Optional[str]:
        return self.body.uniform_part if self.is_coord else self.body.part

    @property
    def width(self) -> int:
        """How many requirement slots this edge fills as a complement."""
        return self.body.arity if self.is_coord else 1

    @property
    def label(self) -> str:
        return self.body.label

    def __str__(self):
        return f"{self.label} {self.residual}"

    def __repr__(self):
        return f"[{self.start}, {self.end}] {self} \"{' '.join(self.phon)}\""


class Chart:
    """Edges by span, deduplicated by (span, body) with derivations packed."""

    def __init__(self, tokens):
        self.tokens = tuple(tokens)
        self.edges = {}
        self._by_start = defaultdict(list)
        self._by_end = defaultdict(list)

    def add(self, edge: Edge) -> bool:
        """Insert edge; returns whether it is new. Derivations of a known edge are merged."""
        known = self.edges.get(edge.key)
        if known is not None:
            for derivation in edge.derivations:
                if derivation not in known.derivations:
                    known.derivations.append(derivation)
            return False
        self.edges[edge.key] = edge
        self._by_start[edge.start].append(edge)
        self._by_end[edge.end].append(edge)
        return True

    def get(self, start: int, end: int, body) -> Optional[Edge]:
        return self.edges.get((start, end, body))

    def starting_at(self, position: int) -> list:
        return list(self._by_start.get(position, ()))

    def ending_at(self, position: int) -> list:
        return list(self._by_end.get(position, ()))

    def spanning(self, start: int, end: int) -> list:
        return [e for e in self._by_start.get(start, ()) if e.end == end]

    def keys(self) -> set:
        return set(self.edges)

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(list(self.edges.values()))


class Agenda:
    """FIFO agenda; with a random generator it pops in random order instead."""

    def __init__(self, edges=(), rng: Optional[random.Random] = None):
        self.items = deque(edges)
        self.rng = rng

    def extend(self, edges):
        self.items.extend(edges)

    def pop(self) -> Edge:
        if self.rng is None:
            return self.items.popleft()
        i = self.rng.randrange(len(self.items))
        self.items[i], self.items[-1] = self.items[-1], self.items[i]
        return self.items.pop()

    def __len__(self):
        return len(self.items)


# ── Lexical scanning ────────────────────────────────────────────────────


def lex_scan(tokens, lex: Lexicon) -> Chart:
    tokens = [t.lower() for t in tokens]
    if not tokens:
        raise ValueError("cannot scan an empty token sequence")
    chart = Chart(tokens)
    covered = [False] * len(tokens)
    for i in range(len(tokens)):
        for length in range(min(lex.longest_phon, len(tokens) - i), 0, -1):
            phon = tuple(tokens[i:i + length])
            for entry in lookup(lex, phon):
                chart.add(Edge(i, i + length, entry.cat, phon, [Derivation(RULE_LEX)]))
                covered[i:i + length] = [True] * length
    unknown = [t for t, seen in zip(tokens, covered) if not seen]
    if unknown:
        raise UnknownTokenError(unknown)
    return chart


# ── Head saturation ─────────────────────────────────────────────────────


def head_requirement(edge: Edge) -> Requirement:
    """What an edge still needs when acting as head; coordinations of tuples never head."""
    if not edge.is_coord:
        return edge.body.subcat
    if edge.uniform_part is None:
        return EMPTY
    return edge.body.residual


def _head_features(edge: Edge) -> tuple:
    if not edge.is_coord:
        return edge.body.feats
    shared = set(edge.body.conjunct_cats[0].feats)
    for cat in edge.body.conjunct_cats[1:]:
        shared &= set(cat.feats)
    return tuple(sorted(shared))


def _satisfies(edge: Edge, selected: Requirement) -> bool:
    if edge.is_coord:
        return bool(satisfies_coord(edge.body, selected))
    return satisfies_argspec(Composite((edge.body,)), selected.specs[0])


def _realize(comps: list, selected: Requirement) -> bool:
    """Can the complements, left to right, consume exactly the selected slots?"""
    if not comps:
        return not selected
    first, rest = comps[0], comps[1:]
    if first.width > len(selected):
        return False
    return any(
        _satisfies(first, sub) and _realize(rest, remaining)
        for sub, remaining in select_subrequirements(selected, first.width)
    )


def combine_head_complements(head: Edge, comps: list) -> list:
    """
    Saturate the head with the complements that follow it.

    Some sub-multiset of the head's requirement is realized by the
    complements; the mother keeps the unselected remainder plus whatever the
    last complement still requires. Only the last complement may be
    unsaturated, and it may only pass its requirement up when the head is
    otherwise totally saturated.
    """
    requirement = head_requirement(head)
    if not requirement or not comps:
        return []
    position = head.end
    for comp in comps:
        if comp.start != position:
            raise ValueError("complements must follow the head contiguously")
        position = comp.end
    if any(not c.saturated for c in comps[:-1]):
        return []
    inherited = comps[-1].residual
    needed = sum(c.width for c in comps)
    if needed > len(requirement):
        return []

    part, feats = head.uniform_part, _head_features(head)
    phon = head.phon + tuple(t for c in comps for t in c.phon)
    mothers = {}
    for selected, remainder in select_subrequirements(requirement, needed):
        if remainder and inherited:
            continue
        if _realize(list(comps), selected):
            mothers.setdefault(Cat(part, feats, remainder.union(inherited)), None)
    derivation = Derivation(RULE_HEAD, (head, *comps))
    return [Edge(head.start, comps[-1].end, cat, phon, [derivation]) for cat in mothers]


def subject_attach(np: Edge, vp: Edge) -> Optional[Edge]:
    if np.end != vp.start or np.is_coord:
        return None
    if np.body.part != SUBJECT_PART or not np.saturated:
        return None
    if vp.uniform_part != VERB_PART or not vp.saturated:
        return None
    return Edge(np.start, vp.end, Cat(SENTENCE_PART), np.phon + vp.phon, [Derivation(RULE_SUBJECT, (np, vp))])


# ── Coordination ────────────────────────────────────────────────────────


@dataclass(frozen=True)
class Conjunct:
    """A tuple (or an existing coordination) standing next to a conjunction."""

    start: int
    end: int
    shape: Union[Tuple, CoordSig]
    children: tuple


def _element(edge: Edge) -> Optional[Composite]:
    if not edge.is_coord:
        return None if edge.body.part == CONJ_PART else Composite((edge.body,))
    if edge.body.arity == 1 and edge.saturated:
        return Composite(tuple(edge.body.conjunct_cats))
    return None


def _conjunct(run: tuple) -> Conjunct:
    shape = Tuple(tuple(_element(e) for e in run))
    return Conjunct(run[0].start, run[-1].end, shape, run)


def build_tuples(chart: Chart, max_tuple: int, ending_at: Optional[int] = None,
                 starting_at: Optional[int] = None) -> list:
    """
    Runs of 1..max_tuple adjacent edges in which all but the last are
    saturated. With an anchor only the runs ending (or starting) there are
    built; a coordination edge alone is left to be flattened, not wrapped.
    """
    if max_tuple < 1:
        raise ValueError("tuples need at least one element")
    runs = []

    def grow_left(run):
        runs.append(run)
        if len(run) < max_tuple:
            for e in chart.ending_at(run[0].start):
                if e.saturated and _element(e) is not None:
                    grow_left((e,) + run)

    def grow_right(run):
        runs.append(run)
        if len(run) < max_tuple and run[-1].saturated:
            for e in chart.starting_at(run[-1].end):
                if _element(e) is not None:
                    grow_right(run + (e,))

    if ending_at is not None:
        for e in chart.ending_at(ending_at):
            if _element(e) is not None:
                grow_left((e,))
    else:
        starts = [starting_at] if starting_at is not None else range(len(chart.tokens))
        for s in starts:
            for e in chart.starting_at(s):
                if _element(e) is not None:
                    grow_right((e,))

    return [_conjunct(run) for run in runs if not (len(run) == 1 and run[0].is_coord)]


def _coordinations(chart: Chart, position: int, ending: bool) -> list:
    edges = chart.ending_at(position) if ending else chart.starting_at(position)
    return [Conjunct(e.start, e.end, e.body, (e,)) for e in edges if e.is_coord]


def coordinate(chart: Chart, lex: Lexicon, max_tuple: int = 3) -> list:
    """Coordinate edges for every conjunction token and every pair of flanking conjuncts."""
    built = []
    for conj in chart:
        if conj.is_coord or conj.body.part != CONJ_PART or not lex.is_conjunction(conj.phon[0]):
            continue
        lefts = build_tuples(chart, max_tuple, ending_at=conj.start) + _coordinations(chart, conj.start, True)
        rights = build_tuples(chart, max_tuple, starting_at=conj.end) + _coordinations(chart, conj.end, False)
        for left in lefts:
            for right in rights:
                for sig in instantiate_coordination(left.shape, right.shape):
                    children = left.children + (conj,) + right.children
                    phon = tuple(t for c in children for t in c.phon)
                    built.append(Edge(left.start, right.end, sig, phon, [Derivation(RULE_COORD, children)]))
    return built


# ── Closure ─────────────────────────────────────────────────────────────


@dataclass
class TreeNode:
    edge: Edge
    rule: str
    children: tuple = ()


class ParseForest:
    def __init__(self, tokens, chart: Chart, roots: list):
        self.tokens = tuple(tokens)
        self.chart = chart
        self.roots = roots

    def __bool__(self):
        return bool(self.roots)

    def __len__(self):
        return len(self.roots)

    def trees(self, edge: Optional[Edge] = None) -> Iterator[TreeNode]:
        """Every tree packed into edge (default: every root), in a stable order."""
        if edge is None:
            for root in self.roots:
                yield from self.trees(root)
            return
        for derivation in sorted(edge.derivations, key=lambda d: d.sort_key):
            yield from self._expand(edge, derivation, 0, ())

    def _expand(self, edge, derivation, i, done):
        if i == len(derivation.children):
            yield TreeNode(edge, derivation.rule, done)
            return
        for sub in self.trees(derivation.children[i]):
            yield from self._expand(edge, derivation, i + 1, done + (sub,))

    def first_tree(self, edge: Edge) -> TreeNode:
        return next(self.trees(edge))


def _combinations_with(chart: Chart, edge: Edge) -> list:
    found = []
    for right in chart.starting_at(edge.end):
        found.extend(combine_head_complements(edge, [right]))
    for left in chart.ending_at(edge.start):
        found.extend(combine_head_complements(left, [edge]))
    for right in chart.starting_at(edge.end):
        found.append(subject_attach(edge, right))
    for left in chart.ending_at(edge.start):
        found.append(subject_attach(left, edge))
    return [e for e in found if e is not None]


def close_chart(chart: Chart, lex: Lexicon, config: ParserConfig, rng: Optional[random.Random] = None) -> Chart:
    agenda = Agenda(list(chart), rng)

    def admit(edges):
        fresh = [e for e in edges if chart.add(e)]
        if len(chart) > config.max_edges:
            logger.error(f"❌ Chart overflow after {len(chart)} edges")
            raise ChartOverflowError(config.max_edges)
        agenda.extend(fresh)
        return fresh

    while True:
        while agenda:
            admit(_combinations_with(chart, agenda.pop()))
        if not admit(coordinate(chart, lex, config.max_tuple)):
            return chart


def is_root(edge: Edge, length: int, root: str) -> bool:
    return edge.start == 0 and edge.end == length and edge.saturated and edge.uniform_part == root


def parse(tokens, lex: Lexicon, config: Optional[ParserConfig] = None,
          rng: Optional[random.Random] = None) -> ParseForest:
    config = config or ParserConfig()
    tokens = [t.lower() for t in tokens]
    if not tokens:
        logger.info("Nothing to parse")
        return ParseForest(tokens, Chart(tokens), [])
    logger.info(f"Parsing {len(tokens)} tokens: {' '.join(tokens)}")
    chart = close_chart(lex_scan(tokens, lex), lex, config, rng)
    roots = sorted((e for e in chart if is_root(e, len(tokens), config.root)), key=lambda e: str(e))
    logger.info(f"✅ Chart closed with {len(chart)} edges, {len(roots)} root(s)")
    return ParseForest(tokens, chart, roots)
