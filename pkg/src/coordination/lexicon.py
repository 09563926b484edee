# src/coordination/lexicon.py
"""
Lexicon loading and the lexicalized coordination rule.

The lexicon is a line-oriented UTF-8 text file (``#`` starts a comment)::

    part NP PP Compl Inf V S Conj
    feature prep = a | de | pour
    conj "et"
    adjunct N { AP | Rel }
    entry "sais" : V { NP | Compl }
    entry "conseille" : V { PP[prep=a], NP | Inf{NP} }

Adjunct directives are applied statically: every entry of the named part
also exists with the adjunct slot added to its requirement.

The conjunction is the head of the coordinate structure. Its entry is
schematic in the number of tuple elements, so it is realized as the
``instantiate_coordination`` operation rather than as a stored entry.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Union

from .categories import Cat
from .errors import LexiconError
from .requirements import MAX_ARITY, ArgSpec, Requirement, unify_requirement
from .satisfaction import CoordSig, Tuple

logger = logging.getLogger(__name__)

CONJ_PART = "Conj"

# A category may hold a requirement whose members hold one more (Inf{NP}).
MAX_NESTING = 2

_NAME = re.compile(r"[A-Za-z_][\w'-]*")
_TOKEN = re.compile(r"\s*(?:([A-Za-z_][\w'-]*)|(\S))")
_ENTRY = re.compile(r'^entry\s+"([^"]*)"\s*:\s*(.+)$')
_FEATURE = re.compile(r"^feature\s+([A-Za-z_]\w*)\s*=\s*(.+)$")
_ADJUNCT = re.compile(r"^adjunct\s+([A-Za-z_]\w*)\s*\{(.*)\}\s*$")
_CONJ = re.compile(r'^conj\s+"([^"]+)"\s*$')


@dataclass(frozen=True)
class LexEntry:
    phon: tuple
    cat: Cat

    def __post_init__(self):
        phon = self.phon.split() if isinstance(self.phon, str) else self.phon
        phon = tuple(t.lower() for t in phon)
        if not phon or any(not t or any(ch.isspace() for ch in t) for t in phon):
            raise ValueError(f"malformed phonology {self.phon!r}")
        object.__setattr__(self, "phon", phon)

    def __str__(self):
        return f'entry "{" ".join(self.phon)}" : {self.cat}'


@dataclass(frozen=True)
class Lexicon:
    parts: tuple = ()
    features: tuple = ()
    base_entries: tuple = ()
    adjuncts: tuple = ()
    conjunctions: tuple = ()

    @cached_property
    def entries(self) -> tuple:
        """Every entry after static adjunct expansion, conjunctions included."""
        expanded = list(self.base_entries)
        for entry in self.base_entries:
            expanded.extend(expand_adjuncts(entry, self.adjunct_specs(entry.cat.part)))
        expanded.extend(LexEntry((conj,), Cat(CONJ_PART)) for conj in self.conjunctions)
        return tuple(expanded)

    @cached_property
    def _index(self) -> dict:
        index = {}
        for entry in self.entries:
            index.setdefault(entry.phon, []).append(entry)
        return index

    @cached_property
    def longest_phon(self) -> int:
        return max((len(e.phon) for e in self.entries), default=0)

    def adjunct_specs(self, part: str) -> list:
        return [spec for head, spec in self.adjuncts if head == part]

    def is_conjunction(self, token: str) -> bool:
        return token.lower() in self.conjunctions


def lookup(lex: Lexicon, tokens) -> list:
    return list(lex._index.get(tuple(t.lower() for t in tokens), ()))


def apply_adjunct_rule(e: LexEntry, a: ArgSpec) -> LexEntry:
    """A copy of e with one more slot for the adjunct specification a."""
    return LexEntry(e.phon, e.cat.with_subcat(e.cat.subcat.union(Requirement.of(a))))


def expand_adjuncts(entry: LexEntry, specs: list) -> list:
    expanded = []
    for size in range(1, len(specs) + 1):
        for chosen in combinations(specs, size):
            extended = entry
            for spec in chosen:
                extended = apply_adjunct_rule(extended, spec)
            expanded.append(extended)
    return expanded


def _split_conjunct(conjunct: Union[Tuple, CoordSig]):
    if isinstance(conjunct, CoordSig):
        return conjunct.tuples, conjunct.residual
    return (conjunct,), conjunct.residual


def instantiate_coordination(left: Union[Tuple, CoordSig], right: Union[Tuple, CoordSig]) -> list:
    """
    Saturate the conjunction with a left and a right conjunct.

    Both conjuncts must have the same arity and impose compatible residual
    requirements. One coordination is produced per distinct unification of
    the residuals; an existing coordination given as a conjunct is flattened
    into the new one. An empty list means the two do not coordinate.
    """
    left_tuples, left_residual = _split_conjunct(left)
    right_tuples, right_residual = _split_conjunct(right)
    if left_tuples[0].arity != right_tuples[0].arity:
        return []
    return [
        CoordSig(left_tuples + right_tuples, residual)
        for residual in unify_requirement(left_residual, right_residual)
    ]


# ── Loading ─────────────────────────────────────────────────────────────


def _strip_comment(line: str) -> str:
    quoted = False
    for i, ch in enumerate(line):
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            return line[:i]
    return line


class _CatReader:
    """Recursive-descent reader for category expressions on one line."""

    def __init__(self, text: str, line: int, parts: list, features: dict):
        self.tokens = [m.group(1) or m.group(2) for m in _TOKEN.finditer(text) if m.group(1) or m.group(2)]
        self.pos = 0
        self.line = line
        self.parts = parts
        self.features = features

    def fail(self, message: str):
        raise LexiconError(self.line, message)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None, describe=None) -> str:
        """Consume the next token; `expected` is a literal, `describe` only names it in errors."""
        token = self.peek()
        if token is None:
            self.fail(f"unexpected end of category expression, expected {describe or expected or 'more input'}")
        if expected is not None and token != expected:
            self.fail(f"expected '{expected}' but found '{token}'")
        self.pos += 1
        return token

    def done(self):
        if self.peek() is not None:
            self.fail(f"unexpected '{self.peek()}' after category expression")

    def cat(self, depth: int) -> Cat:
        part = self.take(describe="a part name")
        if not _NAME.fullmatch(part):
            self.fail(f"expected a part name but found '{part}'")
        if part not in self.parts:
            self.fail(f"unknown part '{part}'")
        feats = {}
        if self.peek() == "[":
            self.take("[")
            while True:
                name = self.take(describe="a feature name")
                self.take("=")
                value = self.take(describe="a feature value")
                if name not in self.features:
                    self.fail(f"unknown feature '{name}'")
                if value not in self.features[name]:
                    self.fail(f"unknown value '{value}' for feature '{name}'")
                if feats.setdefault(name, value) != value:
                    self.fail(f"feature '{name}' given twice")
                if self.peek() == ",":
                    self.take(",")
                    continue
                self.take("]")
                break
        subcat = Requirement()
        if self.peek() == "{":
            if depth >= MAX_NESTING:
                self.fail("requirements may only be nested one level deep")
            subcat = self.requirement(depth + 1)
        return Cat(part, feats, subcat)

    def argspec(self, depth: int) -> ArgSpec:
        cats = [self.cat(depth)]
        while self.peek() == "|":
            self.take("|")
            cats.append(self.cat(depth))
        return ArgSpec(tuple(cats))

    def requirement(self, depth: int) -> Requirement:
        self.take("{")
        specs = []
        if self.peek() != "}":
            specs.append(self.argspec(depth))
            while self.peek() == ",":
                self.take(",")
                specs.append(self.argspec(depth))
        self.take("}")
        if len(specs) > MAX_ARITY:
            self.fail(f"requirement of arity {len(specs)} exceeds the limit of {MAX_ARITY}")
        return Requirement(tuple(specs))


def load_lexicon(text) -> Lexicon:
    """Parse the lexicon format from a string or a readable text stream."""
    if hasattr(text, "read"):
        text = text.read()
    parts, features = [], {}
    entries, adjuncts, conjunctions = [], [], []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        keyword = line.split(None, 1)[0]

        if keyword == "part":
            for name in line.split()[1:]:
                if not _NAME.fullmatch(name):
                    raise LexiconError(number, f"malformed part name '{name}'")
                if name in parts:
                    raise LexiconError(number, f"duplicate part '{name}'")
                parts.append(name)

        elif keyword == "feature":
            match = _FEATURE.match(line)
            if not match:
                raise LexiconError(number, "malformed feature declaration")
            name = match.group(1)
            values = [v.strip() for v in match.group(2).split("|")]
            if any(not _NAME.fullmatch(v) for v in values):
                raise LexiconError(number, f"malformed values for feature '{name}'")
            if name in features:
                raise LexiconError(number, f"duplicate feature '{name}'")
            features[name] = tuple(values)

        elif keyword == "entry":
            match = _ENTRY.match(line)
            if not match:
                raise LexiconError(number, 'malformed entry, expected: entry "<phon>" : <category>')
            reader = _CatReader(match.group(2), number, parts, features)
            cat = reader.cat(0)
            reader.done()
            try:
                entry = LexEntry(match.group(1), cat)
            except ValueError as e:
                raise LexiconError(number, str(e)) from e
            entries.append((number, entry))

        elif keyword == "adjunct":
            match = _ADJUNCT.match(line)
            if not match:
                raise LexiconError(number, "malformed adjunct, expected: adjunct <Part> { <spec> }")
            head = match.group(1)
            if head not in parts:
                raise LexiconError(number, f"unknown part '{head}'")
            reader = _CatReader(match.group(2), number, parts, features)
            spec = reader.argspec(1)
            reader.done()
            adjuncts.append((head, spec))

        elif keyword == "conj":
            match = _CONJ.match(line)
            if not match or len(match.group(1).split()) != 1:
                raise LexiconError(number, 'malformed conjunction, expected: conj "<token>"')
            if CONJ_PART not in parts:
                raise LexiconError(number, f"conjunctions need the part '{CONJ_PART}' to be declared")
            conjunctions.append(match.group(1).lower())

        else:
            raise LexiconError(number, f"unknown directive '{keyword}'")

    for number, entry in entries:
        rules = sum(1 for head, _ in adjuncts if head == entry.cat.part)
        if len(entry.cat.subcat) + rules > MAX_ARITY:
            raise LexiconError(number, f"adjunct expansion exceeds the arity limit of {MAX_ARITY}")

    lex = Lexicon(
        parts=tuple(parts),
        features=tuple(features.items()),
        base_entries=tuple(entry for _, entry in entries),
        adjuncts=tuple(adjuncts),
        conjunctions=tuple(conjunctions),
    )
    logger.info(
        f"✅ Lexicon loaded: {len(lex.base_entries)} entries, "
        f"{len(lex.entries) - len(lex.base_entries) - len(conjunctions)} from adjunct rules"
    )
    return lex


def load_lexicon_file(path) -> Lexicon:
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise LexiconError(data.count(b"\n", 0, e.start) + 1, "not valid UTF-8") from e
    return load_lexicon(text)


def dump_lexicon(lex: Lexicon) -> str:
    """Serialize to the text format; the unexpanded entries are written."""
    lines = []
    if lex.parts:
        lines.append("part " + " ".join(lex.parts))
    for name, values in lex.features:
        lines.append(f"feature {name} = " + " | ".join(values))
    for conj in lex.conjunctions:
        lines.append(f'conj "{conj}"')
    for head, spec in lex.adjuncts:
        lines.append(f"adjunct {head} {{ {spec} }}")
    lines.extend(str(entry) for entry in lex.base_entries)
    return "\n".join(lines) + "\n" if lines else ""
