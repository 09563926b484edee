# src/coordination/cli.py
"""
Command-line front end.

    parse  --lexicon FILE [--max-tuple N] [--all] [--root PART] "<sentence>"
    corpus --lexicon FILE [--max-tuple N] CORPUS

Exit status: 0 on success, 1 when a sentence has no analysis or a judgment
does not match, 2 on usage, configuration, lexicon or corpus errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, ValidationError

from .config import ParserConfig, load_config
from .errors import ConfigError, CoordinationError, CorpusError, UnknownTokenError
from .lexicon import Lexicon, load_lexicon_file
from .parser import ParseForest, TreeNode, parse

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_NO_PARSE, EXIT_ERROR = 0, 1, 2

_PUNCTUATION = ".!?;:\"«»()"


class Judgment(BaseModel):
    model_config = ConfigDict(frozen=True)

    expected: Literal["accept", "reject"]
    sentence: str
    source: int

    @property
    def accept(self) -> bool:
        return self.expected == "accept"


def tokenize(text: str) -> list:
    """Lowercase, split on whitespace, drop commas and terminal punctuation."""
    tokens = []
    for raw in text.lower().replace("’", "'").split():
        token = raw.replace(",", "").strip(_PUNCTUATION)
        if token:
            tokens.append(token)
    return tokens


def read_corpus(text: str) -> list:
    judgments = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        prefix, _, sentence = line.partition(" ")
        if prefix not in ("OK", "NO") or not sentence.strip():
            raise CorpusError(number, f"expected 'OK <sentence>' or 'NO <sentence>', got {line!r}")
        judgments.append(Judgment(
            expected="accept" if prefix == "OK" else "reject",
            sentence=sentence.strip(),
            source=number,
        ))
    return judgments


# ── Rendering ───────────────────────────────────────────────────────────


def render_tree(node: TreeNode, depth: int = 0) -> list:
    """One node per line, children indented two spaces, in span order."""
    edge = node.edge
    lines = [f"{'  ' * depth}{edge.label} {edge.residual} \"{' '.join(edge.phon)}\""]
    for child in sorted(node.children, key=lambda c: (c.edge.start, c.edge.end)):
        lines.extend(render_tree(child, depth + 1))
    return lines


def render_forest(forest: ParseForest, all_parses: bool = False) -> str:
    trees = forest.trees() if all_parses else [forest.first_tree(forest.roots[0])]
    return "\n\n".join("\n".join(render_tree(tree)) for tree in trees) + "\n"


# ── Commands ────────────────────────────────────────────────────────────


def _settings(args, config: ParserConfig) -> ParserConfig:
    """Command-line options over the file configuration, validated together."""
    update = {}
    if args.max_tuple is not None:
        update["max_tuple"] = args.max_tuple
    if getattr(args, "root", None):
        update["root"] = args.root
    try:
        return ParserConfig.model_validate({**config.model_dump(), **update})
    except ValidationError as e:
        raise ConfigError(f"invalid option: {e.errors()[0]['msg']}") from e


def read_corpus_file(path) -> list:
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise CorpusError(data.count(b"\n", 0, e.start) + 1, "not valid UTF-8") from e
    return read_corpus(text)


def cmd_parse(args, config: ParserConfig, out) -> int:
    config = _settings(args, config)
    lex = load_lexicon_file(args.lexicon)
    forest = parse(tokenize(args.sentence), lex, config)
    if not forest:
        out.write("no analysis\n")
        return EXIT_NO_PARSE
    out.write(render_forest(forest, all_parses=args.all))
    return EXIT_OK


def judge(judgment: Judgment, lex: Lexicon, config: ParserConfig) -> bool:
    """Whether the parser's verdict matches the judgment."""
    try:
        accepted = bool(parse(tokenize(judgment.sentence), lex, config))
    except UnknownTokenError as e:
        raise CorpusError(judgment.source, str(e)) from e
    return accepted == judgment.accept


def cmd_corpus(args, config: ParserConfig, out) -> int:
    config = _settings(args, config)
    lex = load_lexicon_file(args.lexicon)
    judgments = read_corpus_file(args.corpus)

    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        verdicts = list(pool.map(lambda j: judge(j, lex, config), judgments))

    failed = 0
    for judgment, matched in zip(judgments, verdicts):
        failed += not matched
        mark = "OK" if judgment.accept else "NO"
        out.write(f"{'PASS' if matched else 'FAIL'} {judgment.source:>4}  {mark} {judgment.sentence}\n")
    out.write(f"{len(judgments)} judgments, {len(judgments) - failed} passed, {failed} failed\n")
    logger.info(f"Corpus {args.corpus}: {len(judgments) - failed}/{len(judgments)} judgments matched")
    return EXIT_OK if failed == 0 else EXIT_NO_PARSE


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coordination", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--lexicon", required=True, help="lexicon file")
        p.add_argument("--max-tuple", type=int, default=None, help="longest conjunct tuple (default 3)")
        p.add_argument("--config", default=None, help="JSON configuration file")

    p_parse = sub.add_parser("parse", help="parse one sentence and print its analyses")
    common(p_parse)
    p_parse.add_argument("--all", action="store_true", help="print every analysis, not only the first")
    p_parse.add_argument("--root", default=None, help="part of a complete analysis (default S)")
    p_parse.add_argument("sentence")
    p_parse.set_defaults(handler=cmd_parse)

    p_corpus = sub.add_parser("corpus", help="check a judgment corpus")
    common(p_corpus)
    p_corpus.add_argument("corpus")
    p_corpus.set_defaults(handler=cmd_corpus)
    return parser


def main(argv: Optional[list] = None, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK

    try:
        config = load_config(args.config)
        # Configure logging
        logging.basicConfig(level=config.log_level)
        return args.handler(args, config, out)
    except (CoordinationError, OSError) as e:
        logger.error(f"❌ {e}")
        err.write(f"error: {e}\n")
        return EXIT_ERROR
