# tests/conftest.py
import sys
from pathlib import Path

import pytest

# Add src directory to Python path
src_path = str(Path(__file__).parent.parent / "src")
if src_path not in sys.path:
    sys.path.insert(0, src_path)

from coordination.cli import read_corpus, tokenize  # noqa: E402
from coordination.config import BUNDLED_CORPUS, BUNDLED_LEXICON, ParserConfig  # noqa: E402
from coordination.lexicon import load_lexicon_file  # noqa: E402
from coordination.parser import parse  # noqa: E402


@pytest.fixture(scope="session")
def french():
    return load_lexicon_file(BUNDLED_LEXICON)


@pytest.fixture(scope="session")
def judgments():
    return read_corpus(BUNDLED_CORPUS.read_text(encoding="utf-8"))


@pytest.fixture
def parse_text(french):
    """Parse a raw sentence with the bundled lexicon."""

    def run(text, lex=None, rng=None, **settings):
        return parse(tokenize(text), lex or french, ParserConfig(**settings), rng=rng)

    return run
