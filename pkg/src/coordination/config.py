# src/coordination/config.py
import json
import logging
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import ConfigError

logger = logging.getLogger(__name__)

CONFIG_PATH = Path(__file__).parent.parent.parent / "config.json"
BUNDLED_LEXICON = Path(__file__).parent.parent.parent / "data" / "french.lex"
BUNDLED_CORPUS = Path(__file__).parent.parent.parent / "data" / "judgments.txt"


class ParserConfig(BaseModel):
    """Runtime settings shared by the parser and the command line."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    max_tuple: int = Field(default=3, ge=1)
    max_edges: int = Field(default=100_000, ge=1)
    root: str = "S"
    workers: int = Field(default=1, ge=1)
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"

    @field_validator("log_level", mode="before")
    @classmethod
    def _upper_level(cls, value):
        return value.upper() if isinstance(value, str) else value


def load_config(path=None) -> ParserConfig:
    """Load configuration from JSON file."""
    explicit = path is not None
    path = Path(path) if path else CONFIG_PATH
    if not path.exists():
        if explicit:
            raise ConfigError(f"config file not found: {path}")
        return ParserConfig()
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
        return ParserConfig.model_validate(raw)
    except (json.JSONDecodeError, UnicodeDecodeError, ValidationError) as e:
        logger.error(f"❌ Invalid config {path}: {e}")
        raise ConfigError(f"invalid config {path}: {e}") from e
