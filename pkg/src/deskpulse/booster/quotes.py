"""Rotating quote widgets: inspirational and programmer-humor sets.

A rotator shows one quote at a time and re-rolls uniformly (seeded) every
``interval_seconds``; calls inside the interval return the current quote
unchanged, so polling clients see a stable quote between rotations.
"""

from __future__ import annotations

import random
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import NamedTuple, Optional

from ..errors import EmptySet, ParseError


class QuoteKind(str, Enum):
    INSPIRATIONAL = "inspirational"
    FUNNY = "funny"


class Quote(NamedTuple):
    text: str
    author: str


@dataclass(frozen=True)
class QuoteSet:
    kind: QuoteKind
    quotes: tuple[Quote, ...]

    def __post_init__(self):
        if not self.quotes:
            raise EmptySet(f"quote set {self.kind.value!r} is empty")


_DEFAULT_FILES = {
    QuoteKind.INSPIRATIONAL: "inspirational_quotes.xml",
    QuoteKind.FUNNY: "funny_quotes.xml",
}


def parse_quotes(text: str, kind: Optional[QuoteKind] = None, path=None) -> QuoteSet:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise ParseError(f"bad XML: {exc}", path) from None
    if root.tag != "quotes":
        raise ParseError(f"expected <quotes> root, got <{root.tag}>", path)
    try:
        file_kind = QuoteKind(root.get("kind", ""))
    except ValueError:
        raise ParseError(f"unknown quote kind {root.get('kind')!r}", path) from None
    if kind is not None and file_kind != kind:
        raise ParseError(
            f"expected kind {kind.value!r}, file says {file_kind.value!r}", path
        )
    quotes = []
    for child in root:
        if child.tag != "quote":
            raise ParseError(f"unexpected element <{child.tag}>", path)
        body = (child.text or "").strip()
        if not body:
            raise ParseError("empty <quote> element", path)
        quotes.append(Quote(text=body, author=child.get("author", "").strip()))
    return QuoteSet(kind=file_kind, quotes=tuple(quotes))


def load_quotes(path, kind: Optional[QuoteKind] = None) -> QuoteSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_quotes(fh.read(), kind=kind, path=path)


def default_quotes(kind: QuoteKind) -> QuoteSet:
    name = _DEFAULT_FILES[QuoteKind(kind)]
    text = (
        resources.files("deskpulse.booster")
        .joinpath("data")
        .joinpath(name)
        .read_text(encoding="utf-8")
    )
    return parse_quotes(text, kind=QuoteKind(kind), path=f"<default {name}>")


@dataclass
class QuoteRotator:
    quote_set: QuoteSet
    interval_seconds: float = 30.0
    seed: int = 0
    _rng: random.Random = field(init=False, repr=False)
    current_index: int = field(default=0, init=False)
    next_change_ms: Optional[int] = field(default=None, init=False)

    def __post_init__(self):
        self._rng = random.Random(self.seed)


def next_quote(rotator: QuoteRotator, now_ms: int) -> tuple[Quote, QuoteRotator]:
    """Current quote at ``now_ms``; re-rolls when the interval has elapsed."""
    if rotator.next_change_ms is None or now_ms >= rotator.next_change_ms:
        rotator.current_index = rotator._rng.randrange(len(rotator.quote_set.quotes))
        rotator.next_change_ms = now_ms + int(rotator.interval_seconds * 1000)
    return rotator.quote_set.quotes[rotator.current_index], rotator
