"""Word/phrase dictionary lookup for the speech modality.

The dictionary maps each non-neutral emotion to a set of lowercase words
and multi-word phrases, stored as XML. Classification is a longest-phrase,
case-insensitive match: the whole token text is tried first, then every
contiguous word run, longest first. Anything unmatched is Neutral.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from importlib import resources
from typing import Mapping, Optional

from ..errors import DuplicateWord, ParseError, ValidationError
from ..ingest.trace import SpeechToken
from ..model import Emotion, Modality
from .windows import ModalityPrediction

DICTIONARY_RESOURCE = "emotion_dictionary.xml"


@dataclass(frozen=True)
class EmotionDictionary:
    """Emotion -> set of lowercase words/phrases; no entry appears twice."""

    entries: Mapping[Emotion, frozenset[str]]

    def __post_init__(self):
        seen: dict[str, Emotion] = {}
        normalized = {}
        for emotion, words in self.entries.items():
            if emotion == Emotion.NEUTRAL:
                raise ValidationError("Neutral cannot carry dictionary words")
            cleaned = set()
            for word in words:
                w = " ".join(word.lower().split())
                if not w:
                    raise ValidationError("empty dictionary entry")
                if w in seen and seen[w] != emotion:
                    raise DuplicateWord(
                        f"{w!r} listed under both {seen[w].value} and {emotion.value}"
                    )
                seen[w] = emotion
                cleaned.add(w)
            normalized[emotion] = frozenset(cleaned)
        object.__setattr__(self, "entries", normalized)
        object.__setattr__(self, "_lookup", {w: e for e, ws in normalized.items() for w in ws})
        max_words = max((len(w.split()) for w in seen), default=1)
        object.__setattr__(self, "_max_words", max_words)

    def lookup(self, text: str) -> Optional[Emotion]:
        """Longest contiguous word-run match; None when nothing matches."""
        table = self._lookup
        text = " ".join(text.lower().split())
        hit = table.get(text)
        if hit is not None:
            return hit
        words = text.split()
        for length in range(min(self._max_words, len(words)), 0, -1):
            for start in range(0, len(words) - length + 1):
                hit = table.get(" ".join(words[start : start + length]))
                if hit is not None:
                    return hit
        return None

    def words_for(self, emotion: Emotion) -> frozenset[str]:
        return self.entries.get(emotion, frozenset())


def classify_speech(token: SpeechToken, dictionary: EmotionDictionary) -> ModalityPrediction:
    """One prediction per token; the window is the token's instant."""
    emotion = dictionary.lookup(token.text)
    if emotion is None:
        return ModalityPrediction(Modality.SPEECH, token.ts, token.ts, Emotion.NEUTRAL)
    return ModalityPrediction(Modality.SPEECH, token.ts, token.ts, emotion, "dictionary")


def parse_dictionary(text: str, path=None) -> EmotionDictionary:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise ParseError(f"bad XML: {exc}", path) from None
    if root.tag != "dictionary":
        raise ParseError(f"expected <dictionary> root, got <{root.tag}>", path)
    entries: dict[Emotion, set[str]] = {}
    for child in root:
        if child.tag != "emotion":
            raise ParseError(f"unexpected element <{child.tag}>", path)
        name = child.get("name")
        try:
            emotion = Emotion(name)
        except ValueError:
            raise ParseError(f"unknown emotion name {name!r}", path) from None
        if emotion == Emotion.NEUTRAL:
            raise ParseError("Neutral cannot carry dictionary words", path)
        if emotion in entries:
            raise ParseError(f"duplicate <emotion name={name!r}> element", path)
        words = set()
        for w in child:
            if w.tag != "word":
                raise ParseError(f"unexpected element <{w.tag}>", path)
            text_value = (w.text or "").strip()
            if not text_value:
                raise ParseError("empty <word> element", path)
            words.add(text_value)
        entries[emotion] = words
    try:
        return EmotionDictionary(entries)
    except DuplicateWord:
        raise
    except ValidationError as exc:
        raise ParseError(str(exc), path) from None


def load_dictionary(path) -> EmotionDictionary:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_dictionary(fh.read(), path=path)


def default_dictionary() -> EmotionDictionary:
    text = (
        resources.files("deskpulse.classify")
        .joinpath("data")
        .joinpath(DICTIONARY_RESOURCE)
        .read_text(encoding="utf-8")
    )
    return parse_dictionary(text, path=f"<default {DICTIONARY_RESOURCE}>")
