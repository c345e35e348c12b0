"""Pause-tagged transcripts: parsing, serialization, tag stripping.

A tagged transcript is a whitespace-separated token stream in which the
literal tag ``<SIL>`` marks a silent pause. Everything else is a word
token (for Korean, an eojeol: a whitespace-delimited word unit). The
representation is purely textual; pause durations live elsewhere.

Two consecutive pause tags describe one uninterrupted silence, so the
parser merges them and emits a :class:`PauseMergeWarning`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

from .errors import EmptyInputError, MalformedTagError

SIL_TAG = "<SIL>"


class TokenKind(Enum):
    WORD = "word"
    PAUSE = "pause"


class PauseMergeWarning(UserWarning):
    """Adjacent pause tags were merged into a single pause token."""


@dataclass(frozen=True, slots=True)
class Token:
    """One transcript token: a word or a pause.

    A pause token's surface is always ``<SIL>``. A word surface is
    non-empty, contains no whitespace, and does not embed the pause tag
    (embedding it would make serialization ambiguous).
    """

    kind: TokenKind
    surface: str

    def __post_init__(self) -> None:
        if self.kind is TokenKind.PAUSE:
            if self.surface != SIL_TAG:
                raise ValueError(f"pause token surface must be {SIL_TAG!r}")
            return
        if not self.surface or self.surface.split() != [self.surface]:
            raise ValueError("word surface must be non-empty without whitespace")
        if SIL_TAG in self.surface:
            raise MalformedTagError(
                f"word surface {self.surface!r} embeds the pause tag {SIL_TAG!r}"
            )

    @classmethod
    def word(cls, surface: str) -> "Token":
        return cls(TokenKind.WORD, surface)

    @classmethod
    def pause(cls) -> "Token":
        return cls(TokenKind.PAUSE, SIL_TAG)

    @property
    def is_pause(self) -> bool:
        return self.kind is TokenKind.PAUSE


@dataclass(frozen=True, slots=True)
class TaggedTranscript:
    """An ordered, non-empty token sequence with no adjacent pauses."""

    tokens: tuple[Token, ...]

    def __post_init__(self) -> None:
        if not self.tokens:
            raise ValueError("transcript needs at least one token")
        for a, b in zip(self.tokens, self.tokens[1:]):
            if a.is_pause and b.is_pause:
                raise ValueError("adjacent pause tokens are not allowed")

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    @property
    def pause_count(self) -> int:
        return sum(1 for t in self.tokens if t.is_pause)

    def words(self) -> list[str]:
        """Surfaces of the word tokens, in order."""
        return [t.surface for t in self.tokens if not t.is_pause]


def parse_tagged(text: str) -> TaggedTranscript:
    """Parse a whitespace-separated string into a tagged transcript.

    Items equal to ``<SIL>`` become pause tokens; every other item becomes
    a word token. Runs of adjacent pause tags collapse to a single pause
    and raise a :class:`PauseMergeWarning`.

    Raises:
        EmptyInputError: no tokens after whitespace normalization.
        MalformedTagError: an item embeds ``<SIL>`` as a proper substring.
    """
    items = text.split()
    if not items:
        raise EmptyInputError("transcript contains no tokens")
    tokens: list[Token] = []
    merged = 0
    for item in items:
        if item == SIL_TAG:
            if tokens and tokens[-1].is_pause:
                merged += 1
                continue
            tokens.append(Token.pause())
        else:
            if SIL_TAG in item:
                raise MalformedTagError(
                    f"token {item!r} embeds the pause tag {SIL_TAG!r}"
                )
            tokens.append(Token.word(item))
    if merged:
        warnings.warn(
            f"merged {merged} adjacent pause tag(s) into preceding pauses",
            PauseMergeWarning,
            stacklevel=2,
        )
    return TaggedTranscript(tuple(tokens))


def strip_pause_tags(t: TaggedTranscript) -> str:
    """Space-joined word surfaces with every pause tag removed.

    Empty string if the transcript is all pauses.
    """
    return " ".join(t.words())


def serialize(t: TaggedTranscript) -> str:
    """Space-joined surfaces including pause tags; inverse of parsing."""
    return " ".join(tok.surface for tok in t.tokens)
