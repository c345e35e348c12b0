"""Per-token evaluation sequences, independent of any recognizer.

A transcript maps to a binary sequence marking pause positions and, with
labels attached, to a ternary sequence distinguishing appropriate from
inappropriate pauses. These are the inputs to the edit-distance error
rates in ``metrics``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import LengthMismatchError
from .labeling import APPROPRIATE, INAPPROPRIATE, NON_PAUSE, IPAnnotation
from .transcript import TaggedTranscript


@dataclass(frozen=True, slots=True)
class PauseSeq:
    """One bit per token: 1 at pause positions."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        bits = tuple(int(b) for b in self.bits)
        object.__setattr__(self, "bits", bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")

    def __len__(self) -> int:
        return len(self.bits)


@dataclass(frozen=True, slots=True)
class IPSeq:
    """One code per token: 0 word, 1 appropriate pause, 2 inappropriate."""

    codes: tuple[int, ...]

    def __post_init__(self) -> None:
        codes = tuple(int(c) for c in self.codes)
        object.__setattr__(self, "codes", codes)
        if any(c not in (NON_PAUSE, APPROPRIATE, INAPPROPRIATE) for c in codes):
            raise ValueError("codes must be 0, 1, or 2")

    def __len__(self) -> int:
        return len(self.codes)

    @property
    def pause_positions(self) -> PauseSeq:
        return PauseSeq(tuple(1 if c != NON_PAUSE else 0 for c in self.codes))


def to_pause_seq(t: TaggedTranscript) -> PauseSeq:
    """Binary pause-position sequence of a transcript."""
    return PauseSeq(tuple(1 if tok.is_pause else 0 for tok in t))


def to_ip_seq(a: IPAnnotation) -> IPSeq:
    """Label sequence of a checked annotation.

    Raises:
        InvariantViolationError: labels inconsistent with the transcript.
    """
    a.check()
    return IPSeq(a.labels)


class ReconciledIPSeq(NamedTuple):
    seq: IPSeq
    coerced_pauses: int  # pause positions where the head said 0, rewritten to 1
    forced_words: int  # word positions where the head said 1 or 2, rewritten to 0


def predicted_ip_seq(t: TaggedTranscript, head_labels: Sequence[int]) -> ReconciledIPSeq:
    """Reconcile per-token head output with the transcript structure.

    The transcript decides where the pauses are; the head decides only
    what kind each pause is. Word positions are forced to 0 and a head
    label of 0 at a pause position is coerced to 1 (appropriate), since
    the pause demonstrably exists. Both rewrite counts are returned so
    callers can report head/transcript disagreement.

    Raises:
        LengthMismatchError: label count != token count.
    """
    if len(head_labels) != len(t):
        raise LengthMismatchError(
            f"{len(head_labels)} head labels for {len(t)} tokens"
        )
    codes = []
    coerced = forced = 0
    for token, label in zip(t, head_labels):
        label = int(label)
        if token.is_pause:
            if label == NON_PAUSE:
                coerced += 1
                label = APPROPRIATE
        elif label != NON_PAUSE:
            forced += 1
            label = NON_PAUSE
        codes.append(label)
    return ReconciledIPSeq(IPSeq(tuple(codes)), coerced, forced)
