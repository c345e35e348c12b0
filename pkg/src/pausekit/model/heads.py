"""Two linear prediction heads over supplied latent matrices.

The encoder-decoder that would produce the latents is out of scope; a
latent matrix Z (one row per decoder position) is given, and two affine
heads map it to transcript-vocabulary logits and 3-way appropriateness
logits. Decoding turns argmax rows back into a tagged transcript plus
per-token head labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ShapeMismatchError
from ..transcript import SIL_TAG, TaggedTranscript, Token

N_IP_CLASSES = 3


def _as_finite(name: str, value, shape_len: int) -> np.ndarray:
    a = np.asarray(value, dtype=np.float64)
    if a.ndim != shape_len:
        raise ValueError(f"{name} must be {shape_len}-D")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} entries must be finite")
    return a


@dataclass(frozen=True, slots=True)
class LatentMatrix:
    """T x d matrix of decoder-position latent vectors."""

    values: np.ndarray

    def __post_init__(self) -> None:
        a = _as_finite("latent matrix", self.values, 2)
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError("latent matrix must be at least 1 x 1")
        object.__setattr__(self, "values", a)

    @property
    def n_positions(self) -> int:
        return self.values.shape[0]

    @property
    def hidden_size(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True, slots=True)
class HeadParams:
    """Affine parameters of the transcript head and the 3-way head."""

    transcript_weights: np.ndarray  # d x |V|
    transcript_bias: np.ndarray  # |V|
    ip_weights: np.ndarray  # d x 3
    ip_bias: np.ndarray  # 3

    def __post_init__(self) -> None:
        tw = _as_finite("transcript_weights", self.transcript_weights, 2)
        tb = _as_finite("transcript_bias", self.transcript_bias, 1)
        iw = _as_finite("ip_weights", self.ip_weights, 2)
        ib = _as_finite("ip_bias", self.ip_bias, 1)
        if tw.shape[1] < 2:
            raise ValueError("vocabulary size must be at least 2")
        if tb.shape[0] != tw.shape[1]:
            raise ValueError("transcript bias length must match vocabulary size")
        if iw.shape != (tw.shape[0], N_IP_CLASSES) or ib.shape != (N_IP_CLASSES,):
            raise ValueError("ip head must map the same hidden size to 3 classes")
        for name, a in (("transcript_weights", tw), ("transcript_bias", tb),
                        ("ip_weights", iw), ("ip_bias", ib)):
            object.__setattr__(self, name, a)

    @property
    def hidden_size(self) -> int:
        return self.transcript_weights.shape[0]

    @property
    def vocab_size(self) -> int:
        return self.transcript_weights.shape[1]

    @classmethod
    def zeros(cls, hidden_size: int, vocab_size: int) -> "HeadParams":
        return cls(
            np.zeros((hidden_size, vocab_size)),
            np.zeros(vocab_size),
            np.zeros((hidden_size, N_IP_CLASSES)),
            np.zeros(N_IP_CLASSES),
        )


def forward_heads(z: LatentMatrix, p: HeadParams) -> tuple[np.ndarray, np.ndarray]:
    """Apply both heads: (T x |V| transcript logits, T x 3 ip logits).

    Raises:
        ShapeMismatchError: latent width differs from the heads' input size.
    """
    if z.hidden_size != p.hidden_size:
        raise ShapeMismatchError(
            f"latents have width {z.hidden_size}, heads expect {p.hidden_size}"
        )
    zv = z.values
    return (
        zv @ p.transcript_weights + p.transcript_bias,
        zv @ p.ip_weights + p.ip_bias,
    )


def decode_predictions(
    transcript_logits, ip_logits, vocab: Sequence[str]
) -> tuple[TaggedTranscript, tuple[int, ...]]:
    """Greedy per-position decode of both heads.

    Row argmax (ties to the lowest index) picks a vocabulary entry per
    position; entries equal to the pause tag become Pause tokens and a
    run of consecutive pause positions collapses to a single Pause token
    keeping the first position's head label, since a transcript never
    holds adjacent pauses. Head labels are returned one per surviving
    token, ready for sequence reconciliation.
    """
    tl = np.asarray(transcript_logits, dtype=np.float64)
    il = np.asarray(ip_logits, dtype=np.float64)
    if tl.ndim != 2 or tl.shape[1] != len(vocab):
        raise ValueError("transcript logits width must equal the vocabulary size")
    if il.shape != (tl.shape[0], N_IP_CLASSES):
        raise ValueError("ip logits must be T x 3 for the same T")
    token_ids = np.argmax(tl, axis=1)
    head = np.argmax(il, axis=1)
    tokens: list[Token] = []
    labels: list[int] = []
    in_pause_run = False
    for tid, hl in zip(token_ids, head):
        if vocab[tid] == SIL_TAG:
            if not in_pause_run:
                tokens.append(Token.pause())
                labels.append(int(hl))
                in_pause_run = True
        else:
            tokens.append(Token.word(vocab[tid]))
            labels.append(int(hl))
            in_pause_run = False
    return TaggedTranscript(tuple(tokens)), tuple(labels)
