"""Synthetic corpora with planted linear structure.

Each utterance's latent matrix encodes its own targets: row t is a
scaled concatenation of the one-hot token id and the one-hot
appropriateness label, plus Gaussian noise. A linear head can therefore
reach near-zero loss, which makes training behavior checkable. A
configurable fraction of utterances gets a run-length-collapsed label
sequence as the alignment target, exercising the length-mismatched case;
the full per-position labels are kept alongside for evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..sequences import IPSeq
from ..transcript import SIL_TAG
from .heads import N_IP_CLASSES, LatentMatrix


@dataclass(frozen=True, slots=True)
class ToyExample:
    utterance_id: str
    latent: LatentMatrix
    target_tokens: tuple[int, ...]
    target_ip: IPSeq  # alignment target; may be shorter than the utterance
    ip_labels: IPSeq  # full per-position labels, for evaluation

    def __post_init__(self) -> None:
        object.__setattr__(self, "target_tokens", tuple(int(t) for t in self.target_tokens))
        if len(self.target_tokens) != self.latent.n_positions:
            raise ValueError("one target token per latent row required")
        if len(self.ip_labels) != self.latent.n_positions:
            raise ValueError("one ip label per latent row required")
        if len(self.target_ip) == 0:
            raise ValueError("alignment target must be non-empty")


@dataclass(frozen=True, slots=True)
class ToyCorpus:
    vocab: tuple[str, ...]
    examples: tuple[ToyExample, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vocab", tuple(self.vocab))
        object.__setattr__(self, "examples", tuple(self.examples))
        if len(set(self.vocab)) != len(self.vocab) or len(self.vocab) < 2:
            raise ValueError("vocab must hold at least 2 distinct entries")
        if SIL_TAG not in self.vocab:
            raise ValueError(f"vocab must contain {SIL_TAG!r}")
        for ex in self.examples:
            if max(ex.target_tokens) >= len(self.vocab):
                raise ValueError(f"{ex.utterance_id}: token id outside the vocabulary")

    @property
    def hidden_size(self) -> int:
        return self.examples[0].latent.hidden_size


@dataclass(frozen=True, slots=True)
class PlantedConfig:
    """Knobs for corpus generation; defaults give an easily separable set."""

    n_train: int = 32
    n_heldout: int = 8
    vocab_size: int = 8
    min_len: int = 8
    max_len: int = 14
    pause_rate: float = 0.3
    inappropriate_rate: float = 0.5
    latent_scale: float = 110.0
    noise_scale: float = 0.5
    collapsed_fraction: float = 0.25
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_train < 1 or self.n_heldout < 0:
            raise ValueError("need at least one training utterance")
        if self.vocab_size < 2 or not 2 <= self.min_len <= self.max_len:
            raise ValueError("bad vocab_size or length range")
        if not (0 < self.pause_rate < 1 and 0 <= self.inappropriate_rate <= 1):
            raise ValueError("rates must be probabilities")
        if self.latent_scale <= 0 or self.noise_scale < 0:
            raise ValueError("bad scale parameters")
        if not 0 <= self.collapsed_fraction <= 1:
            raise ValueError("collapsed_fraction must be in [0, 1]")


def collapse_runs(codes: tuple[int, ...]) -> tuple[int, ...]:
    """Keep one code per maximal run of equal consecutive codes."""
    out = []
    for c in codes:
        if not out or out[-1] != c:
            out.append(c)
    return tuple(out)


def planted_vocab(vocab_size: int) -> tuple[str, ...]:
    return (SIL_TAG,) + tuple(f"w{i}" for i in range(1, vocab_size))


def make_planted_corpus(cfg: PlantedConfig = PlantedConfig()) -> tuple[ToyCorpus, ToyCorpus]:
    """Generate (training corpus, held-out corpus) from one seeded stream."""
    rng = np.random.default_rng(cfg.seed)
    vocab = planted_vocab(cfg.vocab_size)
    train = tuple(
        _planted_example(rng, cfg, vocab, f"toy-{i:04d}") for i in range(cfg.n_train)
    )
    heldout = tuple(
        _planted_example(rng, cfg, vocab, f"toy-held-{i:04d}") for i in range(cfg.n_heldout)
    )
    return ToyCorpus(vocab, train), ToyCorpus(vocab, heldout)


def _planted_example(
    rng: np.random.Generator, cfg: PlantedConfig, vocab: tuple[str, ...], utterance_id: str
) -> ToyExample:
    n = int(rng.integers(cfg.min_len, cfg.max_len + 1))
    while True:
        tokens = []
        for _ in range(n):
            # No adjacent pauses; pause tag is vocab entry 0.
            if (not tokens or tokens[-1] != 0) and rng.random() < cfg.pause_rate:
                tokens.append(0)
            else:
                tokens.append(int(rng.integers(1, len(vocab))))
        if 0 < tokens.count(0) < n:
            break
    labels = tuple(
        (2 if rng.random() < cfg.inappropriate_rate else 1) if t == 0 else 0
        for t in tokens
    )
    d = len(vocab) + N_IP_CLASSES
    z = rng.normal(0.0, cfg.noise_scale, size=(n, d))
    for i, (t, lab) in enumerate(zip(tokens, labels)):
        z[i, t] += cfg.latent_scale
        z[i, len(vocab) + lab] += cfg.latent_scale
    full = IPSeq(labels)
    target_ip = full
    if rng.random() < cfg.collapsed_fraction:
        collapsed = collapse_runs(labels)
        if len(collapsed) > 1:
            target_ip = IPSeq(collapsed)
    return ToyExample(utterance_id, LatentMatrix(z), tuple(tokens), target_ip, full)
