"""Minibatch training of the two heads with a decoupled-decay optimizer.

Parameters start at zero, the learning rate decays linearly to zero over
the run, and the recorded loss trace holds the full-corpus mean loss
before training and after every step, so a zero learning rate yields a
constant trace and fixed seeds yield bit-identical runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyCorpusError
from ..metrics import EditCounts, edit_counts
from ..sequences import predicted_ip_seq, to_pause_seq
from ..transcript import SIL_TAG
from .heads import HeadParams, decode_predictions, forward_heads
from .loss import combined_loss
from .toydata import ToyCorpus


@dataclass(frozen=True, slots=True)
class TrainConfig:
    learning_rate: float = 5e-4
    batch_size: int = 8
    steps: int = 200
    gamma: float = 1.0
    seed: int = 0
    weight_decay: float = 0.01
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    ce_weight: float = 1.0
    dtw_weight: float = 1.0

    def __post_init__(self) -> None:
        # Zero learning rate is allowed: it must produce a frozen trace.
        if self.learning_rate < 0 or self.weight_decay < 0:
            raise ValueError("learning_rate and weight_decay must be >= 0")
        if self.batch_size < 1 or self.steps < 1:
            raise ValueError("batch_size and steps must be positive")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive for training")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1) or self.eps <= 0:
            raise ValueError("bad optimizer constants")
        if self.ce_weight < 0 or self.dtw_weight < 0:
            raise ValueError("loss weights must be >= 0")


@dataclass(frozen=True, slots=True)
class TrainResult:
    params: HeadParams
    loss_trace: tuple[float, ...]  # length steps + 1; entry 0 is pre-training


class _AdamW:
    """Adaptive-moment step with weight decay applied to the parameter itself."""

    def __init__(self, shapes: list[tuple[int, ...]], cfg: TrainConfig):
        self.cfg = cfg
        self.m = [np.zeros(s) for s in shapes]
        self.v = [np.zeros(s) for s in shapes]
        self.t = 0

    def step(self, params: list[np.ndarray], grads: list[np.ndarray], lr: float) -> None:
        cfg = self.cfg
        self.t += 1
        bc1 = 1.0 - cfg.beta1**self.t
        bc2 = 1.0 - cfg.beta2**self.t
        for p, g, m, v in zip(params, grads, self.m, self.v):
            m *= cfg.beta1
            m += (1.0 - cfg.beta1) * g
            v *= cfg.beta2
            v += (1.0 - cfg.beta2) * g * g
            p -= lr * ((m / bc1) / (np.sqrt(v / bc2) + cfg.eps) + cfg.weight_decay * p)


def _example_loss_and_grads(example, arrays, cfg):
    w_t, b_t, w_i, b_i = arrays
    z = example.latent.values
    res = combined_loss(
        z @ w_t + b_t,
        example.target_tokens,
        z @ w_i + b_i,
        example.target_ip,
        gamma=cfg.gamma,
        ce_weight=cfg.ce_weight,
        dtw_weight=cfg.dtw_weight,
    )
    grads = (
        z.T @ res.grad_transcript_logits,
        res.grad_transcript_logits.sum(axis=0),
        z.T @ res.grad_ip_logits,
        res.grad_ip_logits.sum(axis=0),
    )
    return res.loss, grads


def corpus_loss(corpus: ToyCorpus, params: HeadParams, cfg: TrainConfig) -> float:
    """Mean combined loss over every corpus example."""
    arrays = (params.transcript_weights, params.transcript_bias,
              params.ip_weights, params.ip_bias)
    total = 0.0
    for ex in corpus.examples:
        total += _example_loss_and_grads(ex, arrays, cfg)[0]
    return total / len(corpus.examples)


def train_toy(corpus: ToyCorpus, cfg: TrainConfig = TrainConfig()) -> TrainResult:
    """Train both heads from zero initialization on a toy corpus.

    Each step averages gradients over a without-replacement minibatch
    (reshuffling per epoch) and applies one optimizer step at the
    linearly decayed rate lr * (1 - t / steps).

    Raises:
        EmptyCorpusError: corpus has no examples.
    """
    if not corpus.examples:
        raise EmptyCorpusError("cannot train on an empty corpus")
    d = corpus.hidden_size
    n_vocab = len(corpus.vocab)
    arrays = [
        np.zeros((d, n_vocab)),
        np.zeros(n_vocab),
        np.zeros((d, 3)),
        np.zeros(3),
    ]
    optimizer = _AdamW([a.shape for a in arrays], cfg)
    rng = np.random.default_rng(cfg.seed)
    n = len(corpus.examples)
    order: list[int] = []

    def snapshot() -> HeadParams:
        return HeadParams(*(a.copy() for a in arrays))

    trace = [corpus_loss(corpus, snapshot(), cfg)]
    for t in range(cfg.steps):
        batch = []
        while len(batch) < cfg.batch_size:
            if not order:
                order = list(rng.permutation(n))
            batch.append(order.pop())
        grads = [np.zeros_like(a) for a in arrays]
        for idx in batch:
            _, g = _example_loss_and_grads(corpus.examples[idx], arrays, cfg)
            for acc, part in zip(grads, g):
                acc += part
        for acc in grads:
            acc /= len(batch)
        lr_t = cfg.learning_rate * (1.0 - t / cfg.steps)
        optimizer.step(arrays, grads, lr_t)
        trace.append(corpus_loss(corpus, snapshot(), cfg))
    return TrainResult(snapshot(), tuple(trace))


@dataclass(frozen=True, slots=True)
class ToyEvaluation:
    pause_counts: EditCounts
    ip_counts: EditCounts
    coerced_pauses: int
    forced_words: int

    @property
    def pauer(self) -> float:
        return self.pause_counts.error_rate

    @property
    def iper(self) -> float:
        return self.ip_counts.error_rate


def evaluate_toy(corpus: ToyCorpus, params: HeadParams) -> ToyEvaluation:
    """Decode every example and pool pause/appropriateness edit counts.

    The reference sequences come from the planted targets; the predicted
    ones go through the same decode-and-reconcile path a real scoring
    run uses.

    Raises:
        EmptyCorpusError: corpus has no examples.
    """
    if not corpus.examples:
        raise EmptyCorpusError("cannot evaluate an empty corpus")
    pause_total = EditCounts()
    ip_total = EditCounts()
    coerced = forced = 0
    sil_id = corpus.vocab.index(SIL_TAG)
    for ex in corpus.examples:
        tl, il = forward_heads(ex.latent, params)
        hyp_t, head_labels = decode_predictions(tl, il, corpus.vocab)
        reconciled = predicted_ip_seq(hyp_t, head_labels)
        ref_bits = tuple(1 if t == sil_id else 0 for t in ex.target_tokens)
        pause_total = pause_total + edit_counts(ref_bits, to_pause_seq(hyp_t).bits)
        ip_total = ip_total + edit_counts(ex.ip_labels.codes, reconciled.seq.codes)
        coerced += reconciled.coerced_pauses
        forced += reconciled.forced_words
    return ToyEvaluation(pause_total, ip_total, coerced, forced)
