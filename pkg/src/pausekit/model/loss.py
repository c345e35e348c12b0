"""Joint training objective: token cross-entropy plus soft-DTW.

The transcript head pays mean per-position softmax cross-entropy against
target token ids. The appropriateness head pays a soft-DTW alignment
cost between its per-position softmax distributions and the one-hot rows
of the target label sequence, which may have a different length; that is
the point of using an alignment loss there. Both terms carry unit
weights by default and the gradient with respect to both logit matrices
is analytic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import EmptyTargetError, ShapeMismatchError
from ..sequences import IPSeq
from .heads import N_IP_CLASSES
from .softdtw import soft_dtw


def softmax_rows(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


@dataclass(frozen=True, slots=True)
class CombinedLossResult:
    loss: float
    ce_term: float
    dtw_term: float
    grad_transcript_logits: np.ndarray
    grad_ip_logits: np.ndarray


def combined_loss(
    transcript_logits,
    target_tokens: Sequence[int],
    ip_logits,
    target_ip: IPSeq | Sequence[int],
    gamma: float = 1.0,
    ce_weight: float = 1.0,
    dtw_weight: float = 1.0,
) -> CombinedLossResult:
    """Loss value and gradients w.r.t. both logit matrices.

    The cross-entropy term averages over the T positions; the soft-DTW
    term is left unnormalized and runs over the T x T' matrix of squared
    Euclidean distances between predicted ip distributions and one-hot
    target rows. Gradients chain the soft-DTW cell gradient through the
    cost construction and the softmax.

    Raises:
        ShapeMismatchError: inconsistent logit/target shapes.
        EmptyTargetError: no target tokens or no target labels.
    """
    tl = np.asarray(transcript_logits, dtype=np.float64)
    il = np.asarray(ip_logits, dtype=np.float64)
    if tl.ndim != 2:
        raise ShapeMismatchError("transcript logits must be 2-D")
    n_pos, n_vocab = tl.shape
    if n_pos == 0 or n_vocab < 2:
        raise ShapeMismatchError("need at least one position and two vocabulary entries")
    if il.shape != (n_pos, N_IP_CLASSES):
        raise ShapeMismatchError(
            f"ip logits must be {n_pos} x {N_IP_CLASSES}, got {il.shape}"
        )
    targets = np.asarray(target_tokens, dtype=np.int64)
    if targets.shape != (n_pos,):
        raise ShapeMismatchError(
            f"need {n_pos} target tokens, got shape {targets.shape}"
        )
    if targets.size == 0:
        raise EmptyTargetError("no target tokens")
    if targets.min() < 0 or targets.max() >= n_vocab:
        raise ValueError("target token id outside the vocabulary")
    codes = tuple(target_ip.codes) if isinstance(target_ip, IPSeq) else tuple(int(c) for c in target_ip)
    if not codes:
        raise EmptyTargetError("no target ip labels")
    if any(c not in (0, 1, 2) for c in codes):
        raise ValueError("target ip labels must be 0, 1, or 2")

    # Token term: mean softmax cross-entropy.
    shifted = tl - tl.max(axis=1, keepdims=True)
    log_z = np.log(np.exp(shifted).sum(axis=1))
    rows = np.arange(n_pos)
    ce = float(np.mean(log_z - shifted[rows, targets]))
    probs_t = softmax_rows(tl)
    probs_t[rows, targets] -= 1.0
    grad_tl = (ce_weight / n_pos) * probs_t

    # Alignment term over squared distances to one-hot target rows.
    p = softmax_rows(il)
    g = np.eye(N_IP_CLASSES)[list(codes)]
    diff = p[:, None, :] - g[None, :, :]
    cost = np.einsum("ijk,ijk->ij", diff, diff)
    res = soft_dtw(cost, gamma)
    e = res.grad_cost
    du_dp = 2.0 * (p * e.sum(axis=1, keepdims=True) - e @ g)
    grad_il = dtw_weight * p * (du_dp - (du_dp * p).sum(axis=1, keepdims=True))

    loss = ce_weight * ce + dtw_weight * res.value
    return CombinedLossResult(loss, ce, res.value, grad_tl, grad_il)
