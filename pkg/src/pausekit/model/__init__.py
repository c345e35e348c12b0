"""Differentiable two-head prediction over supplied latent matrices."""

from .heads import (
    N_IP_CLASSES,
    HeadParams,
    LatentMatrix,
    decode_predictions,
    forward_heads,
)
from .loss import CombinedLossResult, combined_loss, softmax_rows
from .serialize import (
    load_corpus,
    load_params,
    load_train_setup,
    params_to_json_dict,
    save_corpus,
    save_params,
)
from .softdtw import SoftDtwResult, soft_dtw, soft_min
from .toydata import (
    PlantedConfig,
    ToyCorpus,
    ToyExample,
    collapse_runs,
    make_planted_corpus,
    planted_vocab,
)
from .training import (
    ToyEvaluation,
    TrainConfig,
    TrainResult,
    corpus_loss,
    evaluate_toy,
    train_toy,
)

__all__ = [
    "N_IP_CLASSES",
    "HeadParams",
    "LatentMatrix",
    "decode_predictions",
    "forward_heads",
    "CombinedLossResult",
    "combined_loss",
    "softmax_rows",
    "load_corpus",
    "load_params",
    "load_train_setup",
    "params_to_json_dict",
    "save_corpus",
    "save_params",
    "SoftDtwResult",
    "soft_dtw",
    "soft_min",
    "PlantedConfig",
    "ToyCorpus",
    "ToyExample",
    "collapse_runs",
    "make_planted_corpus",
    "planted_vocab",
    "ToyEvaluation",
    "TrainConfig",
    "TrainResult",
    "corpus_loss",
    "evaluate_toy",
    "train_toy",
]
