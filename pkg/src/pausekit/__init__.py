"""Pause and inappropriate-pause toolkit for disordered speech.

Pieces: pause-tagged transcript parsing, energy-based pause-interval
detection, a deterministic appropriateness rule engine with a JSONL
corpus manifest, per-token evaluation sequences, edit-distance error
rates (word, character, pause, appropriateness), and a desk-scale
differentiable two-head model trained with cross-entropy plus soft-DTW.
"""

from . import acoustics, errors, labeling, metrics, model, sequences, transcript
from .acoustics import (
    AudioSignal,
    PauseInterval,
    VadConfig,
    detect_pause_intervals,
    frame_rms,
    load_wav,
    save_wav,
)
from .errors import PausekitError
from .labeling import (
    IPAnnotation,
    LabelingCriteria,
    ManifestRecord,
    PauseContext,
    PausePosition,
    build_ip_annotation,
    classify_pause,
    read_manifest,
    stratified_split,
    validate_manifest,
    write_manifest,
)
from .metrics import EditCounts, Hypothesis, cer, edit_counts, iper, pauer, score_corpus, wer
from .model import (
    HeadParams,
    LatentMatrix,
    PlantedConfig,
    SoftDtwResult,
    TrainConfig,
    combined_loss,
    decode_predictions,
    evaluate_toy,
    forward_heads,
    make_planted_corpus,
    soft_dtw,
    soft_min,
    train_toy,
)
from .sequences import IPSeq, PauseSeq, predicted_ip_seq, to_ip_seq, to_pause_seq
from .transcript import SIL_TAG, TaggedTranscript, Token, parse_tagged, serialize, strip_pause_tags

__version__ = "0.1.0"

__all__ = [
    "acoustics",
    "errors",
    "labeling",
    "metrics",
    "model",
    "sequences",
    "transcript",
    "AudioSignal",
    "PauseInterval",
    "VadConfig",
    "detect_pause_intervals",
    "frame_rms",
    "load_wav",
    "save_wav",
    "PausekitError",
    "IPAnnotation",
    "LabelingCriteria",
    "ManifestRecord",
    "PauseContext",
    "PausePosition",
    "build_ip_annotation",
    "classify_pause",
    "read_manifest",
    "stratified_split",
    "validate_manifest",
    "write_manifest",
    "EditCounts",
    "Hypothesis",
    "cer",
    "edit_counts",
    "iper",
    "pauer",
    "score_corpus",
    "wer",
    "HeadParams",
    "LatentMatrix",
    "PlantedConfig",
    "SoftDtwResult",
    "TrainConfig",
    "combined_loss",
    "decode_predictions",
    "evaluate_toy",
    "forward_heads",
    "make_planted_corpus",
    "soft_dtw",
    "soft_min",
    "train_toy",
    "IPSeq",
    "PauseSeq",
    "predicted_ip_seq",
    "to_ip_seq",
    "to_pause_seq",
    "SIL_TAG",
    "TaggedTranscript",
    "Token",
    "parse_tagged",
    "serialize",
    "strip_pause_tags",
    "__version__",
]
