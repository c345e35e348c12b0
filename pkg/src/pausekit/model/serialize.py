"""JSON serialization for head parameters, toy corpora, and train configs.

Arrays are stored as {"shape": [...], "data": [...]} with row-major data;
Python's float repr round-trips doubles exactly, so saved parameters
reload bit-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..sequences import IPSeq
from .heads import HeadParams, LatentMatrix
from .toydata import PlantedConfig, ToyCorpus, ToyExample, make_planted_corpus
from .training import TrainConfig


def _array_to_json(a: np.ndarray) -> dict:
    return {"shape": list(a.shape), "data": [float(v) for v in a.ravel()]}


def _array_from_json(obj: dict) -> np.ndarray:
    return np.asarray(obj["data"], dtype=np.float64).reshape(obj["shape"])


def params_to_json_dict(params: HeadParams, vocab: tuple[str, ...]) -> dict:
    return {
        "vocab": list(vocab),
        "transcript_weights": _array_to_json(params.transcript_weights),
        "transcript_bias": _array_to_json(params.transcript_bias),
        "ip_weights": _array_to_json(params.ip_weights),
        "ip_bias": _array_to_json(params.ip_bias),
    }


def params_from_json_dict(obj: dict) -> tuple[HeadParams, tuple[str, ...]]:
    params = HeadParams(
        _array_from_json(obj["transcript_weights"]),
        _array_from_json(obj["transcript_bias"]),
        _array_from_json(obj["ip_weights"]),
        _array_from_json(obj["ip_bias"]),
    )
    return params, tuple(obj["vocab"])


def save_params(path: str | Path, params: HeadParams, vocab: tuple[str, ...]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(params_to_json_dict(params, vocab), f)
        f.write("\n")


def load_params(path: str | Path) -> tuple[HeadParams, tuple[str, ...]]:
    with open(path, encoding="utf-8") as f:
        return params_from_json_dict(json.load(f))


def corpus_to_json_dict(corpus: ToyCorpus) -> dict:
    return {
        "vocab": list(corpus.vocab),
        "examples": [
            {
                "utterance_id": ex.utterance_id,
                "latent": _array_to_json(ex.latent.values),
                "target_tokens": list(ex.target_tokens),
                "target_ip": list(ex.target_ip.codes),
                "ip_labels": list(ex.ip_labels.codes),
            }
            for ex in corpus.examples
        ],
    }


def corpus_from_json_dict(obj: dict) -> ToyCorpus:
    examples = tuple(
        ToyExample(
            e["utterance_id"],
            LatentMatrix(_array_from_json(e["latent"])),
            tuple(e["target_tokens"]),
            IPSeq(tuple(e["target_ip"])),
            IPSeq(tuple(e["ip_labels"])),
        )
        for e in obj["examples"]
    )
    return ToyCorpus(tuple(obj["vocab"]), examples)


def save_corpus(path: str | Path, corpus: ToyCorpus) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(corpus_to_json_dict(corpus), f)
        f.write("\n")


def load_corpus(path: str | Path) -> ToyCorpus:
    with open(path, encoding="utf-8") as f:
        return corpus_from_json_dict(json.load(f))


def load_train_setup(path: str | Path) -> tuple[ToyCorpus, ToyCorpus | None, TrainConfig]:
    """Read a train-toy config file.

    The file holds {"corpus": ..., "train": {TrainConfig fields}} where
    "corpus" is either {"path": "corpus.json"} or {"generate":
    {PlantedConfig fields}}. Generated corpora come with a held-out part;
    file-loaded corpora do not.
    """
    with open(path, encoding="utf-8") as f:
        obj = json.load(f)
    if not isinstance(obj, dict) or "corpus" not in obj:
        raise ValueError(f"{path}: config must be an object with a 'corpus' entry")
    source = obj["corpus"]
    if "path" in source:
        corpus_path = Path(path).parent / source["path"]
        train_corpus, heldout = load_corpus(corpus_path), None
    elif "generate" in source:
        train_corpus, heldout = make_planted_corpus(PlantedConfig(**source["generate"]))
    else:
        raise ValueError(f"{path}: 'corpus' needs either 'path' or 'generate'")
    cfg = TrainConfig(**obj.get("train", {}))
    return train_corpus, heldout, cfg
