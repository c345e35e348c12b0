"""Rule-based appropriateness labeling and the corpus manifest.

Pauses get label 1 (appropriate) or 2 (inappropriate) from a small
deterministic rule set over annotator-supplied context: a pause inside a
word unit is always inappropriate; a pause after a filler or a repair
attempt is inappropriate only when it is excessively long. Words get 0.

The manifest is JSONL, one utterance per line, with keys exactly
``utterance_id``, ``audio_path``, ``transcript``, ``ip_labels``,
``severity``.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .errors import (
    ContextCountMismatchError,
    EmptyManifestError,
    InvalidContextError,
    InvariantViolationError,
    ManifestFormatError,
    PausekitError,
)
from .transcript import TaggedTranscript, parse_tagged

NON_PAUSE = 0
APPROPRIATE = 1
INAPPROPRIATE = 2

SEVERITIES = ("none", "mild_moderate", "severe")

_MANIFEST_KEYS = ("utterance_id", "audio_path", "transcript", "ip_labels", "severity")


class PausePosition(Enum):
    WITHIN_WORD_UNIT = "within_word_unit"
    BETWEEN_WORD_UNITS = "between_word_units"


@dataclass(frozen=True, slots=True)
class PauseContext:
    """Annotator-supplied facts about one pause.

    The booleans are judgments (was the pause preceded by a filler
    vocalization, does it follow an attempt to repair a mispronounced
    word), not acoustic measurements; the rule engine only makes the
    resulting label reproducible.
    """

    duration_s: float
    position: PausePosition
    preceded_by_filler: bool = False
    follows_repair_attempt: bool = False

    def __post_init__(self) -> None:
        if not (isinstance(self.position, PausePosition)):
            raise ValueError("position must be a PausePosition")
        if not (math.isfinite(self.duration_s) and self.duration_s >= 0):
            raise ValueError("duration_s must be finite and non-negative")


@dataclass(frozen=True, slots=True)
class LabelingCriteria:
    """Duration thresholds for the rule engine."""

    long_pause_s: float = 3.0
    min_pause_s: float = 0.150

    def __post_init__(self) -> None:
        if not self.long_pause_s > self.min_pause_s > 0:
            raise ValueError("need long_pause_s > min_pause_s > 0")


@dataclass(frozen=True, slots=True)
class IPAnnotation:
    """Per-token labels in {0,1,2} attached to a transcript.

    Construction only checks label values; ``check`` enforces the
    alignment invariants (label 0 exactly at word positions, one label
    per token) so that inconsistent instances can still be represented
    for diagnostics before being rejected.
    """

    transcript: TaggedTranscript
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        labels = tuple(int(v) for v in self.labels)
        object.__setattr__(self, "labels", labels)
        if any(v not in (NON_PAUSE, APPROPRIATE, INAPPROPRIATE) for v in labels):
            raise ValueError("labels must be 0, 1, or 2")

    def check(self) -> None:
        """Raise InvariantViolationError unless labels align with tokens."""
        if len(self.labels) != len(self.transcript):
            raise InvariantViolationError(
                f"{len(self.labels)} labels for {len(self.transcript)} tokens"
            )
        for i, (token, label) in enumerate(zip(self.transcript, self.labels)):
            if token.is_pause and label == NON_PAUSE:
                raise InvariantViolationError(f"pause token {i} labeled 0")
            if not token.is_pause and label != NON_PAUSE:
                raise InvariantViolationError(f"word token {i} labeled {label}")


def classify_pause(ctx: PauseContext, criteria: LabelingCriteria = LabelingCriteria()) -> int:
    """Label one pause as appropriate (1) or inappropriate (2).

    Inappropriate when any of: the pause sits inside a word unit; it is
    preceded by a filler and longer than ``criteria.long_pause_s``; it
    follows a repair attempt and is longer than ``criteria.long_pause_s``.
    The duration comparison is strict.

    Raises:
        InvalidContextError: duration below ``criteria.min_pause_s``
            (such a span is not a pause at all).
    """
    if ctx.duration_s < criteria.min_pause_s:
        raise InvalidContextError(
            f"duration {ctx.duration_s}s is below the {criteria.min_pause_s}s minimum"
        )
    excessive = ctx.duration_s > criteria.long_pause_s
    if ctx.position is PausePosition.WITHIN_WORD_UNIT:
        return INAPPROPRIATE
    if ctx.preceded_by_filler and excessive:
        return INAPPROPRIATE
    if ctx.follows_repair_attempt and excessive:
        return INAPPROPRIATE
    return APPROPRIATE


def build_ip_annotation(
    t: TaggedTranscript,
    contexts: list[PauseContext],
    criteria: LabelingCriteria = LabelingCriteria(),
) -> IPAnnotation:
    """Label a transcript given one context per pause token, in order.

    Raises:
        ContextCountMismatchError: context count != pause count.
    """
    if len(contexts) != t.pause_count:
        raise ContextCountMismatchError(
            f"{len(contexts)} contexts for {t.pause_count} pause tokens"
        )
    labels = []
    it = iter(contexts)
    for token in t:
        labels.append(classify_pause(next(it), criteria) if token.is_pause else NON_PAUSE)
    return IPAnnotation(t, tuple(labels))


@dataclass(frozen=True, slots=True)
class ManifestRecord:
    """One corpus utterance.

    ``severity`` is kept as the raw string so that records with unknown
    values survive loading and show up in validation diagnostics.
    """

    utterance_id: str
    audio_path: str
    transcript: str
    ip_labels: tuple[int, ...]
    severity: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "ip_labels", tuple(int(v) for v in self.ip_labels))

    def annotation(self) -> IPAnnotation:
        """Parse the transcript and attach the stored labels (unchecked)."""
        return IPAnnotation(parse_tagged(self.transcript), self.ip_labels)

    def to_json_dict(self) -> dict:
        return {
            "utterance_id": self.utterance_id,
            "audio_path": self.audio_path,
            "transcript": self.transcript,
            "ip_labels": list(self.ip_labels),
            "severity": self.severity,
        }


def read_manifest(path: str | Path) -> list[ManifestRecord]:
    """Load a JSONL manifest.

    Structural problems (bad JSON, wrong keys, wrong field types) raise;
    semantic problems (label misalignment, unknown severity, missing
    audio) are left to ``validate_manifest``.

    Raises:
        ManifestFormatError: on the first malformed line.
    """
    records = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise ManifestFormatError(f"{path}:{lineno}: invalid JSON: {e}") from e
            if not isinstance(obj, dict) or sorted(obj) != sorted(_MANIFEST_KEYS):
                raise ManifestFormatError(
                    f"{path}:{lineno}: object must have exactly the keys {_MANIFEST_KEYS}"
                )
            if not all(isinstance(obj[k], str) for k in ("utterance_id", "audio_path", "transcript", "severity")):
                raise ManifestFormatError(f"{path}:{lineno}: id/path/transcript/severity must be strings")
            labels = obj["ip_labels"]
            if not (isinstance(labels, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in labels)):
                raise ManifestFormatError(f"{path}:{lineno}: ip_labels must be a list of integers")
            records.append(
                ManifestRecord(
                    obj["utterance_id"], obj["audio_path"], obj["transcript"],
                    tuple(labels), obj["severity"],
                )
            )
    return records


def write_manifest(path: str | Path, records: list[ManifestRecord]) -> None:
    """Write records as JSONL (UTF-8, one object per line, stable key order)."""
    with open(path, "w", encoding="utf-8") as f:
        for rec in records:
            f.write(json.dumps(rec.to_json_dict(), ensure_ascii=False) + "\n")


def validate_manifest(
    records: list[ManifestRecord], audio_root: str | Path | None = None
) -> list[str]:
    """Collect semantic diagnostics; an empty list means the manifest is valid.

    Checks per record: transcript parses, labels are in range and align
    with the parsed tokens, severity is a known value, audio_path is
    non-empty (and exists under ``audio_root`` when one is given). Also
    flags duplicate utterance ids, which would break id-based scoring.
    """
    diagnostics = []
    seen: dict[str, int] = {}
    for idx, rec in enumerate(records):
        where = f"record {idx} ({rec.utterance_id!r})"
        if rec.utterance_id in seen:
            diagnostics.append(f"{where}: duplicate utterance_id (first at record {seen[rec.utterance_id]})")
        else:
            seen[rec.utterance_id] = idx
        if rec.severity not in SEVERITIES:
            diagnostics.append(f"{where}: unknown severity {rec.severity!r}")
        if not rec.audio_path:
            diagnostics.append(f"{where}: empty audio_path")
        elif audio_root is not None and not os.path.exists(os.path.join(audio_root, rec.audio_path)):
            diagnostics.append(f"{where}: audio_path {rec.audio_path!r} not found under {audio_root}")
        try:
            annotation = rec.annotation()
        except PausekitError as e:
            diagnostics.append(f"{where}: transcript does not parse: {e}")
            continue
        except ValueError as e:
            diagnostics.append(f"{where}: bad labels: {e}")
            continue
        try:
            annotation.check()
        except InvariantViolationError as e:
            diagnostics.append(f"{where}: labels inconsistent with transcript: {e}")
    return diagnostics


def stratified_split(
    records: list[ManifestRecord],
    ratios: tuple[float, float, float],
    seed: int,
) -> tuple[list[ManifestRecord], list[ManifestRecord], list[ManifestRecord]]:
    """Severity-stratified train/valid/test split.

    Each severity stratum is shuffled and apportioned by largest
    remainder, so per-stratum counts are within one record of
    ``stratum_size * ratio``. Remainder ties go to the later set (test,
    then valid) to keep small strata from starving the evaluation sets.
    Within each output the original manifest order is preserved.

    Raises:
        EmptyManifestError: no records.
        ValueError: ratios not three positive numbers summing to 1.
    """
    if not records:
        raise EmptyManifestError("cannot split an empty manifest")
    if len(ratios) != 3 or any(r <= 0 for r in ratios) or abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError("ratios must be three positive numbers summing to 1")

    by_severity: dict[str, list[int]] = {}
    for idx, rec in enumerate(records):
        by_severity.setdefault(rec.severity, []).append(idx)
    # Fixed iteration order: known severities first, then any strays.
    ordered = [s for s in SEVERITIES if s in by_severity]
    ordered += sorted(s for s in by_severity if s not in SEVERITIES)

    rng = np.random.default_rng(seed)
    assigned: list[list[int]] = [[], [], []]
    for severity in ordered:
        indices = np.array(by_severity[severity])
        rng.shuffle(indices)
        counts = _largest_remainder(len(indices), ratios)
        offset = 0
        for set_idx, count in enumerate(counts):
            assigned[set_idx].extend(indices[offset : offset + count].tolist())
            offset += count
    return tuple([records[i] for i in sorted(part)] for part in assigned)  # type: ignore[return-value]


def _largest_remainder(n: int, ratios: tuple[float, float, float]) -> list[int]:
    quotas = [n * r for r in ratios]
    counts = [int(math.floor(q)) for q in quotas]
    leftover = n - sum(counts)
    # Highest fractional part first; ties favor the later set.
    order = sorted(range(3), key=lambda i: (quotas[i] - counts[i], i), reverse=True)
    for i in order[:leftover]:
        counts[i] += 1
    return counts


def load_criteria(path: str | Path) -> tuple[LabelingCriteria, dict[str, list[PauseContext]]]:
    """Read a criteria JSON file: thresholds plus per-utterance pause contexts.

    Expected shape::

        {"long_pause_s": 3.0, "min_pause_s": 0.15,
         "contexts": {"utt1": [{"duration_s": 0.4,
                                "position": "within_word_unit",
                                "preceded_by_filler": false,
                                "follows_repair_attempt": false}, ...]}}

    Threshold keys are optional and default to the standard values; the
    context lists must match each utterance's pause tokens in order.
    """
    with open(path, encoding="utf-8") as f:
        obj = json.load(f)
    if not isinstance(obj, dict):
        raise ValueError(f"{path}: criteria file must hold a JSON object")
    criteria = LabelingCriteria(
        long_pause_s=float(obj.get("long_pause_s", 3.0)),
        min_pause_s=float(obj.get("min_pause_s", 0.150)),
    )
    contexts: dict[str, list[PauseContext]] = {}
    for utt_id, items in obj.get("contexts", {}).items():
        parsed = []
        for item in items:
            parsed.append(
                PauseContext(
                    duration_s=float(item["duration_s"]),
                    position=PausePosition(item["position"]),
                    preceded_by_filler=bool(item.get("preceded_by_filler", False)),
                    follows_repair_attempt=bool(item.get("follows_repair_attempt", False)),
                )
            )
        contexts[utt_id] = parsed
    return criteria, contexts
