"""Edit-distance error rates over words, characters, and pause sequences.

One Levenshtein dynamic program backs all four rates. Corpus-level
numbers pool substitution/deletion/insertion counts and reference
lengths across utterances before dividing; they are not averages of
per-utterance rates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyReferenceError, IdMismatchError
from .labeling import SEVERITIES, ManifestRecord
from .sequences import IPSeq, PauseSeq, predicted_ip_seq, to_ip_seq, to_pause_seq
from .transcript import TaggedTranscript, strip_pause_tags


@dataclass(frozen=True, slots=True)
class EditCounts:
    """Alignment error counts against a reference of ``ref_len`` symbols."""

    substitutions: int = 0
    deletions: int = 0
    insertions: int = 0
    ref_len: int = 0

    def __post_init__(self) -> None:
        if min(self.substitutions, self.deletions, self.insertions, self.ref_len) < 0:
            raise ValueError("counts must be non-negative")
        if self.substitutions + self.deletions > self.ref_len:
            raise ValueError("substitutions + deletions cannot exceed ref_len")

    def __add__(self, other: "EditCounts") -> "EditCounts":
        return EditCounts(
            self.substitutions + other.substitutions,
            self.deletions + other.deletions,
            self.insertions + other.insertions,
            self.ref_len + other.ref_len,
        )

    @property
    def total(self) -> int:
        return self.substitutions + self.deletions + self.insertions

    @property
    def error_rate(self) -> float:
        """(S + D + I) / ref_len; may exceed 1 and is never clipped.

        Raises:
            EmptyReferenceError: ref_len is zero, the rate is undefined.
        """
        if self.ref_len == 0:
            raise EmptyReferenceError("error rate undefined for an empty reference")
        return self.total / self.ref_len


def edit_counts(ref: Sequence, hyp: Sequence) -> EditCounts:
    """Minimal unit-cost alignment counts between two symbol sequences.

    The distance is the usual Levenshtein minimum; the per-class split
    comes from one backtrace with a fixed tie order (substitution, then
    deletion, then insertion), so counts are deterministic even when
    several alignments are optimal. Empty references are legal here
    (counts are still well defined); only the rate is not.
    """
    n, m = len(ref), len(hyp)
    rows = [list(range(m + 1))]
    for i in range(1, n + 1):
        prev = rows[-1]
        cur = [i] + [0] * m
        ri = ref[i - 1]
        for j in range(1, m + 1):
            best = prev[j - 1] + (ri != hyp[j - 1])
            up = prev[j] + 1
            if up < best:
                best = up
            left = cur[j - 1] + 1
            if left < best:
                best = left
            cur[j] = best
        rows.append(cur)

    i, j = n, m
    subs = dels = ins = 0
    while i > 0 or j > 0:
        here = rows[i][j]
        if i and j and rows[i - 1][j - 1] + (ref[i - 1] != hyp[j - 1]) == here:
            subs += ref[i - 1] != hyp[j - 1]
            i -= 1
            j -= 1
        elif i and rows[i - 1][j] + 1 == here:
            dels += 1
            i -= 1
        else:
            ins += 1
            j -= 1
    return EditCounts(subs, dels, ins, n)


def _require_ref(symbols: Sequence, what: str) -> None:
    if len(symbols) == 0:
        raise EmptyReferenceError(f"reference has no {what}")


def wer(ref_t: TaggedTranscript, hyp_t: TaggedTranscript) -> float:
    """Word error rate over tag-stripped transcripts."""
    ref_words = strip_pause_tags(ref_t).split()
    _require_ref(ref_words, "words")
    return edit_counts(ref_words, strip_pause_tags(hyp_t).split()).error_rate


def cer(ref_t: TaggedTranscript, hyp_t: TaggedTranscript) -> float:
    """Character error rate over tag-stripped, whitespace-removed text."""
    ref_chars = "".join(strip_pause_tags(ref_t).split())
    _require_ref(ref_chars, "characters")
    hyp_chars = "".join(strip_pause_tags(hyp_t).split())
    return edit_counts(ref_chars, hyp_chars).error_rate


def pauer(ref: PauseSeq, hyp: PauseSeq) -> float:
    """Edit-distance error rate over binary pause-position sequences."""
    _require_ref(ref.bits, "tokens")
    return edit_counts(ref.bits, hyp.bits).error_rate


def iper(ref: IPSeq, hyp: IPSeq) -> float:
    """Edit-distance error rate over ternary appropriateness sequences."""
    _require_ref(ref.codes, "tokens")
    return edit_counts(ref.codes, hyp.codes).error_rate


@dataclass(frozen=True, slots=True)
class Hypothesis:
    """A system output for one utterance: transcript plus per-token head labels."""

    utterance_id: str
    transcript: TaggedTranscript
    head_labels: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class MetricBlock:
    """Pooled counts for one group of utterances, one EditCounts per rate."""

    wer: EditCounts = EditCounts()
    cer: EditCounts = EditCounts()
    pauer: EditCounts = EditCounts()
    iper: EditCounts = EditCounts()
    n_utterances: int = 0

    def __add__(self, other: "MetricBlock") -> "MetricBlock":
        return MetricBlock(
            self.wer + other.wer,
            self.cer + other.cer,
            self.pauer + other.pauer,
            self.iper + other.iper,
            self.n_utterances + other.n_utterances,
        )

    def rate(self, name: str) -> float | None:
        """Pooled rate for ``name``; None when the pooled reference is empty."""
        counts: EditCounts = getattr(self, name)
        if counts.ref_len == 0:
            return None
        return counts.error_rate


@dataclass(frozen=True, slots=True)
class CorpusReport:
    overall: MetricBlock
    per_severity: dict[str, MetricBlock]
    ip_coerced_pauses: int
    ip_forced_words: int


def _pair_block(rec: ManifestRecord, hyp: Hypothesis) -> tuple[MetricBlock, int, int]:
    ref_ann = rec.annotation()
    ref_ann.check()
    ref_t = ref_ann.transcript
    hyp_t = hyp.transcript

    ref_words = strip_pause_tags(ref_t).split()
    hyp_words = strip_pause_tags(hyp_t).split()
    ref_chars = "".join(ref_words)
    hyp_chars = "".join(hyp_words)
    reconciled = predicted_ip_seq(hyp_t, hyp.head_labels)
    block = MetricBlock(
        wer=edit_counts(ref_words, hyp_words),
        cer=edit_counts(ref_chars, hyp_chars),
        pauer=edit_counts(to_pause_seq(ref_t).bits, to_pause_seq(hyp_t).bits),
        iper=edit_counts(to_ip_seq(ref_ann).codes, reconciled.seq.codes),
        n_utterances=1,
    )
    return block, reconciled.coerced_pauses, reconciled.forced_words


def pair_utterances(
    refs: list[ManifestRecord], hyps: list[Hypothesis]
) -> list[tuple[ManifestRecord, Hypothesis]]:
    """Match references to hypotheses by utterance id.

    Raises:
        IdMismatchError: id sets differ, contain duplicates, or are empty.
    """
    ref_ids = [r.utterance_id for r in refs]
    hyp_by_id = {h.utterance_id: h for h in hyps}
    if len(set(ref_ids)) != len(ref_ids):
        raise IdMismatchError("duplicate utterance ids among references")
    if len(hyp_by_id) != len(hyps):
        raise IdMismatchError("duplicate utterance ids among hypotheses")
    if set(ref_ids) != set(hyp_by_id):
        missing = sorted(set(ref_ids) - set(hyp_by_id))[:3]
        extra = sorted(set(hyp_by_id) - set(ref_ids))[:3]
        raise IdMismatchError(
            f"reference/hypothesis ids differ (missing e.g. {missing}, unexpected e.g. {extra})"
        )
    if not refs:
        raise IdMismatchError("no utterances to score")
    return [(rec, hyp_by_id[rec.utterance_id]) for rec in refs]


def score_pairs(
    pairs: list[tuple[ManifestRecord, Hypothesis]]
) -> tuple[MetricBlock, dict[str, MetricBlock], int, int]:
    """Pool counts over already-matched pairs.

    Returns (overall block, per-severity blocks, coerced pauses, forced
    words). Results from disjoint chunks combine by adding the blocks
    and counters, so chunks may be scored in parallel.
    """
    overall = MetricBlock()
    per_severity: dict[str, MetricBlock] = {}
    coerced = forced = 0
    for rec, hyp in pairs:
        block, c, f = _pair_block(rec, hyp)
        coerced += c
        forced += f
        overall = overall + block
        per_severity[rec.severity] = per_severity.get(rec.severity, MetricBlock()) + block
    return overall, per_severity, coerced, forced


def assemble_report(
    parts: list[tuple[MetricBlock, dict[str, MetricBlock], int, int]]
) -> CorpusReport:
    """Combine score_pairs results into one report with ordered strata."""
    overall = MetricBlock()
    per_severity: dict[str, MetricBlock] = {}
    coerced = forced = 0
    for block, by_sev, c, f in parts:
        overall = overall + block
        coerced += c
        forced += f
        for sev, b in by_sev.items():
            per_severity[sev] = per_severity.get(sev, MetricBlock()) + b
    ordered = {s: per_severity[s] for s in SEVERITIES if s in per_severity}
    ordered.update({s: b for s, b in sorted(per_severity.items()) if s not in ordered})
    return CorpusReport(overall, ordered, coerced, forced)


def score_corpus(refs: list[ManifestRecord], hyps: list[Hypothesis]) -> CorpusReport:
    """Pool per-utterance edit counts into corpus rates, overall and by severity.

    References and hypotheses are matched by utterance id and must cover
    exactly the same ids, each side free of duplicates. Rates divide
    pooled counts by pooled reference lengths; they are not averages of
    per-utterance rates.

    Raises:
        IdMismatchError: id sets differ or contain duplicates.
    """
    return assemble_report([score_pairs(pair_utterances(refs, hyps))])
