"""The appropriateness rules, and a severity-stratified corpus split.

A detected pause is inappropriate (label 2) when it interrupts a word
unit, or when it runs past the long-pause threshold after a filler or a
repair attempt. Everything else between word units is appropriate
(label 1); words themselves carry label 0.
"""

from pausekit import (
    LabelingCriteria,
    ManifestRecord,
    PauseContext,
    PausePosition,
    build_ip_annotation,
    classify_pause,
    parse_tagged,
    stratified_split,
)

criteria = LabelingCriteria()  # long pause 3.0 s, detection floor 0.150 s

cases = [
    ("0.8 s inside a word unit", PauseContext(0.8, PausePosition.WITHIN_WORD_UNIT)),
    ("0.8 s between word units", PauseContext(0.8, PausePosition.BETWEEN_WORD_UNITS)),
    ("3.5 s after a filler", PauseContext(3.5, PausePosition.BETWEEN_WORD_UNITS, preceded_by_filler=True)),
    ("2.0 s after a filler", PauseContext(2.0, PausePosition.BETWEEN_WORD_UNITS, preceded_by_filler=True)),
    ("3.5 s after a repair attempt", PauseContext(3.5, PausePosition.BETWEEN_WORD_UNITS, follows_repair_attempt=True)),
]
for name, ctx in cases:
    print(f"  {name:32s} -> label {classify_pause(ctx, criteria)}")
print()

# labeling a whole utterance: one context per pause token, in order
t = parse_tagged("그러니까 <SIL> 학교에 <SIL> 갔어요")
contexts = [
    PauseContext(3.6, PausePosition.BETWEEN_WORD_UNITS, preceded_by_filler=True),
    PauseContext(0.6, PausePosition.BETWEEN_WORD_UNITS),
]
annotation = build_ip_annotation(t, contexts, criteria)
for tok, label in zip(t, annotation.labels):
    print(f"  {tok.surface:12s} {label}")
print()

# stratified split: each severity is apportioned separately, so rare
# strata still land in every set
records = [
    ManifestRecord(f"u{i:03d}", f"u{i:03d}.wav", "w1 <SIL> w2", (0, 1, 0), severity)
    for i, severity in enumerate(
        ["none"] * 8 + ["mild_moderate"] * 70 + ["severe"] * 22
    )
]
train, valid, test = stratified_split(records, (0.8, 0.1, 0.1), seed=7)
print(f"split of {len(records)} records: {len(train)}/{len(valid)}/{len(test)}")
for severity in ("none", "mild_moderate", "severe"):
    per_set = [sum(1 for r in part if r.severity == severity) for part in (train, valid, test)]
    print(f"  {severity:14s} {per_set}")
