"""Edit-distance error rates, and why corpus rates pool counts.

Four rates share one alignment engine: wer over tag-stripped words, cer
over tag-stripped characters, pauer over the binary pause layout, and
iper over the ternary appropriateness sequence. Corpus scores divide
pooled edit counts by pooled reference lengths; averaging per-utterance
rates would let one-word utterances dominate.
"""

from pausekit import (
    Hypothesis,
    ManifestRecord,
    cer,
    edit_counts,
    parse_tagged,
    score_corpus,
    to_pause_seq,
    pauer,
    wer,
)

ref = parse_tagged("나는 <SIL> 학교에 갔다")
hyp = parse_tagged("나는 학교에 <SIL> 간다")

counts = edit_counts(ref.words(), hyp.words())
print(f"word alignment: {counts.substitutions} sub, {counts.deletions} del, "
      f"{counts.insertions} ins over {counts.ref_len} ref words")
print(f"wer   {wer(ref, hyp):.4f}   (pause tags never count as words)")
print(f"cer   {cer(ref, hyp):.4f}")
print(f"pauer {pauer(to_pause_seq(ref), to_pause_seq(hyp)):.4f}   (pause moved one slot)")
print()

# pooled vs averaged: one short bad utterance, one long perfect one
refs = [
    ManifestRecord("short", "a.wav", "wA", (0,), "severe"),
    ManifestRecord("long", "b.wav", "w1 w2 w3", (0, 0, 0), "none"),
]
hyps = [
    Hypothesis("short", parse_tagged("wB"), (0,)),
    Hypothesis("long", parse_tagged("w1 w2 w3"), (0, 0, 0)),
]
report = score_corpus(refs, hyps)
print(f"pooled corpus wer: {report.overall.rate('wer'):.4f}  (1 edit / 4 ref words)")
print("mean of per-utterance rates would claim 0.5000")
print()

print("per-severity blocks (same pooling, within each stratum):")
for severity, block in report.per_severity.items():
    print(f"  {severity:8s} wer {block.rate('wer'):.4f} over {block.n_utterances} utterance(s)")
