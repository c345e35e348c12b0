"""End-to-end check on planted structure: train, decode, score.

The toy corpus plants recoverable structure in random latent matrices:
each position's latent encodes its true token and appropriateness label
under mild noise. Two linear heads are trained with cross-entropy on the
transcript and a soft alignment loss on the label sequence; some targets
are run-length collapsed, so the alignment loss has to bridge length
mismatches. Training is seeded and deterministic.
"""

from pausekit import (
    PlantedConfig,
    TrainConfig,
    decode_predictions,
    evaluate_toy,
    forward_heads,
    make_planted_corpus,
    serialize,
    train_toy,
)

train_corpus, heldout = make_planted_corpus(PlantedConfig(n_train=12, n_heldout=4, seed=3))
print(f"corpus: {len(train_corpus.examples)} train / {len(heldout.examples)} held-out, "
      f"vocab {len(train_corpus.vocab)}")

cfg = TrainConfig(learning_rate=5e-4, batch_size=4, steps=80, gamma=0.1, seed=0)
result = train_toy(train_corpus, cfg)

trace = result.loss_trace
marks = ".:-=+*#%@"
lo, hi = min(trace), max(trace)
spark = "".join(marks[int((v - lo) / (hi - lo) * (len(marks) - 1))] for v in trace[::4])
print(f"loss {trace[0]:.3f} -> {trace[-1]:.3f}")
print(f"trace: {spark}")
print()

ev = evaluate_toy(heldout, result.params)
print(f"held-out pauer {ev.pauer:.4f}  iper {ev.iper:.4f} "
      f"({ev.coerced_pauses} coerced, {ev.forced_words} forced)")
print()

example = heldout.examples[0]
logits = forward_heads(example.latent, result.params)
decoded, head_labels = decode_predictions(*logits, train_corpus.vocab)
truth = " ".join(train_corpus.vocab[i] for i in example.target_tokens)
print(f"one held-out utterance ({example.utterance_id}):")
print(f"  truth:   {truth}")
print(f"  decoded: {serialize(decoded)}")
print(f"  labels:  {head_labels}")
