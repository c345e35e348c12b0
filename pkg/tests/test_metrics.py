import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import all_pairs_distance_matrix, all_sequences, recursive_edit_distance
from pausekit.errors import EmptyReferenceError, IdMismatchError
from pausekit.labeling import ManifestRecord
from pausekit.metrics import (
    EditCounts,
    Hypothesis,
    cer,
    edit_counts,
    iper,
    pauer,
    score_corpus,
    wer,
)
from pausekit.sequences import IPSeq, PauseSeq
from pausekit.transcript import parse_tagged


def test_edit_counts_identity():
    c = edit_counts("abc", "abc")
    assert (c.substitutions, c.deletions, c.insertions) == (0, 0, 0)
    assert c.error_rate == 0.0


def test_edit_counts_kitten():
    c = edit_counts("kitten", "sitting")
    assert c.total == 3 == recursive_edit_distance("kitten", "sitting")


def test_edit_counts_integer_sequences():
    c = edit_counts((0, 0, 1, 0, 2), (0, 0, 1, 0, 1))
    assert (c.substitutions, c.deletions, c.insertions) == (1, 0, 0)
    assert c.error_rate == pytest.approx(0.20)


def test_edit_counts_backtrace_tie_order():
    # "ab" -> "b" admits delete-a or substitute-then-delete alignments of
    # cost 1; the substitution-first backtrace still finds the single
    # deletion (diagonal match on b, then deletion of a).
    c = edit_counts("ab", "b")
    assert (c.substitutions, c.deletions, c.insertions) == (0, 1, 0)
    # "aa" -> "b": substitution preferred over delete+insert split.
    c = edit_counts("a", "b")
    assert (c.substitutions, c.deletions, c.insertions) == (1, 0, 0)


def test_empty_reference_behavior():
    c = edit_counts("", "xy")
    assert c.total == 2 and c.ref_len == 0
    with pytest.raises(EmptyReferenceError):
        _ = c.error_rate


def test_edit_counts_pooling():
    pooled = EditCounts(1, 0, 0, 1) + EditCounts(0, 0, 0, 3)
    assert pooled.error_rate == pytest.approx(0.25)
    with pytest.raises(ValueError):
        EditCounts(2, 0, 0, 1)
    with pytest.raises(ValueError):
        EditCounts(-1, 0, 0, 1)


def test_wer_examples():
    ref = parse_tagged("a b <SIL> c")
    hyp = parse_tagged("a <SIL> b c")
    assert wer(ref, hyp) == 0.0
    assert wer(parse_tagged("a b c"), parse_tagged("a c")) == pytest.approx(1 / 3)
    assert wer(parse_tagged("a"), parse_tagged("<SIL>")) == 1.0
    with pytest.raises(EmptyReferenceError):
        wer(parse_tagged("<SIL>"), parse_tagged("a"))


def test_cer_examples():
    assert cer(parse_tagged("가을"), parse_tagged("가을")) == 0.0
    assert cer(parse_tagged("가을"), parse_tagged("가일")) == pytest.approx(0.5)
    assert cer(parse_tagged("ab"), parse_tagged("ba")) == pytest.approx(1.0)
    assert recursive_edit_distance("ab", "ba") == 2
    # whitespace removed before comparison
    assert cer(parse_tagged("a b"), parse_tagged("ab")) == 0.0


def test_pauer_examples():
    assert pauer(PauseSeq((0, 1, 0)), PauseSeq((0, 1, 0))) == 0.0
    assert recursive_edit_distance((0, 1, 0), (0, 0)) == 1
    assert pauer(PauseSeq((0, 1, 0)), PauseSeq((0, 0))) == pytest.approx(1 / 3)
    assert recursive_edit_distance((0, 1, 0, 0, 1), (1, 0, 0, 1, 0)) == 2
    assert pauer(PauseSeq((0, 1, 0, 0, 1)), PauseSeq((1, 0, 0, 1, 0))) == pytest.approx(2 / 5)


def test_iper_examples():
    assert iper(IPSeq((0, 2, 0)), IPSeq((0, 2, 0))) == 0.0
    assert iper(IPSeq((0, 2, 0)), IPSeq((0, 1, 0))) == pytest.approx(1 / 3)
    assert iper(IPSeq((0, 1, 0, 2)), IPSeq((0, 1, 0))) == pytest.approx(1 / 4)


def test_exhaustive_oracle_small():
    # Every pair over a 3-symbol alphabet with lengths <= 4, against both
    # oracles (the longer-length exhaustive run lives in the acceptance suite).
    seqs_by_len = {n: all_sequences(3, n) for n in range(5)}
    rng = np.random.default_rng(0)
    for la in range(5):
        for lb in range(5):
            a, b = seqs_by_len[la], seqs_by_len[lb]
            table = all_pairs_distance_matrix(a, b)
            a_py = [tuple(int(x) for x in row) for row in a]
            b_py = [tuple(int(x) for x in row) for row in b]
            for ia in range(len(a_py)):
                for ib in range(len(b_py)):
                    assert edit_counts(a_py[ia], b_py[ib]).total == table[ia, ib]
            # spot-check the vectorized oracle against the recursive one
            ia, ib = rng.integers(len(a_py)), rng.integers(len(b_py))
            assert table[ia, ib] == recursive_edit_distance(a_py[ia], b_py[ib])


_seq = st.lists(st.sampled_from((0, 1, 2)), max_size=8).map(tuple)


@given(_seq, _seq)
def test_distance_matches_recursive_oracle(a, b):
    assert edit_counts(a, b).total == recursive_edit_distance(a, b)


@given(_seq, _seq)
def test_distance_symmetry(a, b):
    ab = edit_counts(a, b)
    ba = edit_counts(b, a)
    assert ab.total == ba.total
    assert (ab.substitutions, ab.deletions, ab.insertions) == (
        ba.substitutions,
        ba.insertions,
        ba.deletions,
    )


@given(_seq, _seq, _seq)
def test_distance_triangle_inequality(a, b, c):
    assert edit_counts(a, c).total <= edit_counts(a, b).total + edit_counts(b, c).total


@given(_seq.filter(lambda s: len(s) > 0), _seq)
def test_rate_bounds(a, b):
    rate = edit_counts(a, b).error_rate
    assert 0 <= rate <= (len(a) + len(b)) / len(a)


def _pair(utt_id, ref_text, ref_labels, hyp_text, hyp_labels, severity="mild_moderate"):
    rec = ManifestRecord(utt_id, "a.wav", ref_text, tuple(ref_labels), severity)
    hyp = Hypothesis(utt_id, parse_tagged(hyp_text), tuple(hyp_labels))
    return rec, hyp


def test_score_corpus_identical_pair_is_zero():
    rec, hyp = _pair("u1", "a <SIL> b", (0, 1, 0), "a <SIL> b", (0, 1, 0))
    report = score_corpus([rec], [hyp])
    for name in ("wer", "cer", "pauer", "iper"):
        assert report.overall.rate(name) == 0.0
    assert report.ip_coerced_pauses == 0
    assert report.overall.n_utterances == 1


def test_score_corpus_pools_counts_not_rates():
    # (1 error / 1 ref word) + (0 / 3) pools to 25%, not the 50% mean of rates.
    r1, h1 = _pair("u1", "x", (0,), "y", (0,))
    r2, h2 = _pair("u2", "a b c", (0, 0, 0), "a b c", (0, 0, 0))
    report = score_corpus([r1, r2], [h2, h1])  # order independent
    assert report.overall.wer.ref_len == 4
    assert report.overall.rate("wer") == pytest.approx(0.25)


def test_score_corpus_per_severity_and_coercions():
    r1, h1 = _pair("u1", "a <SIL> b", (0, 1, 0), "a <SIL> b", (0, 0, 0), severity="severe")
    r2, h2 = _pair("u2", "c", (0,), "c", (0,), severity="none")
    report = score_corpus([r1, r2], [h1, h2])
    assert set(report.per_severity) == {"severe", "none"}
    assert list(report.per_severity) == ["none", "severe"]  # canonical order
    assert report.per_severity["severe"].n_utterances == 1
    assert report.ip_coerced_pauses == 1  # head said 0 at the pause
    assert report.overall.rate("iper") == 0.0  # coerced to appropriate, which matches


def test_score_corpus_id_mismatch():
    rec, hyp = _pair("u1", "a", (0,), "a", (0,))
    with pytest.raises(IdMismatchError):
        score_corpus([rec], [])
    with pytest.raises(IdMismatchError):
        score_corpus([rec], [Hypothesis("other", parse_tagged("a"), (0,))])
    with pytest.raises(IdMismatchError):
        score_corpus([rec, rec], [hyp, hyp])
