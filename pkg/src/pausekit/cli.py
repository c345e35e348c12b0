"""Command-line entry point.

Exit codes: 0 success, 1 diagnostics or data errors, 2 usage errors.
Every run logs its resolved configuration to stderr as one JSON line.
Output files are written atomically (temp file, then rename), JSON
outputs use sorted keys with rates rounded to 6 decimals, and
per-utterance output is ordered by utterance id. Utterance-level work
honors --jobs (or the PAUSEKIT_JOBS environment variable).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .acoustics import VadConfig, detect_pause_intervals, intervals_to_jsonable, load_wav
from .errors import PausekitError
from .labeling import (
    ManifestRecord,
    build_ip_annotation,
    load_criteria,
    read_manifest,
    stratified_split,
    validate_manifest,
    write_manifest,
)
from .metrics import (
    CorpusReport,
    Hypothesis,
    MetricBlock,
    assemble_report,
    pair_utterances,
    score_pairs,
)
from .model import evaluate_toy, load_train_setup, params_to_json_dict, train_toy
from .transcript import parse_tagged, serialize


def _atomic_write(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_text(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def _fmt4(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.4g}"


def _resolve_jobs(args: argparse.Namespace) -> int:
    jobs = getattr(args, "jobs", None)
    if jobs is None:
        jobs = int(os.environ.get("PAUSEKIT_JOBS", "1"))
    return max(1, jobs)


def _log_config(args: argparse.Namespace) -> None:
    resolved = {k: v for k, v in vars(args).items() if not callable(v)}
    if "jobs" in resolved:
        resolved["jobs"] = _resolve_jobs(args)
    print(json.dumps(resolved, sort_keys=True, default=str), file=sys.stderr)


def _emit(diagnostics: list[str]) -> int:
    for d in diagnostics:
        print(d)
    print(f"{len(diagnostics)} diagnostics", file=sys.stderr)
    return 1 if diagnostics else 0


def _ratios(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("exactly three comma-separated ratios required")
    try:
        values = tuple(float(p) for p in parts)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"ratios must be numbers: {e}") from e
    if any(v <= 0 for v in values) or abs(sum(values) - 1.0) > 1e-9:
        raise argparse.ArgumentTypeError("ratios must be positive and sum to 1")
    return values


def cmd_annotate(args: argparse.Namespace) -> int:
    records = read_manifest(args.manifest)
    criteria, contexts = load_criteria(args.criteria)
    out_records = []
    diagnostics = []
    for rec in records:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                t = parse_tagged(rec.transcript)
            annotation = build_ip_annotation(t, contexts.get(rec.utterance_id, []), criteria)
        except PausekitError as e:
            diagnostics.append(f"{rec.utterance_id}: {e}")
            continue
        out_records.append(
            ManifestRecord(
                rec.utterance_id, rec.audio_path, serialize(t),
                annotation.labels, rec.severity,
            )
        )
    if diagnostics:
        return _emit(diagnostics)
    out_records.sort(key=lambda r: r.utterance_id)
    buf = io.StringIO()
    for rec in out_records:
        buf.write(json.dumps(rec.to_json_dict(), ensure_ascii=False) + "\n")
    _atomic_write(args.out, buf.getvalue())
    print(f"annotated {len(out_records)} utterances -> {args.out}")
    return 0


def _detect_one(task: tuple[ManifestRecord, str, VadConfig]) -> tuple[str, list | None, str | None]:
    rec, audio_dir, cfg = task
    path = os.path.join(audio_dir, rec.audio_path)
    try:
        signal = load_wav(path)
        intervals = detect_pause_intervals(signal, cfg)
    except (PausekitError, OSError, ValueError) as e:
        return rec.utterance_id, None, f"{rec.utterance_id}: {e}"
    return rec.utterance_id, intervals_to_jsonable(intervals), None


def cmd_detect_pauses(args: argparse.Namespace) -> int:
    records = read_manifest(args.manifest)
    cfg = VadConfig()
    if args.vad_config:
        with open(args.vad_config, encoding="utf-8") as f:
            cfg = VadConfig(**json.load(f))
    jobs = _resolve_jobs(args)
    tasks = [(rec, args.audio_dir, cfg) for rec in records]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_detect_one, tasks, chunksize=max(1, len(tasks) // (jobs * 4))))
    else:
        results = [_detect_one(t) for t in tasks]
    diagnostics = [err for _, _, err in results if err]
    if diagnostics:
        return _emit(diagnostics)
    by_id = {utt_id: intervals for utt_id, intervals, _ in results}
    _atomic_write(args.out, _json_text(by_id))
    total = sum(len(v) for v in by_id.values())
    print(f"detected {total} pause intervals across {len(by_id)} utterances -> {args.out}")
    return 0


def _block_json(block: MetricBlock) -> dict:
    out: dict = {"n_utterances": block.n_utterances, "counts": {}}
    for name in ("wer", "cer", "pauer", "iper"):
        rate = block.rate(name)
        out[name] = None if rate is None else round(rate, 6)
        c = getattr(block, name)
        out["counts"][name] = {
            "substitutions": c.substitutions,
            "deletions": c.deletions,
            "insertions": c.insertions,
            "ref_len": c.ref_len,
        }
    return out


def _report_json(report: CorpusReport, per_severity: bool) -> dict:
    out = {
        "overall": _block_json(report.overall),
        "ip_coerced_pauses": report.ip_coerced_pauses,
        "ip_forced_words": report.ip_forced_words,
    }
    if per_severity:
        out["per_severity"] = {s: _block_json(b) for s, b in report.per_severity.items()}
    return out


def _summary_line(name: str, block: MetricBlock) -> str:
    rates = "  ".join(f"{m} {_fmt4(block.rate(m))}" for m in ("wer", "cer", "pauer", "iper"))
    return f"{name}: {rates}  ({block.n_utterances} utterances)"


def _hypotheses(records: list[ManifestRecord]) -> tuple[list[Hypothesis], list[str]]:
    hyps = []
    diagnostics = []
    for rec in records:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                t = parse_tagged(rec.transcript)
        except PausekitError as e:
            diagnostics.append(f"{rec.utterance_id}: hypothesis transcript does not parse: {e}")
            continue
        if len(rec.ip_labels) != len(t):
            diagnostics.append(
                f"{rec.utterance_id}: {len(rec.ip_labels)} head labels for {len(t)} tokens"
            )
            continue
        if any(v not in (0, 1, 2) for v in rec.ip_labels):
            diagnostics.append(f"{rec.utterance_id}: head labels must be 0, 1, or 2")
            continue
        hyps.append(Hypothesis(rec.utterance_id, t, rec.ip_labels))
    return hyps, diagnostics


def cmd_score(args: argparse.Namespace) -> int:
    refs = read_manifest(args.ref)
    ref_diagnostics = validate_manifest(refs)
    hyps, hyp_diagnostics = _hypotheses(read_manifest(args.hyp))
    diagnostics = ref_diagnostics + hyp_diagnostics
    if diagnostics:
        return _emit(diagnostics)
    pairs = pair_utterances(refs, hyps)
    pairs.sort(key=lambda pair: pair[0].utterance_id)
    jobs = _resolve_jobs(args)
    if jobs > 1 and len(pairs) > 1:
        chunk = -(-len(pairs) // jobs)
        chunks = [pairs[i : i + chunk] for i in range(0, len(pairs), chunk)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(score_pairs, chunks))
    else:
        parts = [score_pairs(pairs)]
    report = assemble_report(parts)
    _atomic_write(args.out, _json_text(_report_json(report, args.per_severity)))
    print(_summary_line("overall", report.overall))
    if args.per_severity:
        for sev, block in report.per_severity.items():
            print(_summary_line(sev, block))
    return 0


def cmd_split(args: argparse.Namespace) -> int:
    records = read_manifest(args.manifest)
    train, valid, test = stratified_split(records, args.ratios, args.seed)
    for name, part in (("train", train), ("valid", valid), ("test", test)):
        path = f"{args.out_prefix}.{name}.jsonl"
        buf = io.StringIO()
        for rec in part:
            buf.write(json.dumps(rec.to_json_dict(), ensure_ascii=False) + "\n")
        _atomic_write(path, buf.getvalue())
        print(f"{name}: {len(part)} records -> {path}")
    return 0


def cmd_train_toy(args: argparse.Namespace) -> int:
    train_corpus, heldout, cfg = load_train_setup(args.config)
    result = train_toy(train_corpus, cfg)
    _atomic_write(args.out, _json_text(params_to_json_dict(result.params, train_corpus.vocab)))
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["step", "loss"])
    for step, loss in enumerate(result.loss_trace):
        writer.writerow([step, repr(loss)])
    _atomic_write(args.trace, buf.getvalue())
    first, last = result.loss_trace[0], result.loss_trace[-1]
    reduction = 0.0 if first == 0 else 100.0 * (first - last) / first
    print(f"loss {_fmt4(first)} -> {_fmt4(last)} ({reduction:.1f}% reduction) over {cfg.steps} steps")
    if heldout is not None and heldout.examples:
        ev = evaluate_toy(heldout, result.params)
        print(f"held-out: pauer {_fmt4(ev.pauer)}  iper {_fmt4(ev.iper)}  "
              f"({len(heldout.examples)} utterances)")
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    records = read_manifest(args.manifest)
    return _emit(validate_manifest(records))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pausekit",
        description="Pause and inappropriate-pause toolkit for disordered speech.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("annotate", help="apply the labeling rules to a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--criteria", required=True, help="JSON with thresholds and per-utterance pause contexts")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("detect-pauses", help="detect silent intervals in manifest audio")
    p.add_argument("--audio-dir", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--vad-config", default=None, help="JSON with detector fields; defaults otherwise")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_detect_pauses)

    p = sub.add_parser("score", help="score hypothesis manifest against reference manifest")
    p.add_argument("--ref", required=True)
    p.add_argument("--hyp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--per-severity", action="store_true")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("split", help="severity-stratified train/valid/test split")
    p.add_argument("--manifest", required=True)
    p.add_argument("--ratios", required=True, type=_ratios, help="train,valid,test; must sum to 1")
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("train-toy", help="train the two heads on a toy corpus")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="trained parameters (JSON)")
    p.add_argument("--trace", required=True, help="per-step loss trace (CSV)")
    p.set_defaults(func=cmd_train_toy)

    p = sub.add_parser("validate", help="report manifest diagnostics")
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _log_config(args)
    try:
        return args.func(args)
    except PausekitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
