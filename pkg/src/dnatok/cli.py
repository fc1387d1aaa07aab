"""Command-line pipeline: train merges, build vocabularies, tokenize, emit
MLM and next-k-mer datasets, report stats, and write run manifests.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal invariant
violation. Randomized commands require an explicit --seed. All file outputs
are written atomically.
"""
from __future__ import annotations

import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import click

from . import masking, nextkmer, sequences, stats as stats_mod
from .bpe import MergeTable, bpe_train
from .errors import DnatokError
from .ioutils import atomic_write_text, dump_json, sha256_file, write_jsonl
from .kmers import kmer_vocabulary
from .vocab import HybridTokenizer, Vocabulary, build_vocabulary

# Optimizer/trainer settings recorded for downstream model training runs.
TRAINING_HYPERPARAMETERS = {
    "learning_rate": 4e-4,
    "adam_epsilon": 1e-6,
    "adam_beta1": 0.9,
    "adam_beta2": 0.98,
    "weight_decay": 0.01,
    "train_batch_size": 16,
    "eval_batch_size": 32,
    "gradient_accumulation_steps": 25,
    "warmup_steps": 1000,
    "max_steps": 20000,
    "save_every_steps": 2500,
    "log_every_steps": 500,
}


@dataclass(frozen=True)
class PipelineManifest:
    """Everything needed to reproduce a pipeline run byte for byte."""

    vocab_digest: str | None
    merge_digest: str | None
    corpus_digest: str | None
    parameters: dict
    hyperparameters: dict = field(default_factory=lambda: dict(TRAINING_HYPERPARAMETERS))


def _load_corpus(path: str, format: str) -> list[sequences.NucleotideSequence]:
    if format == "auto":
        format = sequences.detect_format(path)
    return sequences.load_sequences(path, format)


_FORMAT_OPTION = click.option(
    "--format",
    "format_",
    type=click.Choice(["auto", "fasta", "plain"]),
    default="auto",
    show_default=True,
    help="Input corpus format; auto sniffs the first non-blank character.",
)


@click.group(name="dnatok")
@click.option("--json-errors", is_flag=True, help="Emit diagnostics as JSON lines on stderr.")
@click.pass_context
def main(ctx, json_errors):
    """Hybrid k-mer + BPE tokenization pipelines for DNA corpora."""
    ctx.ensure_object(dict)
    ctx.obj["json_errors"] = json_errors


@main.command("train-bpe")
@click.option("--input", "input_path", required=True, help="FASTA or plain corpus file.")
@_FORMAT_OPTION
@click.option("--cycles", type=int, default=600, show_default=True, help="Merge cycles to run.")
@click.option(
    "--segment-length",
    type=int,
    default=sequences.DEFAULT_SEGMENT_LENGTH,
    show_default=True,
    help="Segment length the corpus is cut into before training.",
)
@click.option("--out", "out_path", required=True, help="Merge table JSON output path.")
def cmd_train_bpe(input_path, format_, cycles, segment_length, out_path):
    """Learn BPE merge rules from a corpus."""
    seqs = _load_corpus(input_path, format_)
    segments = sequences.segment(seqs, segment_length)
    table = bpe_train(segments, cycles)
    table.save(out_path)
    click.echo(
        f"trained {table.cycles} cycles ({table.distinct_token_count()} distinct tokens"
        f"{', early stop' if table.early_stop else ''}) -> {out_path}"
    )


@main.command("build-vocab")
@click.option("--merges", "merges_path", required=True, help="Merge table JSON.")
@click.option("--k", type=int, default=6, show_default=True, help="k-mer length.")
@click.option("--out", "out_path", required=True, help="Vocabulary JSON output path.")
def cmd_build_vocab(merges_path, k, out_path):
    """Merge the exhaustive k-mer set with BPE tokens into one vocabulary."""
    table = MergeTable.load(merges_path)
    vocab = build_vocabulary(kmer_vocabulary(k), table)
    vocab.save(out_path)
    click.echo(f"vocabulary of {len(vocab)} tokens ({vocab.counts}) -> {out_path}")


@main.command("tokenize")
@click.option("--vocab", "vocab_path", required=True)
@click.option("--merges", "merges_path", required=True)
@click.option("--input", "input_path", required=True)
@_FORMAT_OPTION
@click.option("--segment-length", type=int, default=sequences.DEFAULT_SEGMENT_LENGTH, show_default=True)
@click.option("--bare", is_flag=True, help="Omit [CLS]/[SEP] wrapping.")
@click.option("--out", "out_path", required=True, help="Encodings JSONL output path.")
def cmd_tokenize(vocab_path, merges_path, input_path, format_, segment_length, bare, out_path):
    """Hybrid-encode every segment of a corpus to token ids."""
    vocab = Vocabulary.load(vocab_path)
    table = MergeTable.load(merges_path)
    seqs = _load_corpus(input_path, format_)
    segments = sequences.segment(seqs, segment_length)
    tokenizer = HybridTokenizer(vocab, table)

    def records():
        chunk = 8192
        for lo in range(0, len(segments), chunk):
            batch = segments[lo : lo + chunk]
            for seg, enc in zip(batch, tokenizer.encode_batch(batch, not bare)):
                yield {
                    "source_id": seg.source_id,
                    "offset": seg.offset,
                    "ids": enc.ids,
                    "kmer_region": [enc.kmer_region.start, enc.kmer_region.stop],
                    "bpe_region": [enc.bpe_region.start, enc.bpe_region.stop],
                }

    n = write_jsonl(out_path, records())
    click.echo(f"{n} segments tokenized -> {out_path}")


@main.command("emit-mlm")
@click.option("--vocab", "vocab_path", required=True)
@click.option("--merges", "merges_path", required=True)
@click.option("--input", "input_path", required=True)
@_FORMAT_OPTION
@click.option("--segment-length", type=int, default=sequences.DEFAULT_SEGMENT_LENGTH, show_default=True)
@click.option("--mask-probability", type=float, default=0.15, show_default=True)
@click.option(
    "--span-offsets",
    default="-2,-1,0,1,2,3",
    show_default=True,
    help="Comma-separated span offsets around a masked k-mer anchor.",
)
@click.option("--seed", type=int, required=True, help="Masking seed (required; no hidden entropy).")
@click.option("--out", "out_path", required=True, help="Masked-example JSONL output path.")
def cmd_emit_mlm(
    vocab_path, merges_path, input_path, format_, segment_length, mask_probability,
    span_offsets, seed, out_path,
):
    """Emit masked-LM training examples, one per segment."""
    vocab = Vocabulary.load(vocab_path)
    table = MergeTable.load(merges_path)
    seqs = _load_corpus(input_path, format_)
    segments = sequences.segment(seqs, segment_length)
    try:
        offsets = tuple(int(x) for x in span_offsets.split(","))
    except ValueError as exc:
        raise click.UsageError(f"bad --span-offsets {span_offsets!r}: {exc}") from exc
    cfg = masking.MaskingConfig(mask_probability=mask_probability, span_offsets=offsets, seed=seed)
    records = (
        masking.mlm_record(seg, ex)
        for seg, ex in masking.emit_mlm_corpus(segments, vocab, table, cfg)
    )
    n = write_jsonl(out_path, records)
    click.echo(f"{n} masked examples -> {out_path}")


@main.command("emit-nextkmer")
@click.option("--vocab", "vocab_path", required=True)
@click.option("--merges", "merges_path", required=True)
@click.option("--input", "input_path", required=True)
@_FORMAT_OPTION
@click.option("--k", type=int, required=True, help="Label k-mer length (2-6).")
@click.option("--split", "split_fraction", type=float, default=0.8, show_default=True)
@click.option("--seed", type=int, required=True, help="Split/sampling seed (required).")
@click.option("--window", type=int, default=510, show_default=True, help="Sliding window length.")
@click.option("--keep", type=int, default=56, show_default=True, help="Prefix kept per window.")
@click.option("--stride", type=int, default=1, show_default=True)
@click.option(
    "--count",
    type=int,
    default=None,
    help="Sample this many windows via --window/--keep/--stride; without it each "
    "input sequence is taken as one window.",
)
@click.option("--out-dir", "out_dir", required=True, help="Directory for train/test/manifest files.")
def cmd_emit_nextkmer(
    vocab_path, merges_path, input_path, format_, k, split_fraction, seed,
    window, keep, stride, count, out_dir,
):
    """Emit the next-k-mer classification dataset (train/test JSONL + manifest)."""
    vocab = Vocabulary.load(vocab_path)
    table = MergeTable.load(merges_path)
    seqs = _load_corpus(input_path, format_)
    if count is not None:
        windows = sequences.extract_windows(
            seqs, window=window, keep=keep, stride=stride, count=count, seed=seed
        )
    else:
        windows = seqs
    dataset = nextkmer.emit_nextkmer_dataset(windows, k, vocab, table, split_fraction, seed)
    out = Path(out_dir)
    n_train = write_jsonl(out / "train.jsonl", map(nextkmer.nextkmer_record, dataset.train))
    n_test = write_jsonl(out / "test.jsonl", map(nextkmer.nextkmer_record, dataset.test))
    atomic_write_text(out / "manifest.json", dump_json(dataset.manifest))
    click.echo(f"{n_train} train / {n_test} test examples -> {out}")


@main.command("stats")
@click.option("--input", "input_path", required=True)
@_FORMAT_OPTION
@click.option(
    "--schemes",
    default="kmer6,bpe,hybrid",
    show_default=True,
    help="Comma-separated: kmerN, bpe, hybrid.",
)
@click.option("--merges", "merges_path", default=None, help="Merge table (needed by bpe/hybrid).")
@click.option("--k", type=int, default=6, show_default=True, help="k used by the hybrid scheme.")
@click.option("--segment-length", type=int, default=sequences.DEFAULT_SEGMENT_LENGTH, show_default=True)
@click.option("--threads", type=int, default=1, show_default=True, help="Tokenization threads.")
@click.option("--out", "out_path", required=True, help="CSV output path.")
@click.option("--markdown", "md_path", default=None, help="Optional Markdown output path.")
def cmd_stats(
    input_path, format_, schemes, merges_path, k, segment_length, threads, out_path, md_path
):
    """Compare token distribution and compression across tokenization schemes."""
    seqs = _load_corpus(input_path, format_)
    segments = sequences.segment(seqs, segment_length)
    table = MergeTable.load(merges_path) if merges_path else None
    parsed = []
    for name in schemes.split(","):
        name = name.strip()
        if name.startswith("kmer") and name[4:].isdigit():
            parsed.append(stats_mod.KmerScheme(int(name[4:])))
        elif name == "bpe":
            if table is None:
                raise click.UsageError("scheme 'bpe' requires --merges")
            parsed.append(stats_mod.BpeScheme(table))
        elif name == "hybrid":
            if table is None:
                raise click.UsageError("scheme 'hybrid' requires --merges")
            parsed.append(stats_mod.HybridScheme(k, table))
        else:
            raise click.UsageError(f"unknown scheme {name!r}")
    report = stats_mod.compare_tokenizers(segments, parsed, threads=threads)
    atomic_write_text(out_path, report.to_csv())
    if md_path:
        atomic_write_text(md_path, report.to_markdown())
    click.echo(f"{len(report.rows)} schemes -> {out_path}")


@main.command("manifest")
@click.option("--vocab", "vocab_path", default=None)
@click.option("--merges", "merges_path", default=None)
@click.option("--corpus", "corpus_path", default=None)
@click.option("--out", "out_path", required=True)
@click.pass_context
def cmd_manifest(ctx, vocab_path, merges_path, corpus_path, out_path):
    """Record artifact digests, flags, and training hyperparameters."""
    merge_digest = sha256_file(merges_path) if merges_path else None
    corpus_digest = sha256_file(corpus_path) if corpus_path else None
    if merges_path and corpus_digest is None:
        corpus_digest = MergeTable.load(merges_path).corpus_digest
    manifest = PipelineManifest(
        vocab_digest=sha256_file(vocab_path) if vocab_path else None,
        merge_digest=merge_digest,
        corpus_digest=corpus_digest,
        parameters={
            "vocab": vocab_path,
            "merges": merges_path,
            "corpus": corpus_path,
            "out": out_path,
        },
    )
    atomic_write_text(out_path, dump_json(asdict(manifest)))
    click.echo(f"manifest -> {out_path}")


def _emit_error(json_errors: bool, kind: str, message: str) -> None:
    if json_errors:
        sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    else:
        sys.stderr.write(f"error: {kind}: {message}\n")
    sys.stderr.flush()


def run(argv: list[str] | None = None) -> int:
    """Invoke the CLI, mapping exceptions onto the documented exit codes."""
    args = list(sys.argv[1:] if argv is None else argv)
    json_errors = "--json-errors" in args
    try:
        main.main(args=args, standalone_mode=False, obj={})
        return 0
    except click.exceptions.Exit as exc:  # --help and friends
        return exc.exit_code
    except click.UsageError as exc:
        _emit_error(json_errors, "UsageError", exc.format_message())
        return 1
    except click.ClickException as exc:
        _emit_error(json_errors, type(exc).__name__, exc.format_message())
        return 1
    except DnatokError as exc:
        _emit_error(json_errors, type(exc).__name__, str(exc))
        return 2
    except (ValueError, TypeError) as exc:
        _emit_error(json_errors, type(exc).__name__, str(exc))
        return 1
    except KeyboardInterrupt:
        raise
    except Exception as exc:  # noqa: BLE001 - anything else is an internal bug
        _emit_error(json_errors, type(exc).__name__, f"internal error: {exc}")
        return 3


def entry() -> None:
    sys.exit(run())
