"""CLI for the toy harness: synthetic corpus generation, label-shuffle
controls, and training runs over emitted next-k-mer datasets."""
from __future__ import annotations

import sys

import click

from . import data
from .report import write_report
from .train import train_toy


@click.group(name="toyharness")
def main():
    """Desk-scale fine-tuning checks for next-k-mer datasets."""


@main.command("make-synthetic")
@click.option("--n", type=int, default=5000, show_default=True, help="Window count.")
@click.option("--k", type=int, default=3, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--out", "out_path", required=True, help="Plain-text windows file.")
def cmd_make_synthetic(n, k, seed, out_path):
    """Write 56-nt windows whose next k-mer is a fixed function of the last
    six input bases (feed the file to `dnatok emit-nextkmer`)."""
    windows = data.make_synthetic_windows(n, k, seed)
    data.write_windows(windows, out_path)
    click.echo(f"{n} windows (k={k}) -> {out_path}")


@main.command("shuffle-labels")
@click.option("--input", "src", required=True, help="Source next-k-mer JSONL.")
@click.option("--out", "dst", required=True, help="Shuffled copy to write.")
@click.option("--seed", type=int, required=True)
def cmd_shuffle_labels(src, dst, seed):
    """Permute the label column of a dataset (chance-level control)."""
    n = data.shuffle_labels(src, dst, seed)
    click.echo(f"{n} records with shuffled labels -> {dst}")


@main.command("train")
@click.option("--train", "train_path", required=True)
@click.option("--test", "test_path", required=True)
@click.option("--k", type=int, required=True)
@click.option("--epochs", type=int, default=6, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--out", "out_dir", required=True, help="Report directory.")
def cmd_train(train_path, test_path, k, epochs, seed, out_dir):
    """Train the toy classifier and write result.json / result.md."""
    try:
        result = train_toy(train_path, test_path, k, epochs=epochs, seed=seed)
    except (data.SchemaMismatch, data.LabelOutOfRange) as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(2)
    json_path, _ = write_report(result, out_dir)
    click.echo(
        f"train_accuracy={result.train_accuracy:.4f} "
        f"test_accuracy={result.test_accuracy:.4f} "
        f"({result.wall_seconds:.1f}s) -> {json_path}"
    )
