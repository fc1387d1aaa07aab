"""toyharness: desk-scale fine-tuning checks for next-k-mer datasets."""

from .data import (
    LabelOutOfRange,
    SchemaMismatch,
    load_examples,
    load_manifest,
    make_synthetic_windows,
    shuffle_labels,
    synthetic_label_bases,
    write_windows,
)
from .model import TokenSequenceClassifier
from .report import write_report
from .train import ToyRunResult, train_toy

__all__ = [
    "LabelOutOfRange",
    "SchemaMismatch",
    "TokenSequenceClassifier",
    "ToyRunResult",
    "load_examples",
    "load_manifest",
    "make_synthetic_windows",
    "shuffle_labels",
    "synthetic_label_bases",
    "train_toy",
    "write_report",
    "write_windows",
]

__version__ = "0.1.0"
