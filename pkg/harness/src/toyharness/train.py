"""Training loop: fit the toy classifier on an emitted next-k-mer dataset.

CPU-only and deterministic given the seed: weight init, batch order, and
evaluation order all derive from it, so reruns reproduce accuracies exactly.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

import torch
from torch import nn

from .data import load_examples, load_manifest
from .model import TokenSequenceClassifier


@dataclass(frozen=True)
class ToyRunResult:
    k: int
    train_accuracy: float
    test_accuracy: float
    n_train: int
    n_test: int
    wall_seconds: float
    digests: dict = field(default_factory=dict)
    seed: int = 0
    epochs: int = 0


@torch.no_grad()
def _accuracy(model: nn.Module, inputs: torch.Tensor, labels: torch.Tensor) -> float:
    model.eval()
    correct = 0
    for start in range(0, len(inputs), 512):
        batch = inputs[start : start + 512]
        predictions = model(batch).argmax(dim=1)
        correct += int((predictions == labels[start : start + 512]).sum())
    return correct / len(inputs)


def train_toy(
    train_path: str | Path,
    test_path: str | Path,
    k: int,
    epochs: int = 6,
    seed: int = 0,
    batch_size: int = 64,
    learning_rate: float = 2e-3,
) -> ToyRunResult:
    """Train on the train split, report accuracy on both splits."""
    start_time = time.perf_counter()
    train_inputs, train_labels = load_examples(train_path, k)
    test_inputs, test_labels = load_examples(test_path, k)

    manifest = load_manifest(train_path)
    digests = {
        key: manifest[key]
        for key in ("vocab_digest", "merge_digest", "split_seed")
        if key in manifest
    }

    torch.manual_seed(seed)
    torch.set_num_threads(1)
    x_train = torch.tensor(train_inputs, dtype=torch.long)
    y_train = torch.tensor(train_labels, dtype=torch.long)
    x_test = torch.tensor(test_inputs, dtype=torch.long)
    y_test = torch.tensor(test_labels, dtype=torch.long)

    vocab_size = int(max(x_train.max(), x_test.max())) + 1
    model = TokenSequenceClassifier(vocab_size, k)
    optimizer = torch.optim.Adam(model.parameters(), lr=learning_rate)
    loss_fn = nn.CrossEntropyLoss()

    for epoch in range(epochs):
        model.train()
        order = torch.randperm(
            len(x_train), generator=torch.Generator().manual_seed(seed * 10_007 + epoch)
        )
        for start in range(0, len(order), batch_size):
            batch = order[start : start + batch_size]
            optimizer.zero_grad()
            loss = loss_fn(model(x_train[batch]), y_train[batch])
            loss.backward()
            optimizer.step()

    return ToyRunResult(
        k=k,
        train_accuracy=_accuracy(model, x_train, y_train),
        test_accuracy=_accuracy(model, x_test, y_test),
        n_train=len(x_train),
        n_test=len(x_test),
        wall_seconds=time.perf_counter() - start_time,
        digests=digests,
        seed=seed,
        epochs=epochs,
    )
