"""A deliberately small classifier over hybrid token id sequences."""
from __future__ import annotations

import torch
from torch import nn

MAX_PARAMETERS = 1_000_000

# [PAD] id in the emitted datasets (specials occupy ids 0-4).
PAD_ID = 3


class TokenSequenceClassifier(nn.Module):
    """Embedding followed by a position-aware encoder and a 4^k-way head.

    Flattening the embedded sequence keeps every position individually
    addressable, which is what the fixed-layout next-k-mer inputs need; the
    whole model stays under MAX_PARAMETERS for every supported k.
    """

    def __init__(
        self,
        vocab_size: int,
        k: int,
        seq_len: int = 80,
        embedding_dim: int = 24,
        hidden_dim: int = 128,
    ):
        super().__init__()
        self.embedding = nn.Embedding(vocab_size, embedding_dim, padding_idx=PAD_ID)
        self.encoder = nn.Sequential(
            nn.Flatten(),
            nn.Linear(seq_len * embedding_dim, hidden_dim),
            nn.ReLU(),
        )
        self.head = nn.Linear(hidden_dim, 4**k)
        n_params = self.parameter_count()
        if n_params > MAX_PARAMETERS:
            raise ValueError(
                f"model has {n_params} parameters, over the {MAX_PARAMETERS} budget"
            )

    def parameter_count(self) -> int:
        return sum(p.numel() for p in self.parameters())

    def forward(self, token_ids: torch.Tensor) -> torch.Tensor:
        return self.head(self.encoder(self.embedding(token_ids)))
