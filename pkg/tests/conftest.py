import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from seqgen import random_bases

import dnatok as dt

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240901)


@pytest.fixture(scope="session")
def small_table(rng):
    """A 30-cycle merge table trained on a 20 knt synthetic corpus."""
    corpus = [random_bases(rng, 305) for _ in range(64)]
    return dt.bpe_train(corpus, 30)


@pytest.fixture(scope="session")
def vocab6(small_table):
    return dt.build_vocabulary(dt.kmer_vocabulary(6), small_table)


@pytest.fixture(scope="session")
def tokenizer6(vocab6, small_table):
    return dt.HybridTokenizer(vocab6, small_table)


@pytest.fixture()
def make_segment():
    def _make(bases: str, source_id: str = "test", offset: int = 0) -> dt.Segment:
        seq = dt.NucleotideSequence(bases, source_id, offset)
        return dt.Segment.from_sequence(seq)

    return _make
