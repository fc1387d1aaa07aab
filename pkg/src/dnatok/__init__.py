"""dnatok: hybrid k-mer + BPE tokenization pipelines for DNA language models."""

from .bpe import (
    BpeEncoder,
    MergeRule,
    MergeTable,
    bpe_encode,
    bpe_encode_reference,
    bpe_oracle_train,
    bpe_train,
)
from .kmers import KmerConfig, kmer_tokenize, kmer_vocabulary
from .masking import IGNORE_INDEX, MaskedExample, MaskingConfig, emit_mlm_corpus, mask_hybrid
from .nextkmer import (
    NextKmerExample,
    emit_nextkmer_dataset,
    kmer_of,
    label_of,
    make_example,
)
from .sequences import (
    CorpusSplit,
    NucleotideSequence,
    Segment,
    extract_windows,
    load_sequences,
    segment,
    split,
)
from .stats import compare_tokenizers, compute_stats, gini_coefficient
from .vocab import (
    CLS_ID,
    MASK_ID,
    PAD_ID,
    SEP_ID,
    SPECIAL_TOKENS,
    UNK_ID,
    HybridEncoding,
    HybridTokenizer,
    Vocabulary,
    build_vocabulary,
    decode_region,
    hybrid_encode,
)

__all__ = [
    "BpeEncoder",
    "CLS_ID",
    "CorpusSplit",
    "HybridEncoding",
    "HybridTokenizer",
    "IGNORE_INDEX",
    "KmerConfig",
    "MASK_ID",
    "MaskedExample",
    "MaskingConfig",
    "MergeRule",
    "MergeTable",
    "NextKmerExample",
    "NucleotideSequence",
    "PAD_ID",
    "SEP_ID",
    "SPECIAL_TOKENS",
    "Segment",
    "UNK_ID",
    "Vocabulary",
    "bpe_encode",
    "bpe_encode_reference",
    "bpe_oracle_train",
    "bpe_train",
    "build_vocabulary",
    "compare_tokenizers",
    "compute_stats",
    "decode_region",
    "emit_mlm_corpus",
    "emit_nextkmer_dataset",
    "extract_windows",
    "gini_coefficient",
    "hybrid_encode",
    "kmer_of",
    "kmer_tokenize",
    "kmer_vocabulary",
    "label_of",
    "load_sequences",
    "make_example",
    "mask_hybrid",
    "segment",
    "split",
]

__version__ = "0.1.0"
