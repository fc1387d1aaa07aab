"""Exception types shared across the toolkit."""


class DnatokError(Exception):
    """Base class for data-level errors raised by this package."""


class MalformedFile(DnatokError):
    """Input file is missing or cannot be parsed under the declared format."""


class EmptyCorpus(DnatokError):
    """No usable A/C/G/T content was found."""


class SequenceTooShort(DnatokError):
    """Sequence is shorter than the requested k."""


class CorpusTooLarge(DnatokError):
    """Corpus exceeds the size cap of the naive trainer."""


class UnknownToken(DnatokError):
    """Token string is absent from the vocabulary (strict mode)."""


class LossyEncoding(DnatokError):
    """Encoding contains [UNK] ids and cannot be decoded back to bases."""


class RegionTooSmall(DnatokError):
    """K-mer region is shorter than the masking span."""


class WindowTooShort(DnatokError):
    """Window does not cover the input prefix plus the label k-mer."""


class TokenBudgetExceeded(DnatokError):
    """Encoded example is longer than the fixed token budget."""


class InvalidBase(DnatokError):
    """Character outside the A/C/G/T alphabet."""


class EmptyStream(DnatokError):
    """Token stream yielded nothing to count."""
