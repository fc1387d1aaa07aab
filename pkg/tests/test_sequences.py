import gzip
import warnings

import pytest
from hypothesis import given, strategies as st

import dnatok as dt
from dnatok.errors import EmptyCorpus, MalformedFile
from dnatok.sequences import detect_format, sequence_record, split_items

bases_text = st.text(alphabet="ACGT", min_size=0, max_size=400)


def write(tmp_path, name, content, compress=False):
    path = tmp_path / name
    if compress:
        path.write_bytes(gzip.compress(content.encode()))
    else:
        path.write_text(content)
    return path


class TestLoadSequences:
    def test_fasta_n_splits_runs(self, tmp_path):
        path = write(tmp_path, "a.fa", ">chr1\nACGTN\nACGT\n")
        seqs = dt.load_sequences(path, "fasta")
        assert [(s.bases, s.offset) for s in seqs] == [("ACGT", 0), ("ACGT", 5)]
        assert all(s.source_id == "chr1" for s in seqs)

    def test_plain_uppercases(self, tmp_path):
        path = write(tmp_path, "a.txt", "acgt\n")
        seqs = dt.load_sequences(path, "plain")
        assert len(seqs) == 1
        assert seqs[0].bases == "ACGT"
        assert seqs[0].offset == 0

    def test_fasta_without_acgt_is_empty_corpus(self, tmp_path):
        path = write(tmp_path, "a.fa", ">chr1\nNNNNN\n")
        with pytest.raises(EmptyCorpus):
            dt.load_sequences(path, "fasta")

    def test_missing_file(self, tmp_path):
        with pytest.raises(MalformedFile, match="not found"):
            dt.load_sequences(tmp_path / "nope.fa", "fasta")

    def test_fasta_data_before_header(self, tmp_path):
        path = write(tmp_path, "a.fa", "ACGT\n>chr1\nACGT\n")
        with pytest.raises(MalformedFile):
            dt.load_sequences(path, "fasta")

    def test_gzip_by_extension(self, tmp_path):
        path = write(tmp_path, "a.fa.gz", ">x\nACGTACGT\n", compress=True)
        seqs = dt.load_sequences(path, "fasta")
        assert seqs[0].bases == "ACGTACGT"

    def test_plain_line_records_and_offsets(self, tmp_path):
        path = write(tmp_path, "a.txt", "ACGT\n\nNNACG\n")
        seqs = dt.load_sequences(path, "plain")
        assert [(s.source_id, s.offset, s.bases) for s in seqs] == [
            ("line1", 0, "ACGT"),
            ("line3", 2, "ACG"),
        ]

    def test_bad_format_value(self, tmp_path):
        path = write(tmp_path, "a.txt", "ACGT\n")
        with pytest.raises(ValueError):
            dt.load_sequences(path, "bogus")

    def test_detect_format(self, tmp_path):
        assert detect_format(write(tmp_path, "a.fa", ">x\nACGT\n")) == "fasta"
        assert detect_format(write(tmp_path, "b.txt", "ACGT\n")) == "plain"


class TestTypes:
    def test_rejects_non_acgt(self):
        with pytest.raises(ValueError):
            dt.NucleotideSequence("ACGN", "x", 0)

    def test_rejects_lowercase(self):
        with pytest.raises(ValueError):
            dt.NucleotideSequence("acgt", "x", 0)

    def test_rejects_negative_offset(self):
        with pytest.raises(ValueError):
            dt.NucleotideSequence("ACGT", "x", -1)

    def test_segment_length_must_match(self):
        seq = dt.NucleotideSequence("ACGT", "x", 0)
        with pytest.raises(ValueError):
            dt.Segment(seq, 305)
        assert dt.Segment(seq, 4).bases == "ACGT"

    def test_record_shape(self):
        seq = dt.NucleotideSequence("ACGT", "chr9", 12)
        assert sequence_record(seq) == {"source_id": "chr9", "offset": 12, "bases": "ACGT"}
        assert sequence_record(dt.Segment(seq, 4)) == sequence_record(seq)


class TestSegment:
    def test_exact_fit(self, rng):
        seqs = [dt.NucleotideSequence("A" * 305, "x", 0)]
        assert len(dt.segment(seqs, 305)) == 1

    def test_700_gives_two_and_drops_tail(self):
        seqs = [dt.NucleotideSequence("A" * 700, "x", 0)]
        segs = dt.segment(seqs, 305)
        assert [s.offset for s in segs] == [0, 305]
        assert all(len(s.bases) == 305 for s in segs)

    def test_short_sequence_gives_nothing(self):
        seqs = [dt.NucleotideSequence("A" * 304, "x", 0)]
        assert dt.segment(seqs, 305) == []

    def test_length_must_be_positive(self):
        with pytest.raises(ValueError):
            dt.segment([], 0)

    @given(bases_text, st.integers(min_value=1, max_value=50))
    def test_reconstruction(self, bases, length):
        if not bases:
            return
        seq = dt.NucleotideSequence(bases, "x", 0)
        segs = dt.segment([seq], length)
        covered = "".join(s.bases for s in segs)
        tail = bases[len(covered):]
        assert covered + tail == bases
        assert len(tail) < length
        # offsets are contiguous multiples of length
        assert [s.offset for s in segs] == [i * length for i in range(len(segs))]


class TestExtractWindows:
    def test_single_window_keeps_prefix(self):
        bases = "ACGT" * 128  # 512 nt
        seq = dt.NucleotideSequence(bases[:510], "x", 0)
        out = dt.extract_windows([seq], window=510, keep=56, stride=1, count=1, seed=7)
        assert out == [dt.NucleotideSequence(bases[:56], "x", 0)]

    def test_candidate_count_is_length_minus_window_plus_one(self):
        seq = dt.NucleotideSequence("A" * 511, "x", 0)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            out = dt.extract_windows([seq], window=510, keep=56, stride=1, count=10, seed=0)
        assert len(out) == 2

    def test_warns_when_fewer_than_count(self):
        seq = dt.NucleotideSequence("A" * 510, "x", 0)
        with pytest.warns(UserWarning, match="only 1"):
            dt.extract_windows([seq], window=510, keep=56, stride=1, count=5, seed=0)

    def test_deterministic(self, rng):
        from seqgen import random_bases

        seq = dt.NucleotideSequence(random_bases(rng, 2000), "x", 0)
        a = dt.extract_windows([seq], window=510, keep=56, stride=3, count=20, seed=11)
        b = dt.extract_windows([seq], window=510, keep=56, stride=3, count=20, seed=11)
        assert a == b

    def test_parameter_validation(self):
        seq = dt.NucleotideSequence("A" * 600, "x", 0)
        with pytest.raises(ValueError):
            dt.extract_windows([seq], window=10, keep=20, stride=1, count=1, seed=0)
        with pytest.raises(ValueError):
            dt.extract_windows([seq], stride=0, count=1, seed=0)
        with pytest.raises(ValueError):
            dt.extract_windows([seq], stride=1, count=0, seed=0)


class TestSplit:
    def _segments(self, n):
        return [
            dt.Segment(dt.NucleotideSequence("ACGT", f"s{i}", 0), 4) for i in range(n)
        ]

    def test_80_20(self):
        split = dt.split(self._segments(10), 0.8, seed=3)
        assert (len(split.train), len(split.test)) == (8, 2)

    def test_disjoint_and_complete(self):
        segs = self._segments(25)
        split = dt.split(segs, 0.8, seed=5)
        key = lambda s: (s.source_id, s.offset)
        train_keys = {key(s) for s in split.train}
        test_keys = {key(s) for s in split.test}
        assert not train_keys & test_keys
        assert train_keys | test_keys == {key(s) for s in segs}

    def test_same_seed_same_split(self):
        segs = self._segments(40)
        assert dt.split(segs, 0.8, 9) == dt.split(segs, 0.8, 9)
        assert dt.split(segs, 0.8, 9) != dt.split(segs, 0.8, 10)

    def test_fraction_bounds(self):
        with pytest.raises(ValueError):
            split_items([1, 2], 0.0, 0)
        with pytest.raises(ValueError):
            split_items([1, 2], 1.0, 0)

    @given(st.integers(min_value=2, max_value=200), st.integers(min_value=0, max_value=2**32))
    def test_round_split_sizes(self, n, seed):
        train, test = split_items(list(range(n)), 0.8, seed)
        assert len(train) == round(0.8 * n)
        assert len(train) + len(test) == n
