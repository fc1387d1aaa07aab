"""Small file helpers: gzip-aware reading, atomic writes, digests, JSONL."""
from __future__ import annotations

import gzip
import hashlib
import json
import os
import tempfile
from collections.abc import Iterable, Iterator
from contextlib import contextmanager
from pathlib import Path

from .errors import MalformedFile


def read_text(path: str | Path) -> str:
    """Read a text file, transparently decompressing ``.gz`` paths."""
    path = Path(path)
    if not path.is_file():
        raise MalformedFile(f"input file not found: {path}")
    opener = gzip.open if path.suffix == ".gz" else open
    try:
        with opener(path, "rt", encoding="ascii") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError, EOFError) as exc:
        raise MalformedFile(f"could not read {path}: {exc}") from exc


@contextmanager
def atomic_open(path: str | Path) -> Iterator:
    """Open a temp file for writing and rename it onto `path` on success.

    Interrupted runs never leave a partial artifact at the target path.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def atomic_write_text(path: str | Path, text: str) -> None:
    with atomic_open(path) as fh:
        fh.write(text)


def write_jsonl(path: str | Path, records: Iterable[dict]) -> int:
    """Stream dict records to a JSONL file atomically; returns the line count."""
    n = 0
    with atomic_open(path) as fh:
        for rec in records:
            fh.write(json.dumps(rec, separators=(",", ":")))
            fh.write("\n")
            n += 1
    return n


def read_jsonl(path: str | Path) -> Iterator[dict]:
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield json.loads(line)


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def dump_json(obj) -> str:
    """Canonical human-readable JSON used for all non-JSONL artifacts."""
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
