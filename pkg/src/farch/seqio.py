"""Reading and writing sequence files.

Text format::

    N 4
    T 16
    0 3 2 1 0 3 2 1 0 3 2 1 0 3 2 1

JSON format: ``{"n_channels": 4, "entries": [0, 3, 2, 1, ...]}``.
"""

from __future__ import annotations

import json
from pathlib import Path

from farch.errors import InvalidParameterError
from farch.sequences import ChannelSequence


class SequenceParseError(ValueError):
    pass


def format_text(seq: ChannelSequence) -> str:
    return f"N {seq.n_channels}\nT {seq.period}\n{' '.join(map(str, seq.tolist()))}\n"


def format_json(seq: ChannelSequence) -> str:
    return json.dumps({"n_channels": seq.n_channels, "entries": seq.tolist()}) + "\n"


def _header(line: str, key: str) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != key:
        raise SequenceParseError(f"expected '{key} <int>', got {line!r}")
    try:
        return int(parts[1])
    except ValueError:
        raise SequenceParseError(f"bad integer in {line!r}") from None


def parse_text(text: str) -> ChannelSequence:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) != 3:
        raise SequenceParseError(f"expected 3 non-empty lines, got {len(lines)}")
    n = _header(lines[0], "N")
    t = _header(lines[1], "T")
    try:
        entries = [int(tok) for tok in lines[2].split()]
    except ValueError:
        raise SequenceParseError("entries must be integers") from None
    if len(entries) != t:
        raise SequenceParseError(f"header says T={t} but {len(entries)} entries given")
    try:
        return ChannelSequence(n, entries)
    except InvalidParameterError as exc:
        raise SequenceParseError(str(exc)) from None


def parse_json(text: str) -> ChannelSequence:
    try:
        obj = json.loads(text)
        n = obj["n_channels"]
        entries = obj["entries"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise SequenceParseError(f"malformed sequence JSON: {exc}") from None
    if not isinstance(n, int) or not isinstance(entries, list) or not all(
        isinstance(e, int) and not isinstance(e, bool) for e in entries
    ):
        raise SequenceParseError("n_channels must be an int and entries a list of ints")
    try:
        return ChannelSequence(n, entries)
    except InvalidParameterError as exc:
        raise SequenceParseError(str(exc)) from None


def parse(text: str) -> ChannelSequence:
    """Dispatch on content: JSON objects start with '{'."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)


def read_sequence(path: str | Path) -> ChannelSequence:
    return parse(Path(path).read_text())


def write_sequence(seq: ChannelSequence, path: str | Path) -> None:
    path = Path(path)
    body = format_json(seq) if path.suffix == ".json" else format_text(seq)
    path.write_text(body)
