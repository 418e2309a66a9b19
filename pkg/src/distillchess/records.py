"""Supervised example types and their newline-delimited text storage.

One record per line, comma separated; FEN fields contain spaces but never
commas. Win percentages are printed with exactly six decimal digits. The
first line is a header carrying format version and record kind. Multiplicity
counts (pre-dedup occurrence counts, needed by the weighted sampler) live in
a companion "<path>.mult" file with one integer per record line.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

FORMAT_VERSION = 1
RECORD_KINDS = ("av", "sv", "bc")


class RecordFormatError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class AVRecord:
    fen: str
    move: str
    win_pct: float


@dataclass(frozen=True, slots=True)
class SVRecord:
    fen: str
    win_pct: float


@dataclass(frozen=True, slots=True)
class BCRecord:
    fen: str
    move: str


Record = Union[AVRecord, SVRecord, BCRecord]

_KIND_OF_TYPE = {AVRecord: "av", SVRecord: "sv", BCRecord: "bc"}


def record_kind(r: Record) -> str:
    return _KIND_OF_TYPE[type(r)]


def _format(r: Record) -> str:
    if isinstance(r, AVRecord):
        return f"{r.fen},{r.move},{r.win_pct:.6f}"
    if isinstance(r, SVRecord):
        return f"{r.fen},{r.win_pct:.6f}"
    return f"{r.fen},{r.move}"


def _parse(line: str, kind: str, lineno: int) -> Record:
    parts = line.split(",")
    try:
        if kind == "av":
            fen, move, win = parts
            return AVRecord(fen, move, float(win))
        if kind == "sv":
            fen, win = parts
            return SVRecord(fen, float(win))
        fen, move = parts
        return BCRecord(fen, move)
    except ValueError as exc:
        raise RecordFormatError(f"line {lineno}: cannot parse {kind} record: {exc}") from exc


def write_records(
    path: str | os.PathLike,
    kind: str,
    records: Iterable[Record],
    multiplicities: Iterable[int] | None = None,
) -> int:
    """Write records (and optional multiplicities); returns the record count."""
    if kind not in RECORD_KINDS:
        raise ValueError(f"unknown record kind {kind!r}")
    count = 0
    mult_list: list[int] = []
    mults = iter(multiplicities) if multiplicities is not None else None
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"records,{FORMAT_VERSION},{kind}\n")
        for r in records:
            if record_kind(r) != kind:
                raise ValueError(f"{record_kind(r)} record in a {kind} file")
            fh.write(_format(r) + "\n")
            count += 1
            if mults is not None:
                mult_list.append(next(mults))
    if multiplicities is not None:
        with open(str(path) + ".mult", "w", encoding="utf-8") as fh:
            fh.write(f"mult,{FORMAT_VERSION},{kind}\n")
            for m in mult_list:
                fh.write(f"{m}\n")
    return count


def read_records(path: str | os.PathLike, kind: str) -> Iterator[Record]:
    if kind not in RECORD_KINDS:
        raise ValueError(f"unknown record kind {kind!r}")
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        if len(header) != 3 or header[0] != "records":
            raise RecordFormatError("missing records header line")
        if header[1] != str(FORMAT_VERSION):
            raise RecordFormatError(f"format version {header[1]} != {FORMAT_VERSION}")
        if header[2] != kind:
            raise RecordFormatError(f"file holds {header[2]} records, expected {kind}")
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if line:
                yield _parse(line, kind, lineno)


def read_multiplicities(path: str | os.PathLike) -> list[int]:
    mult_path = str(path) + ".mult"
    if not os.path.exists(mult_path):
        raise FileNotFoundError(f"no multiplicity file at {mult_path}")
    with open(mult_path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        if len(header) != 3 or header[0] != "mult" or header[1] != str(FORMAT_VERSION):
            raise RecordFormatError("bad multiplicity header line")
        return [int(line) for line in fh if line.strip()]


def shuffle_records(records: Sequence[Record], seed: int) -> list[Record]:
    """Deterministic permutation of the records given the seed."""
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(records))
    return [records[i] for i in order]
