"""Corpus statistics: record counts, duplicate and overlap fractions, and
win-percentage histograms (50 buckets)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .records import AVRecord, Record, SVRecord

HISTOGRAM_BUCKETS = 50


@dataclass
class KindStats:
    count: int = 0
    unique_fens: int = 0
    duplicate_fraction: float = 0.0
    win_pct_histogram: list[int] = field(default_factory=list)


@dataclass
class DatasetStats:
    train: dict[str, KindStats]
    test: dict[str, KindStats]
    overlap_fraction: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


def _histogram(values: list[float]) -> list[int]:
    buckets = [0] * HISTOGRAM_BUCKETS
    for v in values:
        idx = min(int(v / 100.0 * HISTOGRAM_BUCKETS), HISTOGRAM_BUCKETS - 1)
        buckets[idx] += 1
    return buckets


def _kind_stats(records: Sequence[Record]) -> dict[str, KindStats]:
    by_kind: dict[str, list[Record]] = {}
    for r in records:
        from .records import record_kind

        by_kind.setdefault(record_kind(r), []).append(r)
    out = {}
    for kind, rs in by_kind.items():
        fens = {r.fen for r in rs}
        wins = [r.win_pct for r in rs if isinstance(r, (AVRecord, SVRecord))]
        out[kind] = KindStats(
            count=len(rs),
            unique_fens=len(fens),
            duplicate_fraction=1.0 - len(fens) / len(rs) if rs else 0.0,
            win_pct_histogram=_histogram(wins),
        )
    return out


def compute_stats(train: Sequence[Record], test: Sequence[Record]) -> DatasetStats:
    """Counts, within-set duplicate fractions, train/test FEN overlap, and
    win-percentage histograms."""
    train_fens = {r.fen for r in train}
    test_fens = {r.fen for r in test}
    overlap = len(test_fens & train_fens) / len(test_fens) if test_fens else 0.0
    return DatasetStats(
        train=_kind_stats(train),
        test=_kind_stats(test),
        overlap_fraction=overlap,
    )
