"""Training samplers: endless record batches drawn by seeded RNG.

The unique sampler draws uniformly from the deduplicated records; the
weighted sampler draws proportionally to each record's pre-dedup
multiplicity, recovering the natural game distribution.
"""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from .records import Record

SAMPLER_MODES = ("unique", "weighted")


class RecordSampler:
    def __init__(
        self,
        records: Sequence[Record],
        mode: str = "unique",
        seed: int = 0,
        multiplicities: Sequence[int] | None = None,
    ) -> None:
        if mode not in SAMPLER_MODES:
            raise ValueError(f"unknown sampler mode {mode!r}")
        if not records:
            raise ValueError("cannot sample from an empty record set")
        self.records = list(records)
        self.mode = mode
        self._rng = np.random.default_rng(seed)
        self._cumulative: np.ndarray | None = None
        if mode == "weighted":
            if multiplicities is None:
                raise ValueError("weighted mode requires per-record multiplicities")
            if len(multiplicities) != len(records):
                raise ValueError("multiplicity count does not match record count")
            weights = np.asarray(multiplicities, dtype=np.float64)
            if np.any(weights <= 0):
                raise ValueError("multiplicities must be positive")
            self._cumulative = np.cumsum(weights / weights.sum())

    def draw_indices(self, n: int) -> np.ndarray:
        if self.mode == "unique":
            return self._rng.integers(0, len(self.records), size=n)
        u = self._rng.random(n)
        return np.searchsorted(self._cumulative, u, side="right")

    def draw(self, n: int) -> list[Record]:
        return [self.records[i] for i in self.draw_indices(n)]

    def batches(self, batch_size: int) -> Iterator[list[Record]]:
        while True:
            yield self.draw(batch_size)
