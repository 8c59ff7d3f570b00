"""Allocation accountant for the HAC phase.

Counts entries (array elements) of the named working buffers that the
clustering routines register, tracking the running total and its peak. This
is a deliberate, documented approximation for cross-run comparison: it
captures every O(c_k^2) or O(n + m) buffer the algorithms create but ignores
constant-size temporaries. One entry is one float64/int64, i.e. 8 bytes.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager


class AllocationAccountant:
    """Thread-safe running/peak counter of registered array entries."""

    def __init__(self):
        self._lock = threading.Lock()
        self.current_entries = 0
        self.peak_entries = 0

    def allocate(self, entries: int) -> None:
        with self._lock:
            self.current_entries += int(entries)
            if self.current_entries > self.peak_entries:
                self.peak_entries = self.current_entries

    def release(self, entries: int) -> None:
        with self._lock:
            self.current_entries -= int(entries)

    @contextmanager
    def track(self, entries: int):
        self.allocate(entries)
        try:
            yield
        finally:
            self.release(entries)

    @property
    def peak_mib(self) -> float:
        return self.peak_entries * 8 / 2**20
