"""Worker-count policy shared by the parallel searches."""

from __future__ import annotations

import os


def thread_count(default: int | None = None) -> int:
    """Threads to use: ``STS_THREADS`` if set and positive, else the CPU count."""
    raw = os.environ.get("STS_THREADS", "").strip()
    if raw:
        try:
            n = int(raw)
        except ValueError:
            n = 0
        if n > 0:
            return n
    return default if default is not None else max(1, os.cpu_count() or 1)
