"""On-disk cache of count series.

One JSON record per line, self-describing (k, num, den, strict, tail_max,
method, counts as decimal strings).  Writes replace the whole file via
write-temp-then-rename, so concurrent readers always see a complete file;
one record is kept per key, the one with the longest counts.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

from .counting import CountSeries
from .words import Threshold

__all__ = ["CountCache"]

log = logging.getLogger(__name__)

Key = tuple[int, int, int, bool, int | None]


def _key(k: int, t: Threshold, tail_max: int | None) -> Key:
    return (k, t.num, t.den, t.strict, tail_max)


def _sort_key(key: Key):
    k, num, den, strict, tail_max = key
    return (k, num, den, strict, tail_max is not None, tail_max or 0)


class CountCache:
    def __init__(self, path: str | Path):
        self.path = Path(path)

    def _load(self) -> dict[Key, CountSeries]:
        entries: dict[Key, CountSeries] = {}
        if not self.path.exists():
            return entries
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    series = CountSeries.from_record(json.loads(line))
                except (ValueError, KeyError, TypeError) as exc:
                    log.warning("skipping corrupt cache record %s:%d (%s)",
                                self.path, lineno, exc)
                    continue
                key = _key(series.k, series.threshold, series.tail_max)
                kept = entries.get(key)
                if kept is None or series.max_length > kept.max_length:
                    entries[key] = series
        return entries

    def get(self, k: int, t: Threshold, tail_max: int | None = None) -> CountSeries | None:
        """Longest stored series for the key, or None."""
        return self._load().get(_key(k, t, tail_max))

    def put(self, series: CountSeries) -> None:
        """Store a series; an existing longer series for the same key wins."""
        entries = self._load()
        key = _key(series.k, series.threshold, series.tail_max)
        kept = entries.get(key)
        if kept is None or series.max_length > kept.max_length:
            entries[key] = series
        self._write(entries)

    def entries(self) -> list[CountSeries]:
        return sorted(self._load().values(),
                      key=lambda s: _sort_key(_key(s.k, s.threshold, s.tail_max)))

    def clear(self) -> None:
        if self.path.exists():
            self.path.unlink()

    def _write(self, entries: dict[Key, CountSeries]) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=self.path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                for key in sorted(entries, key=_sort_key):
                    fh.write(json.dumps(entries[key].to_record()) + "\n")
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
