"""Disk cache for expensive rational series.

Entries are keyed by a hash of (target, quantity); each file records the order
it was computed to. A lookup at a higher order is a miss, a lookup at a lower
order returns the stored series truncated. Writes go through a temporary file
and an atomic rename.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable

from .cohring import CompleteIntersection
from .series import QSeries

log = logging.getLogger(__name__)

ENV_VAR = "QMAPWC_CACHE_DIR"


def resolve_cache_dir(flag: str | None) -> Path | None:
    value = flag or os.environ.get(ENV_VAR)
    return Path(value) if value else None


class SeriesCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def key(self, target: CompleteIntersection, quantity: str) -> str:
        blob = json.dumps({"target": target.to_json(), "quantity": quantity}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def path(self, target, quantity) -> Path:
        return self.directory / f"{self.key(target, quantity)}.json"

    def _load(self, target, quantity) -> QSeries | None:
        path = self.path(target, quantity)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            if data["target"] != target.to_json() or data["quantity"] != quantity:
                raise ValueError("entry does not match its key")
            return QSeries.from_json(data["series"])
        except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
            log.warning("corrupt cache entry %s (%s); recomputing", path, exc)
            return None

    def get(self, target: CompleteIntersection, quantity: str, order: int) -> QSeries | None:
        s = self._load(target, quantity)
        if s is None or s.order < order:
            return None
        return s.truncate(order)

    def put(self, target: CompleteIntersection, quantity: str, series: QSeries) -> QSeries:
        existing = self._load(target, quantity)
        if existing is not None and existing.order > series.order:
            return existing
        self.directory.mkdir(parents=True, exist_ok=True)
        payload = {"target": target.to_json(), "quantity": quantity, "series": series.to_json()}
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, sort_keys=True)
            os.replace(tmp, self.path(target, quantity))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return series

    def fetch(self, target, quantity: str, order: int, compute: Callable[[int], QSeries]) -> QSeries:
        hit = self.get(target, quantity, order)
        if hit is not None:
            return hit
        return self.put(target, quantity, compute(order)).truncate(order)

