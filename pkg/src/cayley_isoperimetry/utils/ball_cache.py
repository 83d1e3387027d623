import hashlib
import json
import logging
import threading
from pathlib import Path
from typing import List, Optional, Sequence

from cayley_isoperimetry import __version__
from cayley_isoperimetry.db.helpers import get_sql_command
from cayley_isoperimetry.db.schema import BALL_CACHE_COLUMNS, TABLE_BALL_CACHE
from cayley_isoperimetry.db.sqlite import DatabaseManager
from cayley_isoperimetry.groups.base import Element, GroupBackend
from cayley_isoperimetry.groups.symmetric_set import ball_layers
from cayley_isoperimetry.utils.datetime_ops import get_utc_now_formatted

CACHE_FILENAME = "balls.sqlite"

logger = logging.getLogger(__name__)


def ball_key(backend: GroupBackend, generators: Sequence[Element], radius: int) -> str:
    """sha256 over the group descriptor, the generator encodings and the radius."""
    material = json.dumps(
        {
            "group": backend.descriptor,
            "generators": [backend.encode(g) for g in generators],
            "radius": radius,
        },
        sort_keys=True,
    )
    return hashlib.sha256(material.encode("utf-8")).hexdigest()


class BallCache:
    """Persistent store of ball layers keyed by (group, S, radius).

    Entries written by another toolkit version are ignored and overwritten.
    """

    def __init__(self, db: DatabaseManager, version: str = __version__):
        self.db = db
        self.version = version
        self.hits = 0
        self.misses = 0
        self._lock = threading.Lock()
        self.db.execute_ddl(get_sql_command("ball_cache.sql"))

    @classmethod
    def open(cls, cache_dir: Path, version: str = __version__) -> "BallCache":
        return cls(DatabaseManager(Path(cache_dir) / CACHE_FILENAME), version)

    def close(self) -> None:
        self.db.close()

    def purge_stale(self) -> int:
        """Drop entries written by other versions; returns how many went."""
        stale = self.db.select(
            TABLE_BALL_CACHE, ["key"], "version != ?", [self.version]
        )
        if stale:
            self.db.delete(TABLE_BALL_CACHE, "version != ?", [self.version])
        return len(stale)

    def _lookup(self, key: str) -> Optional[str]:
        rows = self.db.select(
            TABLE_BALL_CACHE, ["version", "payload"], "key = ?", [key]
        )
        if not rows:
            return None
        version, payload = rows[0]
        if version != self.version:
            logger.debug(f"Ignoring cached ball {key[:12]} from version {version}")
            return None
        return payload

    def layers(
        self, backend: GroupBackend, generators: Sequence[Element], radius: int
    ) -> List[List[Element]]:
        """Ball layers 0..radius, from the cache when a current entry exists."""
        generators = list(generators)
        key = ball_key(backend, generators, radius)
        payload = self._lookup(key)
        if payload is not None:
            with self._lock:
                self.hits += 1
            return [
                [backend.from_payload(g) for g in layer]
                for layer in json.loads(payload)
            ]

        with self._lock:
            self.misses += 1
        result = ball_layers(backend, generators, radius)
        encoded = json.dumps(
            [[backend.to_payload(g) for g in layer] for layer in result]
        )
        self.db.upsert(
            TABLE_BALL_CACHE,
            BALL_CACHE_COLUMNS,
            [key, self.version, radius, encoded, get_utc_now_formatted()],
        )
        logger.debug(
            f"Cached ball of radius {radius} ({sum(map(len, result))} elements)"
        )
        return result

    def stats(self) -> dict:
        return {"hits": self.hits, "misses": self.misses}
