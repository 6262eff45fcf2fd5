"""
Field table cache
Memoizes GF(p^k) addition/multiplication tables in SQLite
"""

import json
import logging
import sqlite3
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path
from typing import Dict, Optional

from gf import DEFAULT_MAX_ORDER, FieldTable, field_create


class FieldTableCache:
    """SQLite-backed memo of FieldTable objects keyed by (p, k)"""

    DB_NAME = "field_tables.db"

    def __init__(self, cache_dir: str = "./data/cache"):
        """
        Initialize the cache

        Args:
            cache_dir: Directory holding field_tables.db
        """
        self.db_path = str(Path(cache_dir) / self.DB_NAME)
        self.logger = logging.getLogger(__name__)

        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        self._init_schema()

    @contextmanager
    def get_connection(self):
        """Context manager for database connections"""
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        try:
            yield conn
            conn.commit()
        except Exception:
            conn.rollback()
            raise
        finally:
            conn.close()

    def _init_schema(self):
        with self.get_connection() as conn:
            conn.execute("""
                CREATE TABLE IF NOT EXISTS field_tables (
                    p INTEGER NOT NULL,
                    k INTEGER NOT NULL,
                    modulus TEXT NOT NULL,  -- JSON list, low degree first
                    payload TEXT NOT NULL,  -- FieldTable.to_dict() as JSON
                    created_at TEXT NOT NULL,
                    PRIMARY KEY (p, k)
                )
            """)
        self.logger.debug(f"Field table cache at {self.db_path}")

    def get(self, p: int, k: int) -> Optional[FieldTable]:
        with self.get_connection() as conn:
            row = conn.execute("SELECT payload FROM field_tables WHERE p = ? AND k = ?", (p, k)).fetchone()
        if row is None:
            return None
        return FieldTable.from_dict(json.loads(row["payload"]))

    def put(self, field: FieldTable):
        with self.get_connection() as conn:
            conn.execute("""
                INSERT OR REPLACE INTO field_tables (p, k, modulus, payload, created_at)
                VALUES (?, ?, ?, ?, ?)
            """, (field.p, field.k, json.dumps(list(field.modulus)),
                  json.dumps(field.to_dict()), datetime.now().isoformat()))

    def get_or_create(self, p: int, k: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> FieldTable:
        """
        Cached field, built with field_create on a miss

        Args:
            p: Prime characteristic
            k: Extension degree
            max_order: Cap passed to field_create

        Returns:
            FieldTable
        """
        cached = self.get(p, k)
        if cached is not None:
            self.logger.debug(f"Cache hit for GF({p}^{k})")
            return cached

        field = field_create(p, k, max_order=max_order)
        self.put(field)
        self.logger.info(f"Cached GF({p}^{k})")
        return field

    def get_stats(self) -> Dict:
        """
        Get cache statistics

        Returns:
            Dictionary with the number of cached fields and their orders
        """
        with self.get_connection() as conn:
            rows = conn.execute("SELECT p, k FROM field_tables ORDER BY p, k").fetchall()
        return {
            'fields_count': len(rows),
            'orders': [row['p'] ** row['k'] for row in rows],
            'db_path': self.db_path,
        }

    def clear(self) -> int:
        """Delete every cached table; returns the number removed"""
        with self.get_connection() as conn:
            removed = conn.execute("DELETE FROM field_tables").rowcount
        self.logger.info(f"Cleared {removed} cached field tables")
        return removed
