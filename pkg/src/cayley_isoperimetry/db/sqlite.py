import sqlite3
import threading
from pathlib import Path
from typing import Any, Sequence, Union


class DatabaseManager:
    """
    A class to manage SQLite database operations.
    Methods
    -------
    __init__(db_path: str | Path) -> None
        Opens the connection, creating parent directories when needed.
    close() -> None
        Commits changes and closes the database connection.
    execute_ddl(command: str) -> None
        Executes a DDL (Data Definition Language) command.
    upsert(table: str, columns: list, values: list) -> None
        Inserts a row, replacing any row with the same primary key.
    select(table: str, columns: list, condition: str | None, params: Sequence) -> list
        Selects rows with an optional parameterised condition.
    delete(table: str, condition: str, params: Sequence) -> None
        Deletes rows matching a parameterised condition.
    """

    def __init__(self, db_path: Union[str, Path]) -> None:
        if str(db_path) != ":memory:":
            Path(db_path).parent.mkdir(parents=True, exist_ok=True)
        # shared with worker threads; every statement runs under _lock
        self.conn = sqlite3.connect(str(db_path), check_same_thread=False)
        self._lock = threading.Lock()

    def close(self) -> None:
        with self._lock:
            self.conn.commit()
            self.conn.close()

    def execute_ddl(self, command: str) -> None:
        with self._lock:
            self.conn.execute(command)
            self.conn.commit()

    def upsert(self, table: str, columns: list, values: list) -> None:
        placeholders = ", ".join(["?"] * len(columns))
        columns_str = ", ".join(columns)
        query = (
            f"INSERT OR REPLACE INTO {table} ({columns_str}) "
            f"VALUES ({placeholders})"
        )
        with self._lock:
            self.conn.execute(query, values)
            self.conn.commit()

    def select(
        self,
        table: str,
        columns: list,
        condition: str | None = None,
        params: Sequence[Any] = (),
    ) -> list:
        query = f"SELECT {', '.join(columns)} FROM {table}"
        if condition:
            query += f" WHERE {condition}"
        with self._lock:
            return self.conn.execute(query, tuple(params)).fetchall()

    def delete(self, table: str, condition: str, params: Sequence[Any] = ()) -> None:
        query = f"DELETE FROM {table} WHERE {condition}"
        with self._lock:
            self.conn.execute(query, tuple(params))
            self.conn.commit()
