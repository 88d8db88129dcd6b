"""Ephemeral media lifecycle: registered files, secure deletion, janitor.

Session audio is the only media ever written to disk, and only inside an
ephemeral area that is wiped at session finalize. Secure deletion means
overwrite-with-zeros then unlink, and deletion is verified. A recovery
sweep at startup destroys anything a crashed session left behind.
"""
from __future__ import annotations

import os
from pathlib import Path


def secure_delete(path: str | Path) -> None:
    """Overwrite the file with zeros, flush, then unlink; verify removal."""
    path = Path(path)
    if path.exists():
        size = path.stat().st_size
        with open(path, "r+b") as fh:
            fh.write(b"\x00" * size)
            fh.flush()
            os.fsync(fh.fileno())
        path.unlink()
    if path.exists():
        raise RuntimeError(f"secure delete failed: {path} still exists")


class EphemeralStore:
    """A directory of registered ephemeral files for one session."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._registered: set[Path] = set()

    def register(self, name: str) -> Path:
        path = self.directory / name
        self._registered.add(path)
        return path

    def wipe(self) -> int:
        """Securely delete every file in the area, registered or not."""
        deleted = 0
        if self.directory.exists():
            for path in sorted(self.directory.rglob("*")):
                if path.is_file():
                    secure_delete(path)
                    deleted += 1
        self._registered.clear()
        return deleted

    def is_empty(self) -> bool:
        if not self.directory.exists():
            return True
        return not any(p.is_file() for p in self.directory.rglob("*"))


def recovery_sweep(root: str | Path) -> int:
    """Securely delete all orphaned ephemeral files under ``root``."""
    root = Path(root)
    deleted = 0
    if root.exists():
        for path in sorted(root.rglob("*")):
            if path.is_file():
                secure_delete(path)
                deleted += 1
    return deleted
