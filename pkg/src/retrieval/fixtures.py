"""
Recorded payload store: `<root>/<source>/<slug>.<ext>`.
"""

import hashlib
import re
from pathlib import Path
from typing import Optional

_UNSAFE = re.compile(r"[^a-z0-9]+")


def slugify(text: str, max_length: int = 80) -> str:
    """Filesystem-safe name for a query or URL; long inputs get a hash suffix."""
    slug = _UNSAFE.sub("-", text.casefold()).strip("-") or "empty"
    if len(slug) > max_length:
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()[:10]
        slug = f"{slug[:max_length - 11].rstrip('-')}-{digest}"
    return slug


class FixtureStore:
    """Reads and writes recorded payloads."""

    def __init__(self, root: Path):
        self.root = Path(root)

    def path_for(self, source: str, key: str, ext: str) -> Path:
        name = slugify(key)
        return self.root / source / (f"{name}.{ext}" if ext else name)

    def read(self, source: str, key: str, ext: str) -> Optional[bytes]:
        path = self.path_for(source, key, ext)
        if not path.is_file():
            return None
        return path.read_bytes()

    def write(self, source: str, key: str, ext: str, payload: bytes) -> Path:
        path = self.path_for(source, key, ext)
        path.parent.mkdir(parents = True, exist_ok = True)
        path.write_bytes(payload)
        return path
