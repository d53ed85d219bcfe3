"""On-disk store of alpha certificates.

Objects are stored under ``objects/<sha256>.json`` (hash of the canonical
JSON), and ``index.json`` maps ``"<orbit>:<m>"`` to a hash.  All writes go
through a temporary file followed by :func:`os.replace`, so readers never
see partial files.  Entries are re-validated on every read.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .symbolic import AlphaCertificate

log = logging.getLogger(__name__)

DEFAULT_DIR = ".icosa-cache"


def cache_dir() -> Path:
    return Path(os.environ.get("ICOSA_CACHE_DIR", DEFAULT_DIR))


def _canonical(data: dict) -> bytes:
    return json.dumps(data, sort_keys=True, separators=(",", ":")).encode()


def _atomic_write(path: Path, payload: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class CertificateCache:
    def __init__(self, root: Path | str | None = None):
        self.root = Path(root) if root is not None else cache_dir()

    @property
    def index_path(self) -> Path:
        return self.root / "index.json"

    def _index(self) -> dict[str, str]:
        try:
            return json.loads(self.index_path.read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            return {}

    def put(self, cert: AlphaCertificate) -> str:
        data = cert.to_json()
        # timing is not part of the content
        data = {**data, "stats": {k: v for k, v in data["stats"].items() if k != "seconds"}}
        blob = _canonical(data)
        digest = hashlib.sha256(blob).hexdigest()
        obj = self.root / "objects" / f"{digest}.json"
        if not obj.exists():
            _atomic_write(obj, blob)
        index = self._index()
        index[f"{cert.orbit}:{cert.m}"] = digest
        _atomic_write(self.index_path, _canonical(index))
        return digest

    def get(self, orbit: str, m: int) -> AlphaCertificate | None:
        digest = self._index().get(f"{orbit}:{m}")
        if digest is None:
            return None
        obj = self.root / "objects" / f"{digest}.json"
        try:
            blob = obj.read_bytes()
        except FileNotFoundError:
            return None
        if hashlib.sha256(blob).hexdigest() != digest:
            log.warning("cache object %s is corrupt; ignoring", digest)
            return None
        cert = AlphaCertificate.from_json(json.loads(blob))
        problems = cert.validate()
        if problems or (cert.orbit, cert.m) != (orbit, m):
            log.warning("cached certificate for %s:%d rejected: %s", orbit, m, problems)
            return None
        return cert
