"""Hashing, seed derivation and canonical serialization helpers."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def canonical_json(payload: Any) -> str:
    """Deterministic JSON: sorted keys, no whitespace variance, repr floats."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False)


def config_hash(payload: Any) -> str:
    return sha256_bytes(canonical_json(payload).encode("utf-8"))


def dataset_hash(manifest_path: Path) -> str:
    """Hash of the manifest bytes plus every referenced image, in row order."""
    from .manifest import read_manifest

    manifest_path = Path(manifest_path)
    digest = hashlib.sha256()
    digest.update(manifest_path.read_bytes())
    base = manifest_path.parent
    for row in read_manifest(manifest_path):
        image_file = base / row.image_path
        digest.update(image_file.read_bytes())
    return digest.hexdigest()


def derive_seed(*parts: Any) -> int:
    """Stable 63-bit seed derived from arbitrary labeled parts."""
    text = "|".join(str(p) for p in parts)
    raw = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(raw[:8], "big") >> 1
