#!/usr/bin/env python3.12
"""
manifest

Run manifests: the resolved configuration plus content hashes of every
input document, so a result directory records exactly what produced it.

Author: transit-control maintainers

Date: 17.10.2026
"""

import hashlib
import json
import logging
import os
import platform
from typing import Any, Iterable

import numpy as np

logger = logging.getLogger(__name__)


def blob_hash(data: bytes) -> str:
    """Git-style object id: sha1 over 'blob <len>\\0' followed by the bytes."""
    header = f"blob {len(data)}\0".encode()
    return hashlib.sha1(header + data).hexdigest()


def file_hash(path: str) -> str:
    with open(path, "rb") as file:
        return blob_hash(file.read())


def write_run_manifest(cfg: dict[str, Any], fixture_paths: Iterable[str], out: str,
                       extra: dict[str, Any] | None = None) -> dict[str, Any]:
    """Write the manifest JSON to `out` and return it."""
    fixtures = {}
    for path in sorted(set(fixture_paths)):
        fixtures[os.path.basename(path)] = {"path": path, "blob": file_hash(path)}

    manifest = {
        "config": cfg,
        "fixtures": fixtures,
        "python": platform.python_version(),
        "numpy": np.__version__,
        **(extra or {}),
    }
    with open(out, "w") as file:
        json.dump(manifest, file, indent=2, sort_keys=True, default=str)
    logger.debug("Run manifest written to %s", out)
    return manifest
