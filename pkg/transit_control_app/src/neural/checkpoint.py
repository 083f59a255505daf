#!/usr/bin/env python3.12
"""
checkpoint

Binary checkpoint of named parameter sets.

A checkpoint is a JSON manifest plus a sibling `.bin` file that holds every
array as contiguous little-endian float64 values, in manifest order.

Author: transit-control maintainers

Date: 17.10.2026
"""

import json
import logging
import os
from typing import Any

import numpy as np

from transit_control_app.src.errors import CheckpointError
from transit_control_app.src.neural.parameters import ParameterSet

logger = logging.getLogger(__name__)

DTYPE = "<f8"
FORMAT_VERSION = 1


def _blob_path(manifest_path: str) -> str:
    return os.path.splitext(manifest_path)[0] + ".bin"


def save_checkpoint(path: str, sets: dict[str, ParameterSet], step: int, extra: dict[str, Any] | None = None) -> None:
    entries = []
    chunks = []
    offset = 0
    for set_name, params in sets.items():
        for key in params:
            array = np.ascontiguousarray(params[key], dtype=DTYPE)
            entries.append({"set": set_name, "name": key, "shape": list(array.shape), "offset": offset})
            chunks.append(array.ravel())
            offset += array.size

    manifest = {
        "format": FORMAT_VERSION,
        "dtype": DTYPE,
        "step": step,
        "parameters": entries,
        "extra": extra or {},
    }

    blob = np.concatenate(chunks) if chunks else np.zeros(0, dtype=DTYPE)
    with open(_blob_path(path), "wb") as file:
        file.write(blob.astype(DTYPE).tobytes())
    with open(path, "w") as file:
        json.dump(manifest, file, indent=2, sort_keys=True)
    logger.info("Checkpoint written to %s (%d values)", path, offset)


def load_checkpoint(path: str) -> tuple[dict[str, ParameterSet], int, dict[str, Any]]:
    """Parameter sets, step counter and extra metadata stored at `path`."""
    try:
        with open(path, "r") as file:
            manifest = json.load(file)
        with open(_blob_path(path), "rb") as file:
            blob = np.frombuffer(file.read(), dtype=DTYPE)
    except FileNotFoundError as e:
        raise CheckpointError(f"Checkpoint file {e.filename} not found") from e
    except json.JSONDecodeError as e:
        raise CheckpointError(f"Checkpoint manifest {path} is not valid JSON: {e}") from e

    if manifest.get("format") != FORMAT_VERSION:
        raise CheckpointError(f"Unsupported checkpoint format {manifest.get('format')}")

    sets: dict[str, ParameterSet] = {}
    for entry in manifest["parameters"]:
        shape = tuple(entry["shape"])
        size = int(np.prod(shape, dtype=np.int64))
        start = entry["offset"]
        if start + size > blob.size:
            raise CheckpointError(f"Checkpoint data for {entry['set']}.{entry['name']} is truncated")
        params = sets.setdefault(entry["set"], ParameterSet(entry["set"]))
        params.add(entry["name"], blob[start:start + size].reshape(shape).astype(np.float64))

    return sets, int(manifest["step"]), manifest.get("extra", {})
