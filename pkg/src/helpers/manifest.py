"""
Persisting and re-verifying Fraïssé runs.

A run directory holds the canonical JSON of the final cube, the history,
the witness chains, the coverage report and the certificate, plus a
manifest with the sha256 of each file. The manifest carries no timestamp;
only the directory name does.
"""

import logging
import os
from datetime import datetime, timezone
from typing import Callable, Dict, List, Optional

from fraisse.certificate import Certificate
from fraisse.coverage import CoverageReport
from fraisse.state import RunState
from helpers.serialization import (
    StructureDocumentError,
    VERSION,
    canonical_json,
    cube_to_document,
    load_document,
    stable_hash,
    stage_maps_to_document,
)
from models.types import Document

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"
STAGES_DIR = "stages"


class ManifestError(StructureDocumentError):
    """Raised when a run directory or its manifest cannot be read."""

    code = "manifest"


def utc_stamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%SZ")


def run_directory(out: str, seed: int, stamp: Callable[[], str] = utc_stamp) -> str:
    return os.path.join(out, f"{seed}-{stamp()}")


def history_document(state: RunState) -> Document:
    return {
        "stages": state.stage,
        "history": [
            dict(stage_maps_to_document(maps), stage=i) for i, maps in enumerate(state.history)
        ],
    }


def witnesses_document(state: RunState) -> Document:
    return {"stage": state.stage, "chains": [c.to_document() for c in state.chains]}


def stage_filename(i: int) -> str:
    return f"stage-{i:04d}.json"


def run_files(
    state: RunState,
    certificate: Certificate,
    coverage: CoverageReport,
) -> Dict[str, str]:
    """
    Canonical text of every file of a run, keyed by relative path.

    Args:
        state (RunState): Final state.
        certificate (Certificate): Certificate of the final stage.
        coverage (CoverageReport): Coverage of the final stage.

    Returns:
        dict[str, str]: Relative path to file content, manifest excluded.
    """
    family = state.config.family
    files = {
        "final-cube.json": canonical_json(cube_to_document(state.cube, family)),
        "history.json": canonical_json(history_document(state)),
        "witnesses.json": canonical_json(witnesses_document(state)),
        "coverage.json": canonical_json(coverage.to_document()),
        "certificate.json": canonical_json(certificate.to_document()),
    }
    if state.config.keep_stages:
        for i, cube in enumerate(state.stages):
            files[f"{STAGES_DIR}/{stage_filename(i)}"] = canonical_json(cube_to_document(cube, family))
    return files


def manifest_document(
    state: RunState,
    certificate: Certificate,
    coverage: CoverageReport,
    files: Dict[str, str],
    aborted: Optional[str] = None,
) -> Document:
    return {
        "version": VERSION,
        "config": state.config.to_document(),
        "stages": state.stage,
        "rounds_completed": state.rounds_completed,
        "aborted": aborted,
        "files": {name: stable_hash(text) for name, text in sorted(files.items())},
        "certificate": {
            "status": certificate.status.value,
            "stage": certificate.stage,
            "witnessed_pairs": len(certificate.witnesses),
            "failed_pair": list(certificate.failed_pair) if certificate.failed_pair else None,
        },
        "coverage": {"realized": int(len(coverage.realized())), "total": len(coverage)},
    }


def write_run(
    directory: str,
    state: RunState,
    certificate: Certificate,
    coverage: CoverageReport,
    aborted: Optional[str] = None,
) -> Document:
    """
    Write a run directory.

    Returns:
        dict: The manifest written to ``manifest.json``.
    """
    files = run_files(state, certificate, coverage)
    manifest = manifest_document(state, certificate, coverage, files, aborted)
    os.makedirs(directory, exist_ok=True)
    for name, text in files.items():
        path = os.path.join(directory, *name.split("/"))
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    with open(os.path.join(directory, MANIFEST), "w", encoding="utf-8") as f:
        f.write(canonical_json(manifest))
    logger.info("wrote %d files and the manifest to %s", len(files), directory)
    return manifest


def read_manifest(directory: str) -> Document:
    path = os.path.join(directory, MANIFEST)
    if not os.path.isfile(path):
        raise ManifestError(f"no {MANIFEST} in {directory}")
    with open(path, "rb") as f:
        manifest = load_document(f.read())
    if not isinstance(manifest.get("files"), dict):
        raise ManifestError(f"{path} has no file table")
    return manifest


def verify_run(directory: str) -> List[str]:
    """
    Re-hash every file the manifest references.

    Returns:
        list[str]: One message per missing or altered file; empty when the run verifies.

    Raises:
        ManifestError: If the manifest is missing or malformed.
    """
    problems = []
    for name, digest in sorted(read_manifest(directory)["files"].items()):
        path = os.path.join(directory, *name.split("/"))
        if not os.path.isfile(path):
            problems.append(f"{name}: missing")
            continue
        with open(path, "r", encoding="utf-8") as f:
            actual = stable_hash(f.read())
        if actual != digest:
            problems.append(f"{name}: sha256 {actual} does not match {digest}")
    return problems


def is_run_directory(path: str) -> bool:
    return os.path.isfile(os.path.join(path, MANIFEST))
