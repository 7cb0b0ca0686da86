"""Unit tests for the manifest module in the helpers package."""

import os

import pytest

from fraisse.certificate import certify_irreducible
from fraisse.config import RunConfig
from fraisse.coverage import coverage_report
from fraisse.runner import run
from helpers.manifest import (
    ManifestError,
    history_document,
    is_run_directory,
    read_manifest,
    run_directory,
    run_files,
    stage_filename,
    verify_run,
    write_run,
)
from helpers.serialization import parse_cube, stable_hash
from models.cube import face_order_key

# pylint: disable=redefined-outer-name


@pytest.fixture(scope="module")
def finished():
    state = run(RunConfig("bkl", n=2, k=1, rounds=1, seed=4))
    return state, certify_irreducible(state), coverage_report(state)


@pytest.fixture(scope="module")
def kept():
    state = run(RunConfig("bkl", n=2, k=1, rounds=1, seed=4, keep_stages=True))
    return state, certify_irreducible(state), coverage_report(state)


def test_run_directory_name():
    assert run_directory("out", 7, stamp=lambda: "20260101T000000Z") == os.path.join("out", "7-20260101T000000Z")
    assert stage_filename(3) == "stage-0003.json"


def test_run_files(finished, kept):
    files = run_files(*finished)
    assert sorted(files) == ["certificate.json", "coverage.json", "final-cube.json", "history.json", "witnesses.json"]
    assert parse_cube(files["final-cube.json"]) == finished[0].cube
    with_stages = run_files(*kept)
    assert f"stages/{stage_filename(0)}" in with_stages
    assert len(with_stages) == len(files) + kept[0].stage + 1
    assert with_stages["history.json"] == files["history.json"]


def test_history_document_holds_every_stage_map(finished):
    state = finished[0]
    doc = history_document(state)
    assert doc["stages"] == state.stage
    assert [h["stage"] for h in doc["history"]] == list(range(state.stage))
    last = doc["history"][-1]
    assert [m["face"] for m in last["maps"]] == sorted(state.cube.faces(), key=face_order_key)
    assert {m["face"]: dict(map(tuple, m["map"])) for m in last["maps"]} == state.history[-1]


def test_write_and_verify(finished, tmp_path):
    directory = str(tmp_path / "run")
    manifest = write_run(directory, *finished)
    assert is_run_directory(directory)
    assert read_manifest(directory) == manifest
    assert manifest["certificate"]["status"] == "PASS"
    assert manifest["config"]["seed"] == 4
    assert manifest["aborted"] is None
    with open(os.path.join(directory, "history.json"), encoding="utf-8") as f:
        assert manifest["files"]["history.json"] == stable_hash(f.read())
    assert verify_run(directory) == []


def test_manifests_are_reproducible(finished, tmp_path):
    first = write_run(str(tmp_path / "a"), *finished)
    second = write_run(str(tmp_path / "b"), *finished)
    assert first == second


def test_verify_reports_tampering(kept, tmp_path):
    directory = str(tmp_path / "run")
    write_run(directory, *kept)
    with open(os.path.join(directory, "coverage.json"), "a", encoding="utf-8") as f:
        f.write(" ")
    os.remove(os.path.join(directory, "stages", stage_filename(1)))
    problems = verify_run(directory)
    assert problems[0].startswith("coverage.json: sha256 ")
    assert problems[1] == f"stages/{stage_filename(1)}: missing"


def test_missing_manifest(tmp_path):
    assert not is_run_directory(str(tmp_path))
    with pytest.raises(ManifestError, match="manifest: no manifest.json"):
        verify_run(str(tmp_path))


def test_manifest_without_file_table(tmp_path):
    (tmp_path / "manifest.json").write_text('{"version":1}', encoding="utf-8")
    with pytest.raises(ManifestError):
        read_manifest(str(tmp_path))
