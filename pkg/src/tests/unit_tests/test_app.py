"""Unit tests for the app module."""

import json
import os
import shlex
import subprocess
from unittest.mock import patch

import numpy as np
import pytest

from amalgamation.allocators import IdAllocator
from amalgamation.sharpness import canonical_failure_cube
from amalgamation.strategymgr import get_strategy
from app import EXIT_INPUT, EXIT_OK, EXIT_REFUSED, main, parse_args
from fraisse.config import RunConfig
from fraisse.errors import RunAbortedError
from fraisse.state import RunState
from helpers.serialization import canonical_json, cube_to_document, serialize_cube, serialize_structure
from models.cube import CubeDiagram, CubeShape
from models.structure import Embedding
from sampledata.generators import grow, random_partial_cube

# Suppress pylint warnings for fixtures
# pylint: disable=redefined-outer-name


def output(capsys):
    """Parse the JSON document the last command wrote to stdout."""
    return json.loads(capsys.readouterr().out)


@pytest.fixture
def chain_file(chain, tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(serialize_structure(chain), encoding="utf-8")
    return str(path)


@pytest.fixture
def free_pair_file(free_pair, tmp_path):
    path = tmp_path / "free.json"
    path.write_text(serialize_structure(free_pair), encoding="utf-8")
    return str(path)


@pytest.fixture
def partial_cube_file(tmp_path):
    p = random_partial_cube(get_strategy("bkl", 2), 2, np.random.default_rng(17))
    path = tmp_path / "partial.json"
    path.write_text(serialize_cube(p), encoding="utf-8")
    return str(path)


def test_parse_args_requires_a_command():
    """Test with no arguments, should exit because the subcommand is required."""
    with pytest.raises(SystemExit):
        parse_args([])


def test_parse_args_fraisse_defaults():
    args = parse_args(["fraisse", "--family", "bkl"])
    assert args.command == "fraisse"
    assert args.n == 2
    assert args.k == 1
    assert args.out is None
    assert args.tasks_per_round is None
    assert args.time_cap == 600


def test_parse_args_verbosity():
    args = parse_args(["validate", "x.json", "-vv", "-q"])
    assert args.verbose == 2
    assert args.quiet is True


def test_parse_args_rejects_unknown_family():
    with pytest.raises(SystemExit):
        parse_args(["sample", "--family", "posets", "--size", "1", "--patterns", "1"])


def test_validate(chain_file, free_pair_file, capsys):
    assert main(["validate", chain_file]) == EXIT_OK
    assert output(capsys) == {"kind": "structure", "valid": True, "violations": [], "structural_errors": []}
    assert main(["validate", free_pair_file]) == EXIT_REFUSED
    assert output(capsys)["violations"][0]["rule"] == "B3"


def test_validate_cube(partial_cube_file, capsys):
    assert main(["validate", partial_cube_file]) == EXIT_OK
    assert output(capsys)["kind"] == "cube"


def test_validate_cube_reports_a_face_of_the_wrong_arity(make_structure, tmp_path, capsys):
    bottom, top = make_structure(1, (0,)), make_structure(2, (0, 1))
    c = CubeDiagram(
        1,
        CubeShape.FULL,
        {0: bottom, 1: top},
        {
            (0, 0): Embedding.identity(bottom),
            (1, 1): Embedding.identity(top),
            (0, 1): Embedding(bottom, top, {0: 0}),
        },
    )
    doc = cube_to_document(c)
    doc["n"] = 2
    path = tmp_path / "mixed.json"
    path.write_text(canonical_json(doc), encoding="utf-8")
    assert main(["validate", str(path)]) == EXIT_REFUSED
    report = output(capsys)
    assert report["kind"] == "cube"
    assert [e["rule"] for e in report["structural_errors"]] == ["arity"]
    assert report["structural_errors"][0]["witness"][0] == 0


def test_validate_cube_reports_face_axiom_failures(free_pair, tmp_path, capsys):
    c = CubeDiagram(0, CubeShape.FULL, {0: free_pair}, {(0, 0): Embedding.identity(free_pair)})
    path = tmp_path / "face.json"
    path.write_text(serialize_cube(c), encoding="utf-8")
    assert main(["validate", str(path)]) == EXIT_REFUSED
    violation = output(capsys)["violations"][0]
    assert violation["rule"] == "B3"
    assert violation["witness"][0] == 0
    assert violation["message"].startswith("face ")


def test_input_errors(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "missing.json")]) == EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    assert main(["theta", str(bad)]) == EXIT_INPUT
    assert "Error: malformed-json" in capsys.readouterr().err


def test_theta(chain_file, capsys):
    assert main(["theta", chain_file]) == EXIT_OK
    assert output(capsys)["variables"] == [0, 1]


def test_embed(chain, chain_file, tmp_path, capsys):
    bottom = tmp_path / "bottom.json"
    bottom.write_text(serialize_structure(chain.restrict([0])), encoding="utf-8")
    assert main(["embed", str(bottom), chain_file, "--count"]) == EXIT_OK
    assert output(capsys) == {"embeds": True, "embedding": [[0, 0]], "count": 1}
    assert main(["embed", chain_file, str(bottom)]) == EXIT_OK
    assert output(capsys) == {"embeds": False, "embedding": None}


def test_amalgamate(partial_cube_file, capsys):
    assert main(["amalgamate", partial_cube_file]) == EXIT_OK
    doc = output(capsys)
    assert doc["shape"] == "full"
    assert [f["mask"] for f in doc["faces"]] == [0, 1, 2, 3]


def test_amalgamate_refuses_k_above_n(tmp_path, capsys):
    path = tmp_path / "failure.json"
    path.write_text(serialize_cube(canonical_failure_cube(2)), encoding="utf-8")
    assert main(["amalgamate", str(path)]) == EXIT_REFUSED
    assert "k <= 2" in capsys.readouterr().err


def test_extend(tmp_path, capsys):
    strategy = get_strategy("bkl", 2)
    rng = np.random.default_rng(4)
    c = strategy.amalgamate(random_partial_cube(strategy, 1, rng))
    target = grow(strategy, c[0], 1, rng, IdAllocator.above(c.structures.values()), 1)
    cube_path, target_path = tmp_path / "cube.json", tmp_path / "target.json"
    cube_path.write_text(serialize_cube(c), encoding="utf-8")
    target_path.write_text(serialize_structure(target), encoding="utf-8")
    assert main(["extend", str(cube_path), "--rho", "0", "--target", str(target_path), "--check"]) == EXIT_OK
    doc = output(capsys)
    assert doc["cube"]["k"] == 1
    assert [m["face"] for m in doc["embedding"]["maps"]] == [0, 1]
    assert main(["extend", str(cube_path), "--rho", "5", "--target", str(target_path)]) == EXIT_INPUT


def test_fraisse_and_verify(tmp_path, capsys):
    out = tmp_path / "runs"
    code = main(["fraisse", "--family", "bkl", "--n", "2", "--k", "1", "--rounds", "1", "--out", str(out), "-q"])
    assert code == EXIT_OK
    manifest = output(capsys)
    assert manifest["certificate"]["status"] == "PASS"
    (run_dir,) = os.listdir(out)
    assert run_dir.startswith("0-")
    assert main(["verify", str(out / run_dir)]) == EXIT_OK
    assert output(capsys) == {"ok": True, "problems": []}

    with open(out / run_dir / "witnesses.json", "a", encoding="utf-8") as f:
        f.write("\n")
    assert main(["verify", str(out / run_dir)]) == EXIT_REFUSED
    assert output(capsys)["problems"][0].startswith("witnesses.json")


def test_fraisse_without_out_prints_the_manifest(capsys):
    assert main(["fraisse", "--family", "sets", "--k", "2", "--rounds", "0", "--strict", "-q"]) == EXIT_REFUSED
    manifest = output(capsys)
    assert manifest["certificate"]["status"] == "FAILED"
    assert "final-cube.json" in manifest["files"]


def test_fraisse_all_stages_lists_every_stage_file(capsys):
    assert main(["fraisse", "--family", "sets", "--k", "2", "--rounds", "1", "--all-stages", "-q"]) == EXIT_OK
    manifest = output(capsys)
    stage_files = sorted(name for name in manifest["files"] if name.startswith("stages/"))
    assert len(stage_files) == manifest["stages"] + 1
    assert stage_files[0] == "stages/stage-0000.json"


def test_fraisse_refuses_k_at_least_n(capsys):
    assert main(["fraisse", "--family", "bkl", "--n", "2", "--k", "2"]) == EXIT_REFUSED
    assert "amalgamation arity exceeded" in capsys.readouterr().err


def test_fraisse_abort_is_persisted(capsys):
    partial = RunState.initial(RunConfig("bkl", n=2, k=1))
    with patch("app.run", side_effect=RunAbortedError("cube holds 500 elements", partial)):
        assert main(["fraisse", "--family", "bkl", "-q"]) == EXIT_REFUSED
    assert output(capsys)["aborted"] == "cube holds 500 elements"


def test_verify_without_manifest(tmp_path):
    assert main(["verify", str(tmp_path)]) == EXIT_INPUT


def test_dimension(tmp_path, capsys):
    strategy = get_strategy("bkl", 2)
    c = strategy.amalgamate(random_partial_cube(strategy, 1, np.random.default_rng(0), extra=2))
    path = tmp_path / "cube.json"
    path.write_text(serialize_cube(c), encoding="utf-8")
    figure, dot = tmp_path / "d.html", tmp_path / "d.dot"
    assert main(["dimension", str(path), "--kmax", "2", "--figure", str(figure), "--dot", str(dot)]) == EXIT_OK
    doc = output(capsys)
    assert doc["estimate"] >= 0
    assert doc["table"][0] == {"k": 0, "found": True, "vertices": [0]}
    assert figure.exists()
    assert dot.read_text(encoding="utf-8").startswith("digraph embeddability {")


def test_counterexample(capsys):
    assert main(["counterexample", "--n", "1", "-q"]) == EXIT_OK
    doc = output(capsys)
    assert doc["independent_set"] == [0, 1]
    assert doc["size_cap"] == 4
    assert doc["cube"]["shape"] == "boundary"


def test_sample(capsys):
    assert main(["sample", "--family", "sets", "--size", "1", "--patterns", "2", "--labels", "2"]) == EXIT_OK
    assert len(output(capsys)["elements"]) == 2
    assert main(["sample", "--family", "bkl", "--n", "1", "--size", "1", "--patterns", "1"]) == EXIT_REFUSED


def test_if_name_equals_main():
    """
    Test the main() function is called when the app module is run as a script.
    """
    # Run the app module as a script
    result = subprocess.run(
        shlex.split("python src/app.py"),
        stdout=subprocess.PIPE,
        check=False,
    )

    # Assert that the script ran unsuccessfully (due to the missing subcommand)
    assert result.returncode != 0
