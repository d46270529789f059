#!/usr/bin/env python
import io
import json
from pathlib import Path
from typing import Any, List, Tuple

import pytest

from torsionlab import schemas, serialization
from torsionlab.lab import Lab, run
from torsionlab.morphisms import product
from torsionlab.structures import FiniteMVAlgebra, lukasiewicz_chain


def _run(args: List[str]) -> Tuple[int, Any, str]:
    """
    Run a command and return its exit code, its parsed JSON output (None if nothing was written) and its diagnostics
    """
    stream, err_stream = io.StringIO(), io.StringIO()
    code = run(args, stream=stream, err_stream=err_stream)
    output = stream.getvalue()
    return code, json.loads(output) if output else None, err_stream.getvalue()


def _write_arrow(tmpdir, write_structure, source, target, mapping) -> List[str]:
    """
    Write the structure files and morphism file of an arrow, returning them as command line arguments
    """
    morphism = Path(tmpdir) / "f.json"
    serialization.write_json({"source": source.name, "target": target.name, "map": mapping}, morphism)
    return [str(write_structure(source, "source.json")), str(write_structure(target, "target.json")), str(morphism)]


def test_lab_commands() -> None:
    """
    Test that the lab exposes every command
    """
    lab = Lab()
    assert lab.name == "torsionlab"
    assert lab.commands == ["validate", "homs", "decompose", "radical", "fix", "divisible-part", "zker", "zcoker",
                            "factorize", "check", "classify-extension", "catalog", "schema"]


def test_validate(tmpdir, write_structure, l2) -> None:
    """
    Test validating a valid structure file and one violating the involution axiom
    """
    code, result, _ = _run(["validate", str(write_structure(l2, "l2.json"))])
    assert code == 0
    assert result == {"valid": True, "structure": "Ł2", "violations": []}

    broken = Path(tmpdir) / "broken.json"
    serialization.write_json(dict(serialization.structure_to_document(l2), neg=["1", "1", "0"]), broken)
    code, result, _ = _run(["validate", str(broken)])
    assert code == 1
    assert not result["valid"]
    assert "involution" in [v["axiom"] for v in result["violations"]]


def test_homs(write_structure, z4, z2) -> None:
    """
    Test listing the morphisms between two structure files
    """
    code, result, _ = _run(["homs", str(write_structure(z4, "z4.json")), str(write_structure(z2, "z2.json"))])
    assert code == 0
    assert result["count"] == 2
    assert [h["epi"] for h in result["homs"]] == [False, True]


@pytest.mark.parametrize("certify", [True, False])
def test_decompose(write_structure, z4xz3, certify: bool) -> None:
    """
    Test decomposing (Z4 ⊕ Z3, (2,0)), with and without the universal-property oracles
    """
    args = ["decompose", str(write_structure(z4xz3, "a.json")), "--catalog-bound", "4"]
    code, result, _ = _run(args if certify else args + ["--no-certify"])
    assert code == 0
    assert result["theory"] == "coslice"
    assert result["orders"] == {"middle": 12, "torsion": 6, "torsion_free": 4}


def test_family_commands(write_structure, l2, retraction, z4xz3) -> None:
    """
    Test the radical, fixed point and divisible part commands
    """
    code, result, _ = _run(["radical", str(write_structure(l2, "l2.json"))])
    assert code == 0
    assert result == {"structure": "Ł2", "radical": ["0"], "semisimple": True}

    code, result, _ = _run(["fix", str(write_structure(retraction, "x.json"))])
    assert code == 0
    assert result["fix"] == ["y"]

    code, result, _ = _run(["divisible-part", str(write_structure(z4xz3, "a.json"))])
    assert code == 0
    assert result["modulus"] == 2
    assert result["divisible_part"] == ["(0,0)", "(0,1)", "(0,2)"]

    code, _, errors = _run(["radical", str(write_structure(retraction, "x.json"))])
    assert code == 1
    assert "radical" in errors


def test_arrow_commands(tmpdir, write_structure, z4xz3, z2) -> None:
    """
    Test the Z-kernel, factorization and extension commands on (x, y) -> x mod 2
    """
    mapping = {label: str(int(label[1]) % 2) for label in z4xz3.labels}
    arrow = _write_arrow(tmpdir, write_structure, z4xz3, z2, mapping)

    code, result, _ = _run(["zker"] + arrow)
    assert code == 0
    assert len(result["object"]["elements"]) == 6

    code, result, _ = _run(["factorize"] + arrow)
    assert code == 0
    assert len(result["middle"]["elements"]) == 4
    assert result["certified"]

    code, result, _ = _run(["classify-extension"] + arrow + ["--catalog-bound", "4"])
    assert code == 0
    assert result["tag"] == "non-central"

    code, result, _ = _run(["classify-extension"] + arrow + ["--no-admissibility"])
    assert code == 0
    assert result["tag"] == "non-central"


def test_zcoker_without_max_quotient(tmpdir, write_structure) -> None:
    """
    Test that the Z-cokernel of the identity of Ł1 × Ł1 is reported as missing
    """
    l1 = lukasiewicz_chain(1)
    square = product(l1, l1, name="Ł1×Ł1").obj
    assert isinstance(square, FiniteMVAlgebra)
    arrow = _write_arrow(tmpdir, write_structure, square, square, {label: label for label in square.labels})
    code, result, _ = _run(["zcoker"] + arrow)
    assert code == 0
    assert result["exists"] is False


def test_check(tmpdir) -> None:
    """
    Test checking conditions over a catalog, for the MV theory and the swapped one
    """
    code, result, _ = _run(["check", "--theory", "mv", "--condition", "N", "--catalog-bound", "4"])
    assert code == 0
    assert result["verdict"]
    assert result["catalog"]["size_bound"] == 4

    code, result, _ = _run(["check", "--theory", "mv-swapped", "--condition", "N", "--catalog-bound", "4"])
    assert code == 0
    assert not result["verdict"]
    assert result["counterexample"]["object"] == "Ł1×Ł1"


@pytest.mark.parametrize("condition", ["extensions", "Mprime", "S"])
def test_check_admissibility_conditions(condition: str) -> None:
    """
    Test that the admissibility conditions and the extension sweep hold for the coslice theory and fail for the
    swapped MV theory, the sweep exiting with the admissibility counterexample
    """
    code, result, _ = _run(["check", "--theory", "coslice", "--condition", condition, "--catalog-bound", "4"])
    assert code == 0
    assert result["verdict"]

    code, result, errors = _run(["check", "--theory", "mv-swapped", "--condition", condition, "--catalog-bound", "4"])
    assert result["counterexample"]["object"] == "Ł1×Ł1"
    if condition == "extensions":
        assert code == 1
        assert "fails Condition" in errors
    else:
        assert code == 0
        assert not result["verdict"]


def test_classify_extension_refuses_inadmissible_theory(tmpdir, write_structure, l2) -> None:
    """
    Test that classifying an extension for the swapped MV theory is refused with its counterexample
    """
    arrow = _write_arrow(tmpdir, write_structure, l2, l2, {label: label for label in l2.labels})
    code, result, errors = _run(["classify-extension", "--theory", "mv-swapped", "--catalog-bound", "4"] + arrow)
    assert code == 1
    assert result["counterexample"]["object"] == "Ł1×Ł1"
    assert "mv-swapped" in result["error"]
    assert "mv-swapped" in errors


def test_catalog(tmpdir) -> None:
    """
    Test listing a catalog and writing it to a directory
    """
    out = Path(tmpdir) / "catalog"
    code, result, _ = _run(["catalog", "mv", "--catalog-bound", "4", "--out", str(out)])
    assert code == 0
    assert result["instances"] == ["Ł0", "Ł1", "Ł2", "Ł3", "Ł1×Ł1"]
    assert Path(result["manifest"]).exists()
    assert len(serialization.load_catalog(out)) == 5

    code, _, _ = _run(["catalog", "mv", "--theory", "heyting"])
    assert code == 2


def test_errors(tmpdir, write_structure, l2) -> None:
    """
    Test the exit codes of usage errors and domain errors
    """
    code, _, errors = _run([])
    assert code == 2
    assert errors.startswith("usage: torsionlab")

    # argparse reports to the diagnostics stream
    code, result, errors = _run(["brew"])
    assert code == 2
    assert result is None
    assert "invalid choice" in errors
    assert _run(["check"])[0] == 2
    assert _run(["validate", str(Path(tmpdir) / "missing.json")])[0] == 1

    not_json = Path(tmpdir) / "not.json"
    not_json.write_text("{")
    assert _run(["radical", str(not_json)])[0] == 1

    # Morphism files naming structures that were not loaded
    morphism = Path(tmpdir) / "f.json"
    serialization.write_json({"source": "Ł2", "target": "nowhere", "map": {}}, morphism)
    path = str(write_structure(l2, "l2.json"))
    code, result, errors = _run(["zker", path, path, str(morphism)])
    assert code == 1
    assert result is None
    assert "nowhere" in errors


def test_outputs_match_schemas(tmpdir, write_structure, z4xz3, z2) -> None:
    """
    Test that the documents printed by the commands satisfy the schemas of their kind
    """
    code, result, _ = _run(["decompose", str(write_structure(z4xz3, "a.json")), "--catalog-bound", "4"])
    assert code == 0
    schemas.validate_document("sequence", result)

    mapping = {label: str(int(label[1]) % 2) for label in z4xz3.labels}
    arrow = _write_arrow(tmpdir, write_structure, z4xz3, z2, mapping)
    code, result, _ = _run(["zker"] + arrow)
    schemas.validate_document("structure", result["object"])
    schemas.validate_document("arrow", result["kernel"])
    code, result, _ = _run(["classify-extension"] + arrow + ["--catalog-bound", "4"])
    schemas.validate_document("extension-report", result)

    for condition, kind in [("N", "condition-report"), ("factorization", "factorization-report"),
                            ("extensions", "extension-sweep")]:
        code, result, _ = _run(["check", "--theory", "coslice", "--condition", condition, "--catalog-bound", "3"])
        assert code == 0
        schemas.validate_document(kind, result)

    code, result, _ = _run(["check", "--theory", "mv-swapped", "--condition", "extensions", "--catalog-bound", "4"])
    assert code == 1
    schemas.validate_document("refusal", result)

    code, result, _ = _run(["catalog", "coslice", "--catalog-bound", "4", "--out", str(Path(tmpdir) / "catalog")])
    assert code == 0
    schemas.validate_document("manifest", serialization.read_json(Path(result["manifest"])))


def test_schema_command(tmpdir) -> None:
    """
    Test printing one schema and writing all of them
    """
    code, result, _ = _run(["schema", "morphism"])
    assert code == 0
    assert result == schemas.json_schema("morphism")
    assert set(result["required"]) == {"source", "target", "map"}

    out = Path(tmpdir) / "schemas"
    code, result, _ = _run(["schema", "--out", str(out)])
    assert code == 0
    assert len(result["written"]) == len(schemas.SCHEMAS)
    assert (out / "manifest.schema.json").exists()

    assert _run(["schema"])[0] == 2
    assert _run(["schema", "ring"])[0] == 2
