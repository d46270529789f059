#!/usr/bin/env python
import json
from pathlib import Path

import pytest

from torsionlab import schemas, serialization
from torsionlab.catalogs import generate_catalog
from torsionlab.errors import DocumentSchemaError, InvalidMorphismError, InvalidStructureError, MalformedStructureError
from torsionlab.factorization import check_condition, verify_factorization_system
from torsionlab.galois import GaloisContext, sweep_extensions
from torsionlab.morphisms import Morphism
from torsionlab.structures import lukasiewicz_chain
from torsionlab.torsion import theory_for
from torsionlab.types import ConditionTag, Family


def test_structure_files_are_stable(tmpdir, write_structure, l2, chain3, z4xz3, retraction) -> None:
    """
    Test that loading and re-saving a structure file reproduces it byte for byte
    """
    for i, structure in enumerate([l2, chain3, z4xz3, retraction, retraction.empty()]):
        path = write_structure(structure, "s{}.json".format(i))
        loaded = serialization.load_structure(path)
        assert loaded == structure
        assert loaded.name == structure.name

        again = Path(tmpdir) / "again{}.json".format(i)
        serialization.save_structure(loaded, again)
        assert again.read_bytes() == path.read_bytes()


def test_structure_documents(l2, z4) -> None:
    """
    Test the layout of structure documents: labels everywhere, never element indices
    """
    document = serialization.structure_to_document(l2)
    assert document == {
        "kind": "mv",
        "name": "Ł2",
        "elements": ["0", "1/2", "1"],
        "oplus": [["0", "1/2", "1"], ["1/2", "1", "1"], ["1", "1", "1"]],
        "neg": ["1", "1/2", "0"],
    }
    document = serialization.structure_to_document(z4)
    assert document["basepoint"] == "2"
    assert document["modulus"] == 2
    assert serialization.dumps(document).endswith("}\n")


@pytest.mark.parametrize("change, error", [
    ({"kind": "ring"}, MalformedStructureError),
    ({"elements": ["0", "0", "1"]}, MalformedStructureError),
    ({"neg": ["1", "1/2"]}, MalformedStructureError),
    ({"neg": ["1", "1/2", "2"]}, MalformedStructureError),
    ({"oplus": "table"}, MalformedStructureError),
    ({"neg": ["1", "1", "0"]}, InvalidStructureError),
])
def test_malformed_documents(l2, change, error) -> None:
    """
    Test that malformed documents and documents violating the axioms are rejected
    """
    document = dict(serialization.structure_to_document(l2), **change)
    with pytest.raises(error):
        serialization.structure_from_document(document)


def test_unvalidated_documents(l2) -> None:
    """
    Test that shape-only loading accepts well-formed structures violating the axioms
    """
    document = dict(serialization.structure_to_document(l2), neg=["1", "1", "0"])
    structure = serialization.structure_from_document(document, validated=False)
    assert structure.neg == (2, 2, 0)
    with pytest.raises(MalformedStructureError):
        serialization.structure_from_document([document], validated=False)


def test_mset_documents(retraction) -> None:
    """
    Test that M-set actions must map every element under every monoid element
    """
    document = serialization.structure_to_document(retraction)
    assert document["action"] == {"1": {"x": "x", "y": "y"}, "e": {"x": "y", "y": "y"}}
    assert document["monoid"]["identity"] == "1"

    broken = json.loads(json.dumps(document))
    del broken["action"]["e"]["x"]
    with pytest.raises(MalformedStructureError):
        serialization.structure_from_document(broken)

    broken = json.loads(json.dumps(document))
    broken["action"]["f"] = {"x": "x", "y": "y"}
    with pytest.raises(MalformedStructureError):
        serialization.structure_from_document(broken)


def test_morphism_files(tmpdir, z4, z2) -> None:
    """
    Test resolving morphism files against loaded structures by name
    """
    f = Morphism.create(z4, z2, [0, 1, 0, 1])
    document = serialization.morphism_to_document(f)
    assert document == {"source": "(Z4,2)", "target": "(Z2,0)", "map": {"0": "0", "1": "1", "2": "0", "3": "1"}}

    path = Path(tmpdir) / "f.json"
    serialization.write_json(document, path)
    assert serialization.load_morphism(path, [z4, z2]) == f

    with pytest.raises(InvalidMorphismError):
        serialization.morphism_from_document(document, {"(Z4,2)": z4})
    with pytest.raises(InvalidMorphismError):
        serialization.morphism_from_document(dict(document, map={"0": "0", "1": "0", "2": "1", "3": "0"}),
                                             {"(Z4,2)": z4, "(Z2,0)": z2})


def test_catalog_round_trip(tmpdir) -> None:
    """
    Test writing a catalog with its manifest and loading it back
    """
    catalog = generate_catalog(Family.Coslice, 4, modulus=2)
    directory = Path(tmpdir) / "catalog"
    manifest = serialization.save_catalog(catalog, directory)
    document = serialization.read_json(manifest)
    assert document["parameters"] == catalog.parameters
    assert [entry["name"] for entry in document["files"]] == catalog.names()

    loaded = serialization.load_catalog(directory)
    assert loaded == catalog
    assert loaded.names() == catalog.names()


def test_catalog_checksum_mismatch(tmpdir) -> None:
    """
    Test that an edited catalog file is detected by its checksum
    """
    directory = Path(tmpdir) / "catalog"
    serialization.save_catalog(generate_catalog(Family.MV, 3), directory)
    serialization.save_structure(lukasiewicz_chain(1), directory / "0000.json")
    with pytest.raises(InvalidStructureError):
        serialization.load_catalog(directory)


def test_sequence_documents(z4xz3) -> None:
    """
    Test the document of a short Z-exact sequence: orders, arrows and witnesses
    """
    theory = theory_for("coslice")
    document = serialization.sequence_to_document(theory.category, theory.decompose(z4xz3))
    assert document["orders"] == {"middle": 12, "torsion": 6, "torsion_free": 4}
    assert document["middle"]["name"] == "(Z4⊕Z3,(2,0))"
    assert document["eta"]["from"] == "(Z4⊕Z3,(2,0))"
    assert set(document["witnesses"]) == {"zker", "zcoker"}


def _parsed(document):
    """
    The document as it reads back from a JSON file
    """
    return json.loads(serialization.dumps(document))


def test_written_documents_match_schemas(tmpdir, l2, chain3, z4xz3, retraction, mod2) -> None:
    """
    Test that the structure, morphism, sequence and manifest documents torsionlab writes satisfy their schemas
    """
    for structure in [l2, chain3, z4xz3, retraction, retraction.empty()]:
        schemas.validate_document("structure", _parsed(serialization.structure_to_document(structure)))
    schemas.validate_document("morphism", _parsed(serialization.morphism_to_document(mod2)))

    theory = theory_for("coslice")
    sequence = serialization.sequence_to_document(theory.category, theory.decompose(z4xz3))
    model = schemas.validate_document("sequence", _parsed(sequence))
    assert isinstance(model, schemas.SequenceDocument)
    assert model.orders.torsion == 6
    assert model.eta.from_ == "(Z4⊕Z3,(2,0))"

    manifest = serialization.save_catalog(generate_catalog(Family.Coslice, 4, modulus=2), Path(tmpdir) / "catalog")
    model = schemas.validate_document("manifest", serialization.read_json(manifest))
    assert isinstance(model, schemas.ManifestDocument)
    assert model.parameters.modulus == 2


def test_reports_match_schemas() -> None:
    """
    Test that condition, factorization and extension reports satisfy their schemas
    """
    catalog = generate_catalog(Family.Coslice, 3, modulus=2)
    theory = theory_for("coslice")
    report = check_condition(theory, ConditionTag.N, catalog).to_dict()
    schemas.validate_document("condition-report", _parsed(report))
    report = verify_factorization_system(theory, catalog).to_dict()
    schemas.validate_document("factorization-report", _parsed(report))
    report = sweep_extensions(GaloisContext(theory), catalog).to_dict()
    model = schemas.validate_document("extension-sweep", _parsed(report))
    assert isinstance(model, schemas.ExtensionSweepDocument)
    assert model.verdict


@pytest.mark.parametrize("kind, change", [
    ("structure", {"kind": "ring"}),
    ("structure", {"elements": "0 1/2 1"}),
    ("structure", {"modulus": 2}),
    ("structure", {"name": 7}),
    ("morphism", {"map": {"0": 0}}),
    ("morphism", {"via": "nowhere"}),
])
def test_schema_violations(l2, z4, z2, kind: str, change) -> None:
    """
    Test that documents with wrong types, unknown keys or an unknown kind are rejected by their schema
    """
    if kind == "structure":
        document = serialization.structure_to_document(l2)
    else:
        document = serialization.morphism_to_document(Morphism.create(z4, z2, [0, 1, 0, 1]))
    with pytest.raises(DocumentSchemaError):
        schemas.validate_document(kind, dict(document, **change))


def test_schema_violations_are_malformed_structures(l2) -> None:
    """
    Test that loading a structure file with a key of the wrong type reports the offending key
    """
    document = dict(serialization.structure_to_document(l2), neg=[1, 1, 0])
    with pytest.raises(MalformedStructureError) as excinfo:
        serialization.structure_from_document(document)
    assert "neg" in str(excinfo.value)


def test_write_schemas(tmpdir) -> None:
    """
    Test writing the JSON schema of every document kind
    """
    paths = serialization.write_schemas(Path(tmpdir) / "schemas")
    assert [path.name for path in paths] == ["{}.schema.json".format(kind) for kind in schemas.SCHEMAS]
    structure = serialization.read_json(paths[0])
    assert structure["$id"] == "torsionlab/structure.schema.json"
    assert set(structure["$defs"]) >= {"MVDocument", "HeytingDocument", "MSetDocument", "CosliceDocument"}
    arrow = serialization.read_json(Path(tmpdir) / "schemas" / "arrow.schema.json")
    assert set(arrow["required"]) == {"from", "to", "map"}
    with pytest.raises(ValueError):
        schemas.json_schema("ring")
