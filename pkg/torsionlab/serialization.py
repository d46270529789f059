import json
from pathlib import Path
from typing import Any, Dict, Generic, List, Mapping, Sequence, Type, TypeVar

from . import checksums, schemas
from .catalogs import Catalog
from .categories import Category
from .errors import DocumentSchemaError, InvalidMorphismError, InvalidStructureError, MalformedStructureError
from .logging import log
from .morphisms import Morphism, mapping_from_labels
from .structures import (BoundedLattice, FiniteHeytingAlgebra, FiniteMonoid, FiniteMSetStructure, FiniteMVAlgebra,
                         FiniteStructure, PointedFiniteAbelianGroup, derive_heyting_implication, monoid_from_table,
                         require_valid)
from .torsion import ZExactSequence
from .types import Family

# Structure files hold labels only, element indices never leave the process
Document = Dict[str, Any]

MANIFEST_NAME = "manifest.json"

S = TypeVar("S", bound=FiniteStructure)  # The structure type that a StructureCodec subclass acts on


def dumps(document: Any) -> str:
    """
    Render a JSON document canonically (sorted keys, two space indentation, trailing newline), so that equal documents
    always produce identical bytes

    :param document: The JSON-compatible document
    :return: The rendered document
    """
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(document: Any, path: Path) -> None:
    path.write_text(dumps(document), encoding="utf-8")


def read_json(path: Path) -> Any:
    with path.open("r", encoding="utf-8") as f:
        return json.load(f)


def _check_layout(kind: str, document: Any) -> None:
    try:
        schemas.validate_document(kind, document)
    except DocumentSchemaError as e:
        raise MalformedStructureError(str(e)) from None


def _require(document: Mapping[str, Any], key: str, kind: type) -> Any:
    """
    Fetch a key of a document, raising MalformedStructureError if it is missing or has the wrong JSON type
    """
    if key not in document:
        raise MalformedStructureError("Missing key '{}'".format(key))
    value = document[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise MalformedStructureError("Key '{}' must be of type {}, got {}".format(key, kind.__name__,
                                                                                 type(value).__name__))
    return value


def _labels(document: Mapping[str, Any], key: str = "elements") -> List[str]:
    labels = _require(document, key, list)
    if not all(isinstance(label, str) for label in labels):
        raise MalformedStructureError("Element labels must be strings")
    if len(set(labels)) != len(labels):
        raise MalformedStructureError("Element labels must be unique")
    return labels


def _indexer(labels: Sequence[str]):
    positions = {label: i for i, label in enumerate(labels)}

    def _index(label: Any) -> int:
        if not isinstance(label, str) or label not in positions:
            raise MalformedStructureError("Unknown element '{}'".format(label))
        return positions[label]

    return _index


def _encode_table1(labels: Sequence[str], table: Sequence[int]) -> List[str]:
    return [labels[v] for v in table]


def _encode_table2(labels: Sequence[str], table: Sequence[Sequence[int]]) -> List[List[str]]:
    return [[labels[v] for v in row] for row in table]


def _decode_table1(document: Mapping[str, Any], key: str, labels: Sequence[str]):
    index = _indexer(labels)
    values = _require(document, key, list)
    if len(values) != len(labels):
        raise MalformedStructureError("Table '{}' must have {} entries, got {}".format(key, len(labels), len(values)))
    return tuple(index(v) for v in values)


def _decode_table2(document: Mapping[str, Any], key: str, labels: Sequence[str]):
    index = _indexer(labels)
    table = _require(document, key, list)
    rows = len(labels)
    if len(table) != rows or not all(isinstance(row, list) and len(row) == len(labels) for row in table):
        raise MalformedStructureError("Table '{}' must be {}x{}".format(key, rows, len(labels)))
    return tuple(tuple(index(v) for v in row) for row in table)


class StructureCodec(Generic[S]):
    """
    Base class of the per-family codecs translating between structures and their JSON documents
    """

    @staticmethod
    def encode(structure: S) -> Document:
        raise NotImplementedError()

    @staticmethod
    def decode(document: Mapping[str, Any], labels: List[str], name: str) -> S:
        raise NotImplementedError()


class MVCodec(StructureCodec[FiniteMVAlgebra]):
    @staticmethod
    def encode(structure: FiniteMVAlgebra) -> Document:
        return {"oplus": _encode_table2(structure.labels, structure.oplus),
                "neg": _encode_table1(structure.labels, structure.neg)}

    @staticmethod
    def decode(document: Mapping[str, Any], labels: List[str], name: str) -> FiniteMVAlgebra:
        return FiniteMVAlgebra(tuple(labels), _decode_table2(document, "oplus", labels),
                               _decode_table1(document, "neg", labels), name=name)


class HeytingCodec(StructureCodec[FiniteHeytingAlgebra]):
    """
    Heyting algebras are stored as bounded lattices, the implication is recomputed on load
    """

    @staticmethod
    def encode(structure: FiniteHeytingAlgebra) -> Document:
        labels = structure.labels
        return {"meet": _encode_table2(labels, structure.meet), "join": _encode_table2(labels, structure.join),
                "bottom": labels[structure.bottom], "top": labels[structure.top]}

    @staticmethod
    def decode(document: Mapping[str, Any], labels: List[str], name: str) -> FiniteHeytingAlgebra:
        index = _indexer(labels)
        lattice = BoundedLattice(tuple(labels), _decode_table2(document, "meet", labels),
                                 _decode_table2(document, "join", labels), index(_require(document, "bottom", str)),
                                 index(_require(document, "top", str)))
        return derive_heyting_implication(lattice, name=name)


class MSetCodec(StructureCodec[FiniteMSetStructure]):
    """
    M-sets store their monoid inline, and the action as the image of every element under every monoid element
    """

    @staticmethod
    def encode(structure: FiniteMSetStructure) -> Document:
        monoid, labels = structure.monoid, structure.labels
        action = {monoid.labels[m]: dict(zip(labels, _encode_table1(labels, row)))
                  for m, row in enumerate(structure.action)}
        return {"monoid": {"name": monoid.name, "elements": list(monoid.labels),
                           "identity": monoid.labels[monoid.identity],
                           "table": _encode_table2(monoid.labels, monoid.table)},
                "action": action}

    @staticmethod
    def decode(document: Mapping[str, Any], labels: List[str], name: str) -> FiniteMSetStructure:
        spec = _require(document, "monoid", dict)
        monoid_labels = _labels(spec)
        table = _decode_table2(spec, "table", monoid_labels)
        identity = _indexer(monoid_labels)(_require(spec, "identity", str))
        monoid_name = spec.get("name", "")
        if not isinstance(monoid_name, str):
            raise MalformedStructureError("Monoid name must be a string")
        try:
            monoid: FiniteMonoid = monoid_from_table(table, identity, monoid_labels, name=monoid_name)
        except InvalidStructureError as e:
            raise InvalidStructureError("{}: {}".format(name or "M-set", e)) from None

        action = _require(document, "action", dict)
        index = _indexer(labels)
        rows = []
        for m_label in monoid_labels:
            images = action.get(m_label)
            if not isinstance(images, dict) or set(images.keys()) != set(labels):
                raise MalformedStructureError("Action of '{}' must map every element".format(m_label))
            rows.append(tuple(index(images[x]) for x in labels))
        unknown = set(action.keys()) - set(monoid_labels)
        if unknown:
            raise MalformedStructureError("Action of unknown monoid elements: {}".format(", ".join(sorted(unknown))))
        return FiniteMSetStructure(monoid, tuple(labels), tuple(rows), name=name)


class CosliceCodec(StructureCodec[PointedFiniteAbelianGroup]):
    @staticmethod
    def encode(structure: PointedFiniteAbelianGroup) -> Document:
        labels = structure.labels
        return {"add": _encode_table2(labels, structure.add), "neg": _encode_table1(labels, structure.neg),
                "basepoint": labels[structure.basepoint], "modulus": structure.modulus}

    @staticmethod
    def decode(document: Mapping[str, Any], labels: List[str], name: str) -> PointedFiniteAbelianGroup:
        modulus = _require(document, "modulus", int)
        basepoint = _indexer(labels)(_require(document, "basepoint", str))
        return PointedFiniteAbelianGroup(tuple(labels), _decode_table2(document, "add", labels),
                                         _decode_table1(document, "neg", labels), basepoint, modulus, name=name)


CODECS: Dict[Family, Type[StructureCodec]] = {
    Family.MV: MVCodec,
    Family.Heyting: HeytingCodec,
    Family.MSet: MSetCodec,
    Family.Coslice: CosliceCodec,
}


def structure_to_document(structure: FiniteStructure) -> Document:
    """
    Encode a structure as a structure file document: its kind, name, element labels and the tables of its family

    :param structure: The structure to encode
    :return: The JSON-compatible document
    """
    document = {"kind": str(structure.family), "name": structure.name, "elements": list(structure.labels)}
    document.update(CODECS[structure.family].encode(structure))
    return document


def structure_from_document(document: Any, validated: bool = True) -> FiniteStructure:
    """
    Decode and validate a structure file document

    :param document: The parsed JSON document
    :param validated: Whether to check the axioms of the family, otherwise only the shape of the document is checked
    :return: The structure, guaranteed to satisfy the axioms of its family when validated is set
    """
    if not isinstance(document, dict):
        raise MalformedStructureError("A structure file must contain a JSON object")
    _check_layout("structure", document)
    kind = _require(document, "kind", str)
    try:
        family = Family(kind)
    except ValueError:
        raise MalformedStructureError("Unknown structure kind '{}'".format(kind)) from None
    name = document.get("name", "")
    if not isinstance(name, str):
        raise MalformedStructureError("Key 'name' must be a string")
    labels = _labels(document)
    structure = CODECS[family].decode(document, labels, name)
    return require_valid(structure) if validated else structure


def save_structure(structure: FiniteStructure, path: Path) -> None:
    write_json(structure_to_document(structure), path)


def load_structure(path: Path) -> FiniteStructure:
    """
    Load and validate a structure file

    :param path: The file to load
    :return: The structure
    """
    structure = structure_from_document(read_json(path))
    log.debug("Loaded {} from {}".format(structure.describe(), path))
    return structure


def morphism_to_document(f: Morphism) -> Document:
    return {"source": f.source.name, "target": f.target.name, "map": f.as_labels()}


def morphism_from_document(document: Any, structures: Mapping[str, FiniteStructure]) -> Morphism:
    """
    Resolve a morphism file against a set of loaded structures and certify that it preserves their operations

    :param document: The parsed JSON document
    :param structures: The available structures by name
    :return: The morphism
    """
    if not isinstance(document, dict):
        raise MalformedStructureError("A morphism file must contain a JSON object")
    _check_layout("morphism", document)
    ends = []
    for key in ("source", "target"):
        name = _require(document, key, str)
        if name not in structures:
            raise InvalidMorphismError("Morphism {} '{}' is not among the loaded structures ({})".format(
                key, name, ", ".join(sorted(structures))))
        ends.append(structures[name])
    mapping = _require(document, "map", dict)
    return mapping_from_labels(ends[0], ends[1], mapping)


def load_morphism(path: Path, structures: Sequence[FiniteStructure]) -> Morphism:
    return morphism_from_document(read_json(path), {s.name: s for s in structures})


def save_catalog(catalog: Catalog, directory: Path) -> Path:
    """
    Write a catalog as one structure file per instance plus a manifest holding the generation parameters and the
    checksum of every file

    :param catalog: The catalog to write
    :param directory: The directory to write into, created if needed
    :return: The path of the manifest
    """
    directory.mkdir(parents=True, exist_ok=True)
    files = []
    for i, structure in enumerate(catalog):
        file_name = "{:04d}.json".format(i)
        path = directory / file_name
        save_structure(structure, path)
        files.append({"file": file_name, "name": structure.name, "checksum": checksums.file_checksum(path)})
    manifest = directory / MANIFEST_NAME
    write_json({"parameters": catalog.parameters, "files": files}, manifest)
    log.debug("Wrote {} instances to {}".format(len(files), directory))
    return manifest


def load_catalog(directory: Path) -> Catalog:
    """
    Load a catalog written by save_catalog(), verifying the checksum of every structure file

    :param directory: The directory holding the manifest
    :return: The catalog
    """
    manifest = read_json(directory / MANIFEST_NAME)
    _check_layout("manifest", manifest)
    parameters = _require(manifest, "parameters", dict)
    family = Family(_require(parameters, "family", str))
    instances = []
    for entry in _require(manifest, "files", list):
        path = directory / _require(entry, "file", str)
        if checksums.file_checksum(path) != entry.get("checksum"):
            raise InvalidStructureError("Checksum mismatch for catalog file {}".format(path))
        structure = load_structure(path)
        if structure.family != family:
            raise InvalidStructureError("Catalog file {} is not a {} structure".format(path, family))
        instances.append(structure)
    return Catalog(family, _require(parameters, "size_bound", int), tuple(instances), parameters)


def arrow_to_document(category: Category, f: Morphism) -> Document:
    return category.describe(f)


def sequence_to_document(category: Category, sequence: ZExactSequence) -> Document:
    """
    Encode a short Z-exact sequence T(A) -> A -> F(A) with the witnesses of t = Zker(η) and η = Zcoker(t)

    :param category: The category the sequence lives in
    :param sequence: The sequence
    :return: The JSON-compatible document
    """
    kernel, cokernel = sequence.kernel, sequence.cokernel
    return {
        "middle": structure_to_document(sequence.obj),
        "torsion": structure_to_document(sequence.torsion),
        "torsion_free": structure_to_document(sequence.torsion_free),
        "orders": {"middle": sequence.obj.size, "torsion": sequence.torsion.size,
                   "torsion_free": sequence.torsion_free.size},
        "t": arrow_to_document(category, sequence.t),
        "eta": arrow_to_document(category, sequence.eta),
        "witnesses": {
            "zker": {"to_zero": arrow_to_document(category, kernel.to_zero),
                     "zero_inclusion": arrow_to_document(category, kernel.zero_inclusion)},
            "zcoker": {"max_quotient": arrow_to_document(category, cokernel.max_quotient),
                       "from_zero": arrow_to_document(category, cokernel.from_zero)},
        },
    }


def write_schemas(directory: Path) -> List[Path]:
    """
    Write the JSON schema of every document kind as <kind>.schema.json

    :param directory: The directory to write into, created if needed
    :return: The written files
    """
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for kind in schemas.SCHEMAS:
        path = directory / "{}.schema.json".format(kind)
        write_json(schemas.json_schema(kind), path)
        paths.append(path)
    return paths
