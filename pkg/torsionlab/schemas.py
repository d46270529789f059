from typing import Any, Dict, List, Literal, Optional, Type, Union

from pydantic import BaseModel, ConfigDict, Field, RootModel, ValidationError

from .errors import DocumentSchemaError

# The documents read and written by torsionlab, as pydantic models. Table dimensions and label references are checked
# by the structure codecs, the models only fix the shape of each document


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)


class _Report(BaseModel):
    model_config = ConfigDict(strict=True)


class _StructureFields(_Document):
    name: str = ""
    elements: List[str]


class MVDocument(_StructureFields):
    kind: Literal["mv"]
    oplus: List[List[str]]
    neg: List[str]


class HeytingDocument(_StructureFields):
    kind: Literal["heyting"]
    meet: List[List[str]]
    join: List[List[str]]
    bottom: str
    top: str


class MonoidDocument(_Document):
    name: str = ""
    elements: List[str]
    identity: str
    table: List[List[str]]


class MSetDocument(_StructureFields):
    kind: Literal["mset"]
    monoid: MonoidDocument
    action: Dict[str, Dict[str, str]]


class CosliceDocument(_StructureFields):
    kind: Literal["coslice"]
    add: List[List[str]]
    neg: List[str]
    basepoint: str
    modulus: int = Field(ge=1)


class StructureDocument(RootModel[Union[MVDocument, HeytingDocument, MSetDocument, CosliceDocument]]):
    """
    A structure file, one layout per family selected by its kind
    """
    root: Union[MVDocument, HeytingDocument, MSetDocument, CosliceDocument] = Field(discriminator="kind")


class MorphismDocument(_Document):
    """
    A morphism file: the names of its structures and the image of every source label
    """
    source: str
    target: str
    map: Dict[str, str]


class ArrowDocument(_Document):
    """
    An arrow read in the direction of its category, with the stored map
    """
    from_: str = Field(alias="from")
    to: str
    map: Dict[str, str]


class CatalogParameters(_Document):
    family: Literal["mv", "heyting", "mset", "coslice"]
    size_bound: int = Field(ge=1)
    seed_families: List[str]
    modulus: Optional[int] = Field(default=None, ge=1)


class CatalogInfo(CatalogParameters):
    instances: int = Field(ge=0)


class ManifestEntry(_Document):
    file: str
    name: str
    checksum: str


class ManifestDocument(_Document):
    """
    The manifest of a catalog directory
    """
    parameters: CatalogParameters
    files: List[ManifestEntry]


class ConditionReportDocument(_Report):
    """
    The verdict of one condition over a catalog
    """
    condition: Literal["axioms", "N", "M", "Mprime", "S", "P"]
    theory: str
    catalog: CatalogInfo
    checked: int = Field(ge=0)
    verdict: bool
    counterexample: Optional[Dict[str, Any]] = None


class FactorizationReportDocument(_Report):
    theory: str
    catalog: CatalogInfo
    arrows: int = Field(ge=0)
    pullbacks: int = Field(ge=0)
    squares: int = Field(ge=0)
    verdict: bool
    counterexample: Optional[Dict[str, Any]] = None


class ExtensionSweepDocument(_Report):
    theory: str
    catalog: CatalogInfo
    counts: Dict[Literal["trivial", "normal", "central", "non-central"], int]
    verdict: bool
    counterexample: Optional[Dict[str, Any]] = None


class ExtensionReportDocument(_Report):
    """
    The classification of one arrow as an extension
    """
    tag: Literal["trivial", "normal", "central", "non-central"]
    evidence: Dict[str, Any]
    theory: str
    arrow: ArrowDocument


class SequenceOrders(_Document):
    middle: int
    torsion: int
    torsion_free: int


class ZKernelWitnesses(_Document):
    to_zero: ArrowDocument
    zero_inclusion: ArrowDocument


class ZCokernelWitnesses(_Document):
    max_quotient: ArrowDocument
    from_zero: ArrowDocument


class SequenceWitnesses(_Document):
    zker: ZKernelWitnesses
    zcoker: ZCokernelWitnesses


class SequenceDocument(_Document):
    """
    A short Z-exact sequence T(A) -> A -> F(A) with its witnesses
    """
    middle: StructureDocument
    torsion: StructureDocument
    torsion_free: StructureDocument
    orders: SequenceOrders
    t: ArrowDocument
    eta: ArrowDocument
    witnesses: SequenceWitnesses
    theory: Optional[str] = None


class RefusalDocument(_Document):
    """
    The output of a command refused because the theory is not admissible
    """
    error: str
    counterexample: Optional[Dict[str, Any]] = None


SCHEMAS: Dict[str, Type[BaseModel]] = {
    "structure": StructureDocument,
    "morphism": MorphismDocument,
    "arrow": ArrowDocument,
    "manifest": ManifestDocument,
    "condition-report": ConditionReportDocument,
    "factorization-report": FactorizationReportDocument,
    "extension-report": ExtensionReportDocument,
    "extension-sweep": ExtensionSweepDocument,
    "sequence": SequenceDocument,
    "refusal": RefusalDocument,
}


def _model(kind: str) -> Type[BaseModel]:
    try:
        return SCHEMAS[kind]
    except KeyError:
        raise ValueError("Unknown document kind '{}', expected one of: {}".format(kind, ", ".join(SCHEMAS))) from None


def validate_document(kind: str, document: Any) -> BaseModel:
    """
    Check a parsed JSON document against the schema of its kind

    :param kind: One of the keys of SCHEMAS
    :param document: The parsed document
    :return: The validated model
    :raises DocumentSchemaError: If the document does not have the layout of its kind
    """
    try:
        return _model(kind).model_validate(document)
    except ValidationError as e:
        problems = "; ".join("{}: {}".format(".".join(str(p) for p in error["loc"]) or "document", error["msg"])
                             for error in e.errors())
        raise DocumentSchemaError("Invalid {} document: {}".format(kind, problems)) from None


def json_schema(kind: str) -> Dict[str, Any]:
    """
    :param kind: One of the keys of SCHEMAS
    :return: The JSON schema of the documents of that kind
    """
    schema = _model(kind).model_json_schema()
    schema["$id"] = "torsionlab/{}.schema.json".format(kind)
    return schema
