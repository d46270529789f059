from typing import Optional, Tuple


class TorsionLabError(Exception):
    """
    Base class of all errors raised by torsionlab
    """


class DocumentSchemaError(TorsionLabError, ValueError):
    """
    Raised when a JSON document does not have the layout of its kind
    """


class MalformedStructureError(TorsionLabError, ValueError):
    """
    Raised when the tables of a structure have the wrong dimensions or contain out-of-range indices
    """


class InvalidStructureError(TorsionLabError, ValueError):
    """
    Raised when a structure is well-formed but violates the axioms of its family
    """


class NotHeytingError(TorsionLabError, ValueError):
    """
    Raised when a bounded lattice has no relative pseudo-complement for some pair of elements
    """

    def __init__(self, y: str, z: str):
        super().__init__("Lattice is not Heyting: no greatest x with x ∧ {} ≤ {}".format(y, z))
        self.pair: Tuple[str, str] = (y, z)


class FamilyMismatchError(TorsionLabError, ValueError):
    """
    Raised when two structures that must live in the same category do not (different family, monoid or modulus)
    """


class InvalidMorphismError(TorsionLabError, ValueError):
    """
    Raised when a map between two structures does not preserve their structure
    """


class NotDescentError(TorsionLabError, ValueError):
    """
    Raised when normality or centrality is requested for an arrow that is not an effective descent morphism
    """


class CertificationError(TorsionLabError, RuntimeError):
    """
    Raised when a computed construction fails its own certification - this always indicates a bug
    """


class AdmissibilityError(TorsionLabError, RuntimeError):
    """
    Raised when a torsion theory fails Condition (M') or (S) on the catalog used to build a Galois structure
    """

    def __init__(self, message: str, counterexample: Optional[dict] = None):
        super().__init__(message)
        self.counterexample = counterexample


class NoDecompositionError(TorsionLabError, ValueError):
    """
    Raised when an object admits no short Z-exact sequence for a (candidate) torsion theory
    """
