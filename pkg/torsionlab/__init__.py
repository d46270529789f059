from .config import TorsionLabConfig  # NOQA
from .lab import Lab, run  # NOQA
from .logging import log  # NOQA
from .types import ConditionTag, ExtensionTag, Family, ProgressType  # NOQA
from .errors import (TorsionLabError, MalformedStructureError, InvalidStructureError, NotHeytingError,  # NOQA
                     FamilyMismatchError, InvalidMorphismError, NotDescentError, CertificationError,
                     AdmissibilityError, NoDecompositionError)
from .structures import (FiniteMVAlgebra, FiniteHeytingAlgebra, FiniteMonoid, FiniteMSetStructure,  # NOQA
                         PointedFiniteAbelianGroup, validate, require_valid, lukasiewicz_chain, heyting_chain,
                         boolean_algebra, downset_lattice, abelian_group, cyclic_group, mset)
from .morphisms import Morphism, enumerate_homs  # NOQA
from .catalogs import Catalog, generate_catalog  # NOQA
from .zeroclass import zero_class_for  # NOQA
from .torsion import TorsionTheory, theory_for, theory_from_reflection  # NOQA
from .factorization import factorize, check_condition, check_orthogonality, verify_factorization_system  # NOQA
from .galois import GaloisContext, classify_extension  # NOQA
from . import checksums  # NOQA
from . import serialization  # NOQA

# Define version
from .version import VERSION, __version__  # NOQA
