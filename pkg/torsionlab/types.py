import enum
from typing import Callable


@enum.unique
class Family(enum.Enum):
    """
    The four families of finite structures supported by torsionlab
    """
    MV = "mv"  # Finite MV-algebras
    Heyting = "heyting"  # Finite Heyting algebras
    MSet = "mset"  # Finite sets with an action of a finite monoid
    Coslice = "coslice"  # Pointed finite abelian groups (the coslice category Z_m/Ab)

    def __str__(self):
        return self.value


@enum.unique
class ConditionTag(enum.Enum):
    """
    The side conditions a torsion theory can be checked against
    """
    Axioms = "axioms"  # T and F intersect in Z, Hom(T, F) is trivial and every object decomposes
    N = "N"  # The torsion part of every Z-kernel is itself a Z-kernel
    M = "M"  # F(T) is isomorphic to Z(Q) for every short Z-exact sequence T -> A -> Q with T torsion
    MPrime = "Mprime"  # F(T(A)) = Z(F(A)) for every object A
    S = "S"  # Pullbacks of the unit of a torsion object along arrows between Z-objects stay torsion
    P = "P"  # The reflector preserves pullbacks of split epis along arrows inverted by Z

    def __str__(self):
        return self.value


@enum.unique
class ExtensionTag(enum.Enum):
    """
    Classification of an extension with respect to the Galois structure of a torsion theory, strongest first
    """
    Trivial = "trivial"  # The unit naturality square is a pullback
    Normal = "normal"  # Effective descent, and both kernel pair projections are trivial extensions
    Central = "central"  # Effective descent, and the Z-kernel is torsion-free
    NonCentral = "non-central"  # None of the above

    def __str__(self):
        return self.value


@enum.unique
class ProgressType(enum.Enum):
    """
    Supported ways of showing progress
    """
    NoProgress = "none"  # Just run sweeps and log to torsionlab's log
    Fancy = "fancy"  # Show a progress bar while sweeping a catalog

    def __str__(self):
        return self.value


@enum.unique
class SweepProgress(enum.Enum):
    Started = 0
    InProgress = 1
    Done = 2


# The state of the sweep, a description of the sweep, the total and current units of work
ProgressCallback = Callable[[SweepProgress, str, int, int], None]
