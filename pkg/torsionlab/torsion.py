import abc
from typing import Dict, FrozenSet, Iterable, NamedTuple, Optional, Tuple

import networkx as nx

from . import morphisms
from .categories import Category
from .errors import CertificationError, FamilyMismatchError, NoDecompositionError
from .logging import log
from .morphisms import Congruence, Morphism
from .structures import (FiniteHeytingAlgebra, FiniteMSetStructure, FiniteMVAlgebra, FiniteStructure,
                         PointedFiniteAbelianGroup, derive_mv_tables)
from .types import Family
from .zeroclass import DualMSetZeroClass, VarietyZeroClass, ZCokernelWitness, ZeroClass, ZKernelWitness


# MV-algebras: perfect (torsion) and semisimple (torsion-free) parts


def mv_radical(algebra: FiniteMVAlgebra) -> FrozenSet[int]:
    """
    Rad(A) = Inf(A) ∪ {0}, where a ≠ 0 is infinitesimal when n·a ≤ ¬a for every n. The multiples n·a are
    nondecreasing and stabilize within |A| steps, so n ≤ |A| suffices

    :param algebra: The MV-algebra
    :return: The indices of the radical
    """
    leq = derive_mv_tables(algebra).leq
    radical = {0}
    for a in range(1, algebra.size):
        multiple = a
        infinitesimal = True
        for _ in range(algebra.size):
            if not leq[multiple][algebra.neg[a]]:
                infinitesimal = False
                break
            multiple = algebra.oplus[multiple][a]
        if infinitesimal:
            radical.add(a)
    return frozenset(radical)


def mv_perfect_part(algebra: FiniteMVAlgebra) -> Tuple[FiniteStructure, Morphism]:
    """
    :return: The perfect subalgebra P(A) = Rad(A) ∪ ¬Rad(A) and its inclusion
    """
    radical = mv_radical(algebra)
    return morphisms.substructure(algebra, radical | {algebra.neg[x] for x in radical},
                                  name="P({})".format(algebra.describe()))


def mv_semisimple_quotient(algebra: FiniteMVAlgebra) -> Tuple[FiniteStructure, Morphism]:
    """
    :return: The semisimple quotient S(A) = A/Rad(A) and its projection
    """
    theta = morphisms.congruence_from_mv_ideal(algebra, mv_radical(algebra))
    return morphisms.quotient(algebra, theta, name="S({})".format(algebra.describe()))


# Heyting algebras: pseudo-deterministic (torsion) part and Boolean reflection


class Regulars(NamedTuple):
    obj: FiniteHeytingAlgebra
    unit: Morphism


def heyting_regulars(algebra: FiniteHeytingAlgebra) -> Regulars:
    """
    The Boolean algebra of regular elements (¬¬x = x) with meet, implication, and the join ¬(¬x ∧ ¬y), together with
    the surjective unit η = ¬¬

    :param algebra: The Heyting algebra
    :return: The algebra of regulars and the unit onto it
    """
    ng, m = algebra.neg, algebra.meet
    regular = [x for x in range(algebra.size) if ng[ng[x]] == x]
    position = {x: i for i, x in enumerate(regular)}
    meet = tuple(tuple(position[m[x][y]] for y in regular) for x in regular)
    join = tuple(tuple(position[ng[m[ng[x]][ng[y]]]] for y in regular) for x in regular)
    imp = tuple(tuple(position[algebra.imp[x][y]] for y in regular) for x in regular)
    obj = FiniteHeytingAlgebra(algebra.labels_of(*regular), meet, join, position[algebra.bottom],
                               position[algebra.top], imp, name="Reg({})".format(algebra.describe()))
    unit = Morphism(algebra, obj, tuple(position[ng[ng[x]]] for x in range(algebra.size)))
    return Regulars(obj, unit)


def heyting_unit(algebra: FiniteHeytingAlgebra) -> Morphism:
    """
    :return: The unit η = ¬¬ from H onto its regular elements
    """
    return heyting_regulars(algebra).unit


def heyting_pseudo_det_part(algebra: FiniteHeytingAlgebra) -> Tuple[FiniteStructure, Morphism]:
    """
    :return: The subalgebra T(H) = {x | ¬x = 0 or ¬x = 1} and its inclusion
    """
    ng = algebra.neg
    members = [x for x in range(algebra.size) if ng[x] in (algebra.bottom, algebra.top)]
    return morphisms.substructure(algebra, members, name="T({})".format(algebra.describe()))


# M-sets: fixed points and contraction


def mset_fix(x: FiniteMSetStructure) -> FrozenSet[int]:
    """
    :return: The points fixed by every element of the monoid
    """
    return frozenset(p for p in range(x.size) if all(row[p] == p for row in x.action))


def mset_contract(x: FiniteMSetStructure) -> Tuple[FiniteStructure, Morphism]:
    """
    :return: The M-set X/Fix(X) collapsing the fixed points to a single point, and the projection onto it
    """
    fixed = mset_fix(x)
    theta = Congruence.from_blocks([sorted(fixed)] + [[p] for p in range(x.size) if p not in fixed])
    return morphisms.quotient(x, theta, name="{}/Fix".format(x.describe()))


# Pointed abelian groups: the m-divisible part


def _divisible_part_of(group: PointedFiniteAbelianGroup, subgroup: Iterable[int], m: int) -> FrozenSet[int]:
    current = frozenset(subgroup)
    while True:
        image = frozenset(group.multiple(x, m) for x in current)
        if image == current:
            return current
        current = image


def coslice_divisible_part(group: PointedFiniteAbelianGroup, m: Optional[int] = None) -> FrozenSet[int]:
    """
    D_m(A), computed as the stabilized subgroup m^k·A

    :param group: The pointed group
    :param m: The modulus, defaults to the modulus of the group
    :return: The indices of D_m(A)
    """
    return _divisible_part_of(group, range(group.size), group.modulus if m is None else m)


def coslice_divisible_part_by_chains(group: PointedFiniteAbelianGroup, m: Optional[int] = None) -> FrozenSet[int]:
    """
    D_m(A) from its defining property: x is in D_m(A) when there is an infinite chain x = x_0, x_n = m·x_{n+1}. In
    the functional graph y -> m·y of a finite group these are exactly the points lying on a cycle

    :param group: The pointed group
    :param m: The modulus, defaults to the modulus of the group
    :return: The indices of D_m(A)
    """
    m = group.modulus if m is None else m
    graph = nx.DiGraph()
    graph.add_nodes_from(range(group.size))
    graph.add_edges_from((y, group.multiple(y, m)) for y in range(group.size))
    on_cycle = set()
    for component in nx.strongly_connected_components(graph):
        if len(component) > 1 or any(graph.has_edge(v, v) for v in component):
            on_cycle |= component
    return frozenset(on_cycle)


def coslice_torsion_part(group: PointedFiniteAbelianGroup) -> Tuple[FiniteStructure, Morphism]:
    """
    :return: The torsion part ⟨D_m(A), a⟩ and its inclusion
    """
    return morphisms.subalgebra_generated(group, coslice_divisible_part(group), name="T({})".format(group.describe()))


def _coset_congruence(group: PointedFiniteAbelianGroup, subgroup: Iterable[int]) -> Congruence:
    return morphisms.congruence_generated(group, [(0, d) for d in subgroup])


def coslice_reflect(group: PointedFiniteAbelianGroup) -> Tuple[FiniteStructure, Morphism]:
    """
    :return: The torsion-free reflection (A/D_m(A), [a]) and the projection onto it
    """
    theta = _coset_congruence(group, coslice_divisible_part(group))
    return morphisms.quotient(group, theta, name="F({})".format(group.describe()))


class ZExactSequence(NamedTuple):
    """
    A short Z-exact sequence T(A) -> A -> F(A) with the witnesses certifying t = Zker(η) and η = Zcoker(t)
    """
    obj: FiniteStructure
    torsion: FiniteStructure
    t: Morphism
    torsion_free: FiniteStructure
    eta: Morphism
    kernel: ZKernelWitness
    cokernel: ZCokernelWitness


class TorsionTheory(abc.ABC):
    """
    A torsion theory (T, F) relative to a class of zero objects, with a canonical short Z-exact sequence for every
    object
    """
    name = ""
    family = Family.MV
    preserves_all_pullbacks = False

    def __init__(self, zero_class: ZeroClass):
        self.zero_class = zero_class

    @property
    def category(self) -> Category:
        return self.zero_class.category

    def _check_family(self, a: FiniteStructure) -> None:
        if a.family != self.family:
            raise FamilyMismatchError("{} theory cannot act on {}".format(self.name, a.describe()))

    @abc.abstractmethod
    def is_torsion(self, a: FiniteStructure) -> bool:
        pass

    @abc.abstractmethod
    def is_torsion_free(self, a: FiniteStructure) -> bool:
        pass

    @abc.abstractmethod
    def torsion_part(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        """
        :return: The torsion part T(A) and the arrow t_A: T(A) -> A
        """
        pass

    @abc.abstractmethod
    def reflection(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        """
        :return: The torsion-free reflection F(A) and the unit η_A: A -> F(A)
        """
        pass

    @abc.abstractmethod
    def closed_form_e(self, f: Morphism) -> Morphism:
        """
        :return: The E-part of the factorization of f given by the closed form of the family
        """
        pass

    def decompose(self, a: FiniteStructure,
                  test_objects: Optional[Iterable[FiniteStructure]] = None) -> ZExactSequence:
        """
        Build the canonical short Z-exact sequence T(A) -> A -> F(A) and certify it

        :param a: The object to decompose
        :param test_objects: Optional objects to run the universal-property oracles against
        :return: The certified sequence
        """
        self._check_family(a)
        cat, zc = self.category, self.zero_class
        torsion, t = self.torsion_part(a)
        torsion_free, eta = self.reflection(a)
        if not self.is_torsion(torsion) or not self.is_torsion_free(torsion_free):
            raise CertificationError("Ends of the sequence of {} are not torsion/torsion-free".format(a.describe()))
        kernel = zc.zker(eta)
        if not cat.same_subobject(kernel.kernel, t):
            raise CertificationError("t is not the Z-kernel of η for {}".format(a.describe()))
        cokernel = zc.zcoker(t)
        if cokernel is None or not cat.same_quotient(cokernel.cokernel, eta):
            raise CertificationError("η is not the Z-cokernel of t for {}".format(a.describe()))
        if test_objects is not None:
            test_objects = list(test_objects)
            if not zc.is_zkernel(t, eta, test_objects) or not zc.is_zcokernel(eta, t, test_objects):
                raise CertificationError("Sequence of {} fails the universal-property oracles".format(a.describe()))
        log.debug("Decomposed {}: |T| = {}, |F| = {}".format(a.describe(), torsion.size, torsion_free.size))
        return ZExactSequence(a, torsion, t, torsion_free, eta, kernel, cokernel)

    def search_decomposition(self, a: FiniteStructure) -> Optional[ZExactSequence]:
        """
        Search the regular quotients of an object for a short Z-exact sequence with torsion kernel and torsion-free
        cokernel, without using the closed forms

        :param a: The object
        :return: The first sequence found, or None if there is none
        """
        cat, zc = self.category, self.zero_class
        for q in cat.regular_quotients(a):
            if not self.is_torsion_free(cat.cod(q)):
                continue
            kernel = zc.zker(q)
            if not self.is_torsion(cat.dom(kernel.kernel)):
                continue
            cokernel = zc.zcoker(kernel.kernel)
            if cokernel is None or not cat.same_quotient(cokernel.cokernel, q):
                continue
            return ZExactSequence(a, cat.dom(kernel.kernel), kernel.kernel, cat.cod(q), q, kernel, cokernel)
        return None

    def find_decomposition(self, a: FiniteStructure) -> Optional[ZExactSequence]:
        return self.decompose(a)

    def reflect_arrow(self, f: Morphism) -> Morphism:
        """
        :return: F(f): F(A) -> F(B), the arrow induced through the unit η_A
        """
        cat = self.category
        _, eta_a = self.reflection(cat.dom(f))
        _, eta_b = self.reflection(cat.cod(f))
        induced = cat.factor_through(cat.compose(eta_b, f), eta_a)
        if induced is None:
            raise CertificationError("Unit of {} is not universal".format(cat.dom(f).describe()))
        return induced

    def coreflect_arrow(self, f: Morphism) -> Morphism:
        """
        :return: T(f): T(A) -> T(B), the restriction of f to the torsion parts
        """
        cat = self.category
        _, t_a = self.torsion_part(cat.dom(f))
        _, t_b = self.torsion_part(cat.cod(f))
        induced = cat.lift_through(cat.compose(f, t_a), t_b)
        if induced is None:
            raise CertificationError("Torsion part of {} is not coreflective".format(cat.cod(f).describe()))
        return induced

    def functorial_action(self, f: Morphism) -> Tuple[Morphism, Morphism]:
        """
        Compute T(f) and F(f) by filtering all candidate arrows for those making the naturality squares commute, and
        certify that each is unique

        :param f: An arrow A -> B
        :return: The pair (T(f), F(f))
        """
        cat = self.category
        a, b = cat.dom(f), cat.cod(f)
        torsion_a, t_a = self.torsion_part(a)
        torsion_b, t_b = self.torsion_part(b)
        free_a, eta_a = self.reflection(a)
        free_b, eta_b = self.reflection(b)
        t_f = [h for h in cat.homs(torsion_a, torsion_b) if cat.compose(t_b, h) == cat.compose(f, t_a)]
        f_f = [h for h in cat.homs(free_a, free_b) if cat.compose(h, eta_a) == cat.compose(eta_b, f)]
        if len(t_f) != 1 or len(f_f) != 1:
            raise CertificationError("Naturality fillers are not unique: {} for T(f), {} for F(f)".format(len(t_f),
                                                                                                         len(f_f)))
        return t_f[0], f_f[0]


class MVTheory(TorsionTheory):
    """
    Perfect MV-algebras as torsion objects, semisimple ones as torsion-free objects
    """
    name = "mv"
    family = Family.MV

    def __init__(self):
        super().__init__(VarietyZeroClass(Family.MV))

    def is_torsion(self, a: FiniteStructure) -> bool:
        assert isinstance(a, FiniteMVAlgebra)
        radical = mv_radical(a)
        return len(radical | {a.neg[x] for x in radical}) == a.size

    def is_torsion_free(self, a: FiniteStructure) -> bool:
        assert isinstance(a, FiniteMVAlgebra)
        return mv_radical(a) == frozenset({0})

    def torsion_part(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        assert isinstance(a, FiniteMVAlgebra)
        return mv_perfect_part(a)

    def reflection(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        assert isinstance(a, FiniteMVAlgebra)
        return mv_semisimple_quotient(a)

    def closed_form_e(self, f: Morphism) -> Morphism:
        a = f.source
        assert isinstance(a, FiniteMVAlgebra)
        ideal = {x for x in mv_radical(a) if f(x) == 0}
        return morphisms.quotient(a, morphisms.congruence_from_mv_ideal(a, ideal))[1]


class SwappedMVTheory(MVTheory):
    """
    Semisimple MV-algebras as torsion objects and perfect ones as torsion-free objects. This is not a torsion theory
    and exists to exercise the checkers on a negative case
    """
    name = "mv-swapped"

    def is_torsion(self, a: FiniteStructure) -> bool:
        return super().is_torsion_free(a)

    def is_torsion_free(self, a: FiniteStructure) -> bool:
        return super().is_torsion(a)

    def find_decomposition(self, a: FiniteStructure) -> Optional[ZExactSequence]:
        return self.search_decomposition(a)

    def _sequence(self, a: FiniteStructure) -> ZExactSequence:
        sequence = self.search_decomposition(a)
        if sequence is None:
            raise NoDecompositionError("{} has no short Z-exact sequence for the {} theory".format(a.describe(),
                                                                                                  self.name))
        return sequence

    def torsion_part(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        sequence = self._sequence(a)
        return sequence.torsion, sequence.t

    def reflection(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        sequence = self._sequence(a)
        return sequence.torsion_free, sequence.eta


class HeytingTheory(TorsionTheory):
    """
    Pseudo-deterministic Heyting algebras as torsion objects, Boolean algebras as torsion-free objects
    """
    name = "heyting"
    family = Family.Heyting
    preserves_all_pullbacks = True

    def __init__(self):
        super().__init__(VarietyZeroClass(Family.Heyting))

    def is_torsion(self, a: FiniteStructure) -> bool:
        assert isinstance(a, FiniteHeytingAlgebra)
        return all(a.neg[x] in (a.bottom, a.top) for x in range(a.size))

    def is_torsion_free(self, a: FiniteStructure) -> bool:
        assert isinstance(a, FiniteHeytingAlgebra)
        return all(a.neg[a.neg[x]] == x for x in range(a.size))

    def torsion_part(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        assert isinstance(a, FiniteHeytingAlgebra)
        return heyting_pseudo_det_part(a)

    def reflection(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        assert isinstance(a, FiniteHeytingAlgebra)
        regulars = heyting_regulars(a)
        return regulars.obj, regulars.unit

    def closed_form_e(self, f: Morphism) -> Morphism:
        a = f.source
        assert isinstance(a, FiniteHeytingAlgebra)
        theta = Congruence.of_map(f.map).meet(Congruence.of_map(heyting_unit(a).map))
        return morphisms.quotient(a, theta)[1]


class MSetTheory(TorsionTheory):
    """
    The torsion theory of the opposite category of M-sets: objects with at most one fixed point are torsion, objects
    with a trivial action are torsion-free. T(X) = X/Fix(X) and F(X) = Fix(X)
    """
    name = "mset"
    family = Family.MSet

    def __init__(self):
        super().__init__(DualMSetZeroClass())

    def is_torsion(self, a: FiniteStructure) -> bool:
        assert isinstance(a, FiniteMSetStructure)
        return len(mset_fix(a)) <= 1

    def is_torsion_free(self, a: FiniteStructure) -> bool:
        assert isinstance(a, FiniteMSetStructure)
        return len(mset_fix(a)) == a.size

    def torsion_part(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        assert isinstance(a, FiniteMSetStructure)
        return mset_contract(a)

    def reflection(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        assert isinstance(a, FiniteMSetStructure)
        return morphisms.substructure(a, mset_fix(a), name="Fix({})".format(a.describe()))

    def closed_form_e(self, f: Morphism) -> Morphism:
        # f is the M-set map B -> A, the E-part is the inclusion of f(B) ∪ Fix(A) into A
        a = f.target
        assert isinstance(a, FiniteMSetStructure)
        return morphisms.substructure(a, f.image_set | mset_fix(a))[1]


class CosliceTheory(TorsionTheory):
    """
    The torsion theory of Z_m/Ab: (A, a) is torsion when A = ⟨D_m(A), a⟩ and torsion-free when D_m(A) = 0
    """
    name = "coslice"
    family = Family.Coslice

    def __init__(self, modulus: int):
        super().__init__(VarietyZeroClass(Family.Coslice))
        self.modulus = modulus

    def _check_family(self, a: FiniteStructure) -> None:
        super()._check_family(a)
        assert isinstance(a, PointedFiniteAbelianGroup)
        if a.modulus != self.modulus:
            raise FamilyMismatchError("{} has modulus {}, theory uses {}".format(a.describe(), a.modulus,
                                                                                 self.modulus))

    def is_torsion(self, a: FiniteStructure) -> bool:
        assert isinstance(a, PointedFiniteAbelianGroup)
        return len(morphisms.closure(a, coslice_divisible_part(a))) == a.size

    def is_torsion_free(self, a: FiniteStructure) -> bool:
        assert isinstance(a, PointedFiniteAbelianGroup)
        return coslice_divisible_part(a) == frozenset({0})

    def torsion_part(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        assert isinstance(a, PointedFiniteAbelianGroup)
        return coslice_torsion_part(a)

    def reflection(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        assert isinstance(a, PointedFiniteAbelianGroup)
        return coslice_reflect(a)

    def closed_form_e(self, f: Morphism) -> Morphism:
        a = f.source
        assert isinstance(a, PointedFiniteAbelianGroup)
        divisible = _divisible_part_of(a, [x for x in range(a.size) if f(x) == 0], a.modulus)
        return morphisms.quotient(a, _coset_congruence(a, divisible))[1]


class ReflectiveTheory(TorsionTheory):
    """
    The torsion theory generated by the reflection of another theory alone: an object is torsion when it reflects
    into Z, torsion-free when its unit is an isomorphism, and its torsion part is the Z-kernel of its unit. This
    agrees with the generating theory whenever every unit is a Z-cokernel, F maps Z into Z and the reflection is
    idempotent, which `reflection_failure` checks object by object
    """

    def __init__(self, theory: TorsionTheory):
        """
        :param theory: The theory whose reflection, zero class and family are used
        """
        super().__init__(theory.zero_class)
        self.base = theory
        self.name = "{}-reflected".format(theory.name)
        self.family = theory.family
        self.preserves_all_pullbacks = theory.preserves_all_pullbacks

    def _check_family(self, a: FiniteStructure) -> None:
        self.base._check_family(a)

    def reflection(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        return self.base.reflection(a)

    def is_torsion(self, a: FiniteStructure) -> bool:
        return self.zero_class.contains(self.reflection(a)[0])

    def is_torsion_free(self, a: FiniteStructure) -> bool:
        return self.category.is_iso(self.reflection(a)[1])

    def torsion_part(self, a: FiniteStructure) -> Tuple[FiniteStructure, Morphism]:
        kernel = self.zero_class.zker(self.reflection(a)[1]).kernel
        return self.category.dom(kernel), kernel

    def closed_form_e(self, f: Morphism) -> Morphism:
        # The Z-cokernel of the torsion part of the Z-kernel of f
        cat, zc = self.category, self.zero_class
        k = zc.zker(f).kernel
        _, t = self.torsion_part(cat.dom(k))
        cokernel = zc.zcoker(cat.compose(k, t))
        if cokernel is None:
            raise CertificationError("Torsion part of the Z-kernel of {} has no maximum quotient in Z".format(
                cat.describe(f)))
        return cokernel.cokernel

    def reflection_failure(self, a: FiniteStructure) -> Optional[Dict[str, str]]:
        """
        Check the reflection at one object: η_A is the Z-cokernel of its own Z-kernel, F(A) is torsion-free, and F(A)
        lies in Z when A does

        :param a: The object
        :return: The first failing property, or None
        """
        cat, zc = self.category, self.zero_class
        free, eta = self.reflection(a)
        cokernel = zc.zcoker(zc.zker(eta).kernel)
        if cokernel is None or not cat.same_quotient(cokernel.cokernel, eta):
            return {"property": "unit is a Z-cokernel", "object": a.describe()}
        if not self.is_torsion_free(free):
            return {"property": "reflection is idempotent", "object": a.describe()}
        if zc.contains(a) and not zc.contains(free):
            return {"property": "F(Z) ⊆ Z", "object": a.describe()}
        return None


def theory_from_reflection(theory: TorsionTheory) -> ReflectiveTheory:
    """
    Rebuild a torsion theory from its reflection onto the torsion-free objects

    :param theory: The theory providing the reflection
    :return: The theory whose torsion objects are the Z-kernels of the units
    """
    return ReflectiveTheory(theory)


THEORY_NAMES = ("mv", "heyting", "mset", "coslice", "mv-swapped")


def theory_for(name: str, modulus: int = 2) -> TorsionTheory:
    """
    :param name: One of THEORY_NAMES
    :param modulus: The modulus of the coslice theory
    :return: The torsion theory
    """
    if name == "mv":
        return MVTheory()
    if name == "mv-swapped":
        return SwappedMVTheory()
    if name == "heyting":
        return HeytingTheory()
    if name == "mset":
        return MSetTheory()
    if name == "coslice":
        return CosliceTheory(modulus)
    raise ValueError("Unknown theory: {}".format(name))
