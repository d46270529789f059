import abc
from typing import Iterable, List, NamedTuple, Optional

from . import morphisms
from .categories import Category, OppositeMSets, Variety
from .errors import CertificationError, FamilyMismatchError
from .logging import log
from .morphisms import Congruence, Morphism
from .structures import (FiniteMSetStructure, FiniteStructure, PointedFiniteAbelianGroup, cyclic_group,
                         heyting_chain, lukasiewicz_chain)
from .types import Family


class ZeroPart(NamedTuple):
    """
    The largest Z-subobject Z(A) of an object with its inclusion ε_A: Z(A) -> A
    """
    obj: FiniteStructure
    inclusion: Morphism


class ZKernelWitness(NamedTuple):
    """
    The Z-kernel k: K -> A of f: A -> B, as the pullback of ε_B: Z(B) -> B along f
    """
    arrow: Morphism
    kernel: Morphism
    to_zero: Morphism
    zero_inclusion: Morphism


class ZCokernelWitness(NamedTuple):
    """
    The Z-cokernel q: B -> Q of f: A -> B, as the pushout of the maximum quotient x: A -> M(A) along f
    """
    arrow: Morphism
    cokernel: Morphism
    max_quotient: Morphism
    from_zero: Morphism


class ZeroClass(abc.ABC):
    """
    A class Z of zero objects in a category of finite structures, with the kernel machinery relative to the ideal of
    arrows factoring through a member of Z
    """

    def __init__(self, family: Family, category: Category):
        self.family = family
        self.category = category

    @abc.abstractmethod
    def contains(self, a: FiniteStructure) -> bool:
        pass

    @abc.abstractmethod
    def members(self, a: FiniteStructure) -> List[FiniteStructure]:
        """
        :return: Representatives of all members of Z living in the same category as a
        """
        pass

    @abc.abstractmethod
    def zero_part(self, a: FiniteStructure) -> ZeroPart:
        pass

    @abc.abstractmethod
    def zero_part_map(self, f: Morphism) -> Morphism:
        """
        :return: Z(f): Z(A) -> Z(B), the restriction of f: A -> B to the zero parts
        """
        pass

    @abc.abstractmethod
    def is_trivial(self, f: Morphism) -> bool:
        """
        :return: Whether f factors through a member of Z
        """
        pass

    @abc.abstractmethod
    def zker(self, f: Morphism) -> ZKernelWitness:
        pass

    def terminal_map(self, a: FiniteStructure) -> Morphism:
        """
        :return: The unique arrow v_A from a to the terminal object, which lies in Z for every family
        """
        return self.category.terminal_arrow(a)

    def is_trivial_by_search(self, f: Morphism) -> bool:
        """
        Decide triviality from the definition, by searching for a factorization through every member of Z
        """
        cat = self.category
        for z in self.members(cat.dom(f)):
            for g in cat.homs(cat.dom(f), z):
                if any(cat.compose(h, g) == f for h in cat.homs(z, cat.cod(f))):
                    return True
        return False

    def is_inverted(self, f: Morphism) -> bool:
        """
        :return: Whether Z(f) is an isomorphism
        """
        return self.category.is_iso(self.zero_part_map(f))

    def max_quotient_in_z(self, a: FiniteStructure) -> Optional[Morphism]:
        """
        Find a regular quotient x: A -> M(A) with M(A) in Z through which every arrow from A into a member of Z
        factors

        :param a: The object
        :return: The maximum quotient, or None if A has none
        """
        cat = self.category
        arrows = [g for z in self.members(a) for g in cat.homs(a, z)]
        for q in cat.regular_quotients(a):
            if not self.contains(cat.cod(q)):
                continue
            if all(cat.factor_through(g, q) is not None for g in arrows):
                return q
        log.debug("{} has no maximum quotient in Z".format(a.describe()))
        return None

    def zcoker(self, f: Morphism) -> Optional[ZCokernelWitness]:
        """
        :return: The Z-cokernel of f, or None when the domain of f has no maximum quotient in Z
        """
        x = self.max_quotient_in_z(self.category.dom(f))
        if x is None:
            return None
        cokernel, from_zero = self.category.pushout_of_quotient(x, f)
        return ZCokernelWitness(f, cokernel, x, from_zero)

    def is_zkernel(self, k: Morphism, f: Morphism, test_objects: Iterable[FiniteStructure]) -> bool:
        """
        Bounded oracle for the Z-kernel universal property: f∘k is trivial, and every e: C -> A with f∘e trivial
        factors uniquely through k, for every test object C

        :param k: The candidate Z-kernel
        :param f: The arrow
        :param test_objects: The objects to test the universal property against
        :return: Whether the property holds on all test objects
        """
        cat = self.category
        a = cat.dom(f)
        if not self.is_trivial(cat.compose(f, k)):
            return False
        for c in test_objects:
            if c.signature != a.signature:
                continue
            lifts_into = cat.homs(c, cat.dom(k))
            for e in cat.homs(c, a):
                if self.is_trivial(cat.compose(f, e)):
                    if sum(1 for h in lifts_into if cat.compose(k, h) == e) != 1:
                        return False
        return True

    def is_zcokernel(self, q: Morphism, f: Morphism, test_objects: Iterable[FiniteStructure]) -> bool:
        """
        Bounded oracle for the Z-cokernel universal property: q∘f is trivial, and every g: B -> C with g∘f trivial
        factors uniquely through q, for every test object C

        :param q: The candidate Z-cokernel
        :param f: The arrow
        :param test_objects: The objects to test the universal property against
        :return: Whether the property holds on all test objects
        """
        cat = self.category
        b = cat.cod(f)
        if not self.is_trivial(cat.compose(q, f)):
            return False
        for c in test_objects:
            if c.signature != b.signature:
                continue
            factors_from = cat.homs(cat.cod(q), c)
            for g in cat.homs(b, c):
                if self.is_trivial(cat.compose(g, f)):
                    if sum(1 for h in factors_from if cat.compose(h, q) == g) != 1:
                        return False
        return True


class VarietyZeroClass(ZeroClass):
    """
    The zero class of MV-algebras, Heyting algebras and pointed abelian groups: the objects generated by their
    constants. Z(A) is the substructure generated by the constants
    """

    def __init__(self, family: Family):
        if family == Family.MSet:
            raise FamilyMismatchError("The zero class of M-sets lives in the opposite category")
        super().__init__(family, Variety())

    def contains(self, a: FiniteStructure) -> bool:
        return len(morphisms.closure(a, ())) == a.size

    def members(self, a: FiniteStructure) -> List[FiniteStructure]:
        if self.family == Family.MV:
            return [a.terminal(), lukasiewicz_chain(1)]
        if self.family == Family.Heyting:
            return [a.terminal(), heyting_chain(2)]
        assert isinstance(a, PointedFiniteAbelianGroup)
        m = a.modulus
        return [cyclic_group(h, 1 % h, m) for h in range(1, m + 1) if m % h == 0]

    def zero_part(self, a: FiniteStructure) -> ZeroPart:
        return ZeroPart(*morphisms.subalgebra_generated(a, ()))

    def zero_part_map(self, f: Morphism) -> Morphism:
        source = self.zero_part(f.source).inclusion
        target = self.zero_part(f.target).inclusion
        position = {y: i for i, y in enumerate(target.map)}
        return Morphism(source.source, target.source, tuple(position[f(x)] for x in source.map))

    def is_trivial(self, f: Morphism) -> bool:
        return f.image_set <= morphisms.closure(f.target, ())

    def zker(self, f: Morphism) -> ZKernelWitness:
        eps = self.zero_part(f.target).inclusion
        if self.family == Family.Coslice:
            # ⟨f⁻¹(0), a⟩ coincides with the preimage of ⟨b⟩
            kernel_obj, k = morphisms.subalgebra_generated(f.source, [x for x in range(f.source.size) if f(x) == 0])
            if set(k.map) != {x for x in range(f.source.size) if f(x) in eps.image_set}:
                raise CertificationError("Generated Z-kernel differs from the preimage of the zero part")
        else:
            kernel_obj, k = morphisms.preimage(f, eps.image_set)
        position = {y: i for i, y in enumerate(eps.map)}
        to_zero = Morphism(kernel_obj, eps.source, tuple(position[f(x)] for x in k.map))
        return ZKernelWitness(f, k, to_zero, eps)


class DualMSetZeroClass(ZeroClass):
    """
    The zero class {1, ∅} of the opposite category of M-sets. Arrows are stored as M-set maps read backwards
    """

    def __init__(self):
        super().__init__(Family.MSet, OppositeMSets())

    def contains(self, a: FiniteStructure) -> bool:
        return a.size <= 1

    def members(self, a: FiniteStructure) -> List[FiniteStructure]:
        assert isinstance(a, FiniteMSetStructure)
        return [a.terminal(), a.empty()]

    def zero_part(self, a: FiniteStructure) -> ZeroPart:
        assert isinstance(a, FiniteMSetStructure)
        if a.size == 0:
            return ZeroPart(a, morphisms.identity(a))
        point = a.terminal()
        return ZeroPart(point, Morphism(a, point, tuple(0 for _ in range(a.size))))

    def zero_part_map(self, f: Morphism) -> Morphism:
        source = self.zero_part(f.target).obj
        target = self.zero_part(f.source).obj
        return Morphism(target, source, tuple(0 for _ in range(target.size)))

    def is_trivial(self, f: Morphism) -> bool:
        # f is the M-set map B -> A of an arrow A -> B of the opposite category
        if f.source.size == 0:
            return True
        assert isinstance(f.target, FiniteMSetStructure)
        if len(f.image_set) != 1:
            return False
        (point,) = f.image_set
        return all(row[point] == point for row in f.target.action)

    def zker(self, f: Morphism) -> ZKernelWitness:
        a, b = f.target, f.source
        eps = self.zero_part(b).inclusion
        if b.size == 0:
            return ZKernelWitness(f, morphisms.identity(a), Morphism(b, a, ()), eps)
        collapsed = sorted(f.image_set)
        theta = Congruence.from_blocks([collapsed] + [[x] for x in range(a.size) if x not in f.image_set])
        kernel_obj, k = morphisms.quotient(a, theta)
        to_zero = Morphism(eps.target, kernel_obj, (k(collapsed[0]),))
        return ZKernelWitness(f, k, to_zero, eps)


def zero_class_for(family: Family) -> ZeroClass:
    """
    :return: The zero class of the provided family (the opposite category for M-sets)
    """
    if family == Family.MSet:
        return DualMSetZeroClass()
    return VarietyZeroClass(family)
