import abc
from typing import Any, Dict, Hashable, List, NamedTuple, Optional, Set, Tuple

from . import morphisms
from .morphisms import Congruence, Morphism
from .structures import FiniteMSetStructure, FiniteStructure


class Cone(NamedTuple):
    """
    A pullback in a category: the object, its two legs, and the underlying construction used to induce arrows into it
    """
    obj: FiniteStructure
    pi1: Morphism
    pi2: Morphism
    construction: Any


class Category(abc.ABC):
    """
    The operations the generic torsion-theoretic machinery needs from a category whose objects are finite structures.
    Arrows are always stored as Morphism instances, but a category may read them backwards (see OppositeMSets)
    """

    @abc.abstractmethod
    def homs(self, a: FiniteStructure, b: FiniteStructure) -> List[Morphism]:
        pass

    @abc.abstractmethod
    def dom(self, f: Morphism) -> FiniteStructure:
        pass

    @abc.abstractmethod
    def cod(self, f: Morphism) -> FiniteStructure:
        pass

    @abc.abstractmethod
    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        """
        :return: The composite g∘f of f: A -> B and g: B -> C in this category
        """
        pass

    @abc.abstractmethod
    def is_mono(self, f: Morphism) -> bool:
        pass

    @abc.abstractmethod
    def is_epi(self, f: Morphism) -> bool:
        pass

    @abc.abstractmethod
    def is_descent(self, f: Morphism) -> bool:
        """
        :return: Whether f is an effective descent morphism
        """
        pass

    @abc.abstractmethod
    def pullback(self, f: Morphism, g: Morphism) -> Cone:
        pass

    @abc.abstractmethod
    def induced_into_pullback(self, cone: Cone, u: Morphism, v: Morphism) -> Morphism:
        pass

    @abc.abstractmethod
    def pushout_of_quotient(self, q: Morphism, f: Morphism) -> Tuple[Morphism, Morphism]:
        """
        Push a regular epi q: A -> M out along f: A -> B

        :return: The arrow B -> P and the induced arrow M -> P
        """
        pass

    @abc.abstractmethod
    def regular_quotients(self, a: FiniteStructure) -> List[Morphism]:
        pass

    @abc.abstractmethod
    def terminal_arrow(self, a: FiniteStructure) -> Morphism:
        pass

    @abc.abstractmethod
    def find_isomorphism(self, a: FiniteStructure, b: FiniteStructure) -> Optional[Morphism]:
        pass

    @abc.abstractmethod
    def factor_through(self, g: Morphism, q: Morphism) -> Optional[Morphism]:
        """
        :return: An arrow h with h∘q = g for a regular epi q, or None if g does not factor through q
        """
        pass

    @abc.abstractmethod
    def lift_through(self, g: Morphism, m: Morphism) -> Optional[Morphism]:
        """
        :return: An arrow h with m∘h = g for a mono m, or None if g does not factor through m
        """
        pass

    @abc.abstractmethod
    def subobject_key(self, m: Morphism) -> Hashable:
        """
        :return: A key shared by two monos into the same object exactly when they represent the same subobject
        """
        pass

    def identity(self, a: FiniteStructure) -> Morphism:
        return morphisms.identity(a)

    def is_iso(self, f: Morphism) -> bool:
        return morphisms.classify_morphism(f).iso

    def kernel_pair(self, f: Morphism) -> Cone:
        return self.pullback(f, f)

    def same_subobject(self, m1: Morphism, m2: Morphism) -> bool:
        """
        :return: Whether there is an isomorphism φ with m1∘φ = m2
        """
        phi = self.lift_through(m2, m1)
        return phi is not None and self.is_iso(phi)

    def same_quotient(self, q1: Morphism, q2: Morphism) -> bool:
        """
        :return: Whether there is an isomorphism φ with φ∘q1 = q2
        """
        phi = self.factor_through(q2, q1)
        return phi is not None and self.is_iso(phi)

    def is_split_epi(self, f: Morphism) -> bool:
        target_identity = self.identity(self.cod(f))
        return any(self.compose(f, s) == target_identity for s in self.homs(self.cod(f), self.dom(f)))

    def describe(self, f: Morphism) -> Dict[str, Any]:
        """
        :return: A JSON-friendly description of an arrow read in the direction of this category. The map is always the
                 stored one
        """
        return {"from": self.dom(f).describe(), "to": self.cod(f).describe(), "map": f.as_labels()}


class Variety(Category):
    """
    The category of finite structures of one signature with structure-preserving maps
    """

    def homs(self, a: FiniteStructure, b: FiniteStructure) -> List[Morphism]:
        return morphisms.enumerate_homs(a, b)

    def dom(self, f: Morphism) -> FiniteStructure:
        return f.source

    def cod(self, f: Morphism) -> FiniteStructure:
        return f.target

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        return morphisms.compose(g, f)

    def is_mono(self, f: Morphism) -> bool:
        return morphisms.classify_morphism(f).mono

    def is_epi(self, f: Morphism) -> bool:
        return morphisms.classify_morphism(f).epi

    def is_descent(self, f: Morphism) -> bool:
        return morphisms.classify_morphism(f).epi

    def pullback(self, f: Morphism, g: Morphism) -> Cone:
        pb = morphisms.pullback(f, g)
        return Cone(pb.obj, pb.pi1, pb.pi2, pb)

    def induced_into_pullback(self, cone: Cone, u: Morphism, v: Morphism) -> Morphism:
        return morphisms.induced_into_pullback(cone.construction, u, v)

    def pushout_of_quotient(self, q: Morphism, f: Morphism) -> Tuple[Morphism, Morphism]:
        return morphisms.pushout_of_quotient(q, f)

    def regular_quotients(self, a: FiniteStructure) -> List[Morphism]:
        return [morphisms.quotient(a, theta)[1] for theta in morphisms.congruence_lattice(a)]

    def terminal_arrow(self, a: FiniteStructure) -> Morphism:
        return Morphism(a, a.terminal(), tuple(0 for _ in range(a.size)))

    def find_isomorphism(self, a: FiniteStructure, b: FiniteStructure) -> Optional[Morphism]:
        return morphisms.find_isomorphism(a, b)

    def factor_through(self, g: Morphism, q: Morphism) -> Optional[Morphism]:
        if g.source != q.source:
            return None
        if not morphisms.classify_morphism(q).epi:
            for h in self.homs(q.target, g.target):
                if morphisms.compose(h, q) == g:
                    return h
            return None
        assignment = [-1] * q.target.size
        for x, m in enumerate(q.map):
            if assignment[m] == -1:
                assignment[m] = g(x)
            elif assignment[m] != g(x):
                return None
        return Morphism(q.target, g.target, tuple(assignment))

    def lift_through(self, g: Morphism, m: Morphism) -> Optional[Morphism]:
        if g.target != m.target or not morphisms.classify_morphism(m).mono:
            return None
        position = {y: i for i, y in enumerate(m.map)}
        if not g.image_set <= set(position):
            return None
        return Morphism(g.source, m.source, tuple(position[y] for y in g.map))

    def subobject_key(self, m: Morphism) -> Hashable:
        return tuple(sorted(m.image_set))


def sub_msets(x: FiniteMSetStructure) -> List[frozenset]:
    """
    :return: All subsets of the carrier closed under the action, ordered by size and then by their sorted points
    """
    orbits = [frozenset(x.action[m][p] for m in range(x.monoid.size)) for p in range(x.size)]
    found: Set[frozenset] = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        discovered = []
        for s in frontier:
            for orbit in orbits:
                union = s | orbit
                if union not in found:
                    found.add(union)
                    discovered.append(union)
        frontier = discovered
    return sorted(found, key=lambda s: (len(s), sorted(s)))


class OppositeMSets(Category):
    """
    The opposite of the category of M-sets over a fixed monoid. An arrow A -> B of the opposite category is stored as
    the M-set map B -> A, so limits here are colimits of M-sets and vice versa
    """

    def __init__(self):
        self._msets = Variety()

    def homs(self, a: FiniteStructure, b: FiniteStructure) -> List[Morphism]:
        return morphisms.enumerate_homs(b, a)

    def dom(self, f: Morphism) -> FiniteStructure:
        return f.target

    def cod(self, f: Morphism) -> FiniteStructure:
        return f.source

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        return morphisms.compose(f, g)

    def is_mono(self, f: Morphism) -> bool:
        return morphisms.classify_morphism(f).epi

    def is_epi(self, f: Morphism) -> bool:
        return morphisms.classify_morphism(f).mono

    def is_descent(self, f: Morphism) -> bool:
        return morphisms.classify_morphism(f).mono

    def pullback(self, f: Morphism, g: Morphism) -> Cone:
        po = morphisms.pushout(f, g)
        return Cone(po.obj, po.into1, po.into2, po)

    def induced_into_pullback(self, cone: Cone, u: Morphism, v: Morphism) -> Morphism:
        return morphisms.induced_from_pushout(cone.construction, u, v)

    def pushout_of_quotient(self, q: Morphism, f: Morphism) -> Tuple[Morphism, Morphism]:
        if not morphisms.classify_morphism(q).mono:
            raise ValueError("Pushouts are only computed along regular epis")
        pb = morphisms.pullback(q, f)
        return pb.pi2, pb.pi1

    def regular_quotients(self, a: FiniteStructure) -> List[Morphism]:
        assert isinstance(a, FiniteMSetStructure)
        return [morphisms.substructure(a, s)[1] for s in reversed(sub_msets(a))]

    def terminal_arrow(self, a: FiniteStructure) -> Morphism:
        assert isinstance(a, FiniteMSetStructure)
        return Morphism(a.empty(), a, ())

    def find_isomorphism(self, a: FiniteStructure, b: FiniteStructure) -> Optional[Morphism]:
        return morphisms.find_isomorphism(b, a)

    def factor_through(self, g: Morphism, q: Morphism) -> Optional[Morphism]:
        return self._msets.lift_through(g, q)

    def lift_through(self, g: Morphism, m: Morphism) -> Optional[Morphism]:
        return self._msets.factor_through(g, m)

    def subobject_key(self, m: Morphism) -> Hashable:
        return Congruence.of_map(m.map)
