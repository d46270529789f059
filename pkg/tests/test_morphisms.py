#!/usr/bin/env python
import dataclasses

import pytest

from torsionlab import morphisms
from torsionlab.catalogs import generate_catalog
from torsionlab.categories import OppositeMSets, Variety, sub_msets
from torsionlab.errors import FamilyMismatchError, InvalidMorphismError
from torsionlab.morphisms import Congruence, Morphism
from torsionlab.structures import (FiniteMVAlgebra, PointedFiniteAbelianGroup, cyclic_group, heyting_chain,
                                   lukasiewicz_chain)
from torsionlab.types import Family


def test_enumerate_homs(l2, chain3, z4, z2) -> None:
    """
    Test hom enumeration in each variety against hand-computed hom sets
    """
    # ¬(1/2) = 1/2 forces the middle element to be fixed, and Ł1 has no such element
    assert [f.map for f in morphisms.enumerate_homs(l2, l2)] == [(0, 1, 2)]
    assert morphisms.enumerate_homs(l2, lukasiewicz_chain(1)) == []
    assert [f.map for f in morphisms.enumerate_homs(lukasiewicz_chain(1), l2)] == [(0, 2)]

    # a ⇒ 0 = 0 rules out sending a to 0
    assert [f.map for f in morphisms.enumerate_homs(chain3, heyting_chain(2))] == [(0, 1, 1)]

    assert [f.map for f in morphisms.enumerate_homs(z4, z2)] == [(0, 0, 0, 0), (0, 1, 0, 1)]


def test_homs_require_same_category(l2, chain3) -> None:
    """
    Test that structures of different families, or of different moduli, cannot be related
    """
    with pytest.raises(FamilyMismatchError):
        morphisms.enumerate_homs(l2, chain3)
    with pytest.raises(FamilyMismatchError):
        morphisms.enumerate_homs(cyclic_group(2, 0, 2), cyclic_group(2, 0, 3))


def test_create_certifies_maps(z4, z2) -> None:
    """
    Test that Morphism.create rejects maps that break the structure or leave the target
    """
    assert Morphism.create(z4, z2, [0, 1, 0, 1]).map == (0, 1, 0, 1)
    with pytest.raises(InvalidMorphismError):
        Morphism.create(z4, z2, [0, 0, 1, 0])
    with pytest.raises(InvalidMorphismError):
        Morphism.create(z4, z2, [0, 1, 0, 2])
    with pytest.raises(InvalidMorphismError):
        Morphism.create(z4, z2, [0, 1])


def test_mapping_from_labels(z4, z2) -> None:
    """
    Test building morphisms from label maps, and rejecting maps with missing labels
    """
    f = morphisms.mapping_from_labels(z4, z2, {"0": "0", "1": "1", "2": "0", "3": "1"})
    assert f.as_labels() == {"0": "0", "1": "1", "2": "0", "3": "1"}
    with pytest.raises(InvalidMorphismError):
        morphisms.mapping_from_labels(z4, z2, {"0": "0"})


def test_classify_and_compose(mod2, z4) -> None:
    """
    Test mono/epi classification, composition, identities and inverses
    """
    kind = morphisms.classify_morphism(mod2)
    assert kind.epi and not kind.mono and not kind.iso

    ident = morphisms.identity(z4)
    assert morphisms.compose(ident, mod2) == mod2
    assert morphisms.classify_morphism(ident).iso
    assert morphisms.inverse(ident) == ident
    with pytest.raises(ValueError):
        morphisms.inverse(mod2)
    with pytest.raises(ValueError):
        morphisms.compose(mod2, ident)


def test_substructures(l2) -> None:
    """
    Test closure under the operations, generated substructures and rejecting non-closed subsets
    """
    assert morphisms.closure(l2, ()) == {0, 2}
    sub, inclusion = morphisms.subalgebra_generated(l2, ())
    assert sub.labels == ("0", "1")
    assert inclusion.map == (0, 2)
    with pytest.raises(ValueError):
        morphisms.substructure(l2, [0, 1])


def test_congruences(z4, l2) -> None:
    """
    Test generated congruences, quotients and the congruence lattice
    """
    theta = morphisms.congruence_generated(z4, [(0, 2)])
    assert theta.blocks == ((0, 2), (1, 3))
    q, projection = morphisms.quotient(z4, theta)
    assert q.labels == ("[0]", "[1]")
    assert projection.map == (0, 1, 0, 1)
    assert morphisms.is_isomorphic(q, cyclic_group(2, 0, 2))

    # Ł2 is simple: its only congruences are the identity and the total one
    lattice = morphisms.congruence_lattice(l2)
    assert lattice == (Congruence.identity(3), Congruence.total(3))
    assert morphisms.congruence_lattice(l2) is lattice
    assert morphisms.congruence_lattice.cache_info().maxsize == morphisms.CACHE_SIZE

    with pytest.raises(ValueError):
        morphisms.quotient(z4, Congruence.from_blocks([[0, 1], [2, 3]]))


def test_mv_ideal_congruences() -> None:
    """
    Test the congruence of an ideal of Ł1 × Ł1: the ideal generated by (0,1) identifies elements differing
    in the second coordinate only
    """
    l1 = lukasiewicz_chain(1)
    square = morphisms.product(l1, l1).obj
    assert isinstance(square, FiniteMVAlgebra)
    theta = morphisms.congruence_from_mv_ideal(square, [0, 1])
    assert theta.blocks == ((0, 1), (2, 3))
    assert morphisms.congruence_from_mv_ideal(square, [0]) == Congruence.identity(4)
    assert morphisms.congruence_from_mv_ideal(square, range(4)) == Congruence.total(4)


def test_congruence_operations() -> None:
    """
    Test meets, joins and refinement of partitions
    """
    a = Congruence.of_map((0, 0, 1, 1))
    b = Congruence.of_map((0, 1, 1, 2))
    assert a.blocks == ((0, 1), (2, 3))
    assert a.meet(b).blocks == ((0,), (1,), (2,), (3,))
    assert a.join(b) == Congruence.total(4)
    assert a.meet(b).refines(a)
    assert a.meet(b).is_identity()
    assert not a.is_identity()
    assert not a.refines(b)
    assert a.pairs() == [(0, 1), (2, 3)]


@pytest.mark.parametrize("modulus", [2, 3, 6])
def test_homs_into_cyclic_group_detect_divisibility(modulus: int) -> None:
    """
    Test over a coslice catalog that the only group homomorphism A -> Z_m is zero exactly when A is h-divisible for
    every divisor h of m. The basepoints are moved to zero so that the arrows are plain group homomorphisms
    """
    target = cyclic_group(modulus, 0, modulus)
    divisors = [h for h in range(1, modulus + 1) if modulus % h == 0]
    seen = set()
    for a in generate_catalog(Family.Coslice, 6, modulus=modulus).instances:
        assert isinstance(a, PointedFiniteAbelianGroup)
        group = dataclasses.replace(a, basepoint=0)
        trivial = len(morphisms.enumerate_homs(group, target)) == 1
        assert trivial == all(group.is_divisible(h) for h in divisors), a.describe()
        seen.add(trivial)
    assert seen == {True, False}


def test_products_and_pullbacks(z4, z2) -> None:
    """
    Test products, pullbacks, kernel pairs and images of pointed groups
    """
    f = Morphism.create(z4, z2, [0, 1, 0, 1])
    prod = morphisms.product(z4, z2)
    assert prod.obj.size == 8
    assert prod.obj.labels[:2] == ("(0,0)", "(0,1)")

    kp = morphisms.kernel_pair(f)
    assert kp.congruence.blocks == ((0, 2), (1, 3))
    assert kp.obj.size == 8
    assert morphisms.compose(kp.pi1, kp.diagonal) == morphisms.identity(z4)

    zero = Morphism.create(z4, z2, [0, 0, 0, 0])
    image = morphisms.image(zero)
    assert image.obj.size == 1
    assert morphisms.compose(image.mono, image.epi) == zero


def test_pushout_of_quotient(z4) -> None:
    """
    Test pushing the quotient Z4 -> Z4/⟨2⟩ out along the identity
    """
    q = morphisms.quotient(z4, Congruence.of_map((0, 1, 0, 1)))[1]
    projection, induced = morphisms.pushout_of_quotient(q, morphisms.identity(z4))
    assert projection.target.size == 2
    assert morphisms.classify_morphism(induced).iso


def test_msets_colimits(retraction) -> None:
    """
    Test coproducts and pushouts of M-sets, the limits of the opposite category
    """
    cp = morphisms.coproduct(retraction, retraction)
    assert cp.obj.size == 4
    assert cp.obj.labels == ("(0,x)", "(0,y)", "(1,x)", "(1,y)")

    point = retraction.terminal()
    to_point = Morphism.create(retraction, point, [0, 0])
    po = morphisms.pushout(to_point, to_point)
    assert po.obj.size == 1

    assert sub_msets(retraction) == [frozenset(), frozenset({1}), frozenset({0, 1})]


def test_opposite_category(retraction) -> None:
    """
    Test that the opposite category reads stored M-set maps backwards
    """
    cat = OppositeMSets()
    point = retraction.terminal()
    # The arrow point -> retraction of the opposite category is the M-set map retraction -> point
    arrows = cat.homs(point, retraction)
    assert [f.map for f in arrows] == [(0, 0)]
    f = arrows[0]
    assert cat.dom(f) == point and cat.cod(f) == retraction
    assert cat.is_mono(f) and not cat.is_epi(f)
    assert cat.terminal_arrow(retraction).source.size == 0
    assert len(cat.regular_quotients(retraction)) == 3

    variety = Variety()
    assert variety.is_epi(f) and not variety.is_mono(f)
