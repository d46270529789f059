#!/usr/bin/env python
import pytest

from torsionlab import morphisms
from torsionlab.catalogs import generate_catalog
from torsionlab.errors import FamilyMismatchError
from torsionlab.morphisms import Morphism
from torsionlab.structures import heyting_chain, lukasiewicz_chain
from torsionlab.types import Family
from torsionlab.zeroclass import DualMSetZeroClass, VarietyZeroClass, zero_class_for


def test_zero_class_members(l2, chain3, z4, retraction) -> None:
    """
    Test membership in Z for each family: the objects generated by their constants, or {1, ∅} for M-sets
    """
    mv = zero_class_for(Family.MV)
    assert mv.contains(lukasiewicz_chain(1))
    assert mv.contains(l2.terminal())
    assert not mv.contains(l2)

    heyting = zero_class_for(Family.Heyting)
    assert heyting.contains(heyting_chain(2))
    assert not heyting.contains(chain3)

    coslice = zero_class_for(Family.Coslice)
    assert [z.describe() for z in coslice.members(z4)] == ["(Z1,0)", "(Z2,1)"]
    assert all(coslice.contains(z) for z in coslice.members(z4))

    msets = zero_class_for(Family.MSet)
    assert isinstance(msets, DualMSetZeroClass)
    assert msets.contains(retraction.empty()) and msets.contains(retraction.terminal())
    assert not msets.contains(retraction)

    with pytest.raises(FamilyMismatchError):
        VarietyZeroClass(Family.MSet)


def test_zero_parts(l2, z4xz3) -> None:
    """
    Test that Z(A) is the substructure generated by the constants
    """
    zc = zero_class_for(Family.MV)
    part = zc.zero_part(l2)
    assert part.obj.labels == ("0", "1")
    assert part.inclusion.map == (0, 2)

    part = zero_class_for(Family.Coslice).zero_part(z4xz3)
    assert set(part.obj.labels) == {"(0,0)", "(2,0)"}


@pytest.mark.parametrize("family, size", [(Family.MV, 4), (Family.Heyting, 4)])
def test_triviality_matches_search(family: Family, size: int) -> None:
    """
    Test that the closed form of triviality agrees with searching for a factorization through a member of Z
    """
    zc = zero_class_for(family)
    catalog = generate_catalog(family, size)
    for a in catalog:
        for b in catalog.like(a):
            for f in morphisms.enumerate_homs(a, b):
                assert zc.is_trivial(f) == zc.is_trivial_by_search(f)


def test_coslice_zker(mod2) -> None:
    """
    Test the Z-kernel of the projection (Z4 ⊕ Z3, (2,0)) -> (Z4, 2): the preimage of ⟨2⟩ = {0, 2}
    """
    zc = zero_class_for(Family.Coslice)
    witness = zc.zker(mod2)
    assert witness.kernel.source.size == 6
    assert zc.is_trivial(morphisms.compose(mod2, witness.kernel))
    assert zc.is_inverted(mod2)
    assert zc.category.is_iso(zc.zero_part_map(mod2))

    test_objects = generate_catalog(Family.Coslice, 4, modulus=2)
    assert zc.is_zkernel(witness.kernel, mod2, test_objects)
    assert not zc.is_zkernel(morphisms.identity(mod2.source), mod2, test_objects)


def test_coslice_zcoker(mod2) -> None:
    """
    Test the Z-cokernel of the projection: the only arrow from the domain into Z goes to the trivial group, so the
    cokernel collapses the codomain
    """
    zc = zero_class_for(Family.Coslice)
    witness = zc.zcoker(mod2)
    assert witness is not None
    assert witness.max_quotient.target.size == 1
    assert witness.cokernel.target.size == 1
    test_objects = generate_catalog(Family.Coslice, 4, modulus=2)
    assert zc.is_zcokernel(witness.cokernel, mod2, test_objects)


def test_max_quotient_in_z(l2) -> None:
    """
    Test that Ł2 has the terminal algebra as maximum quotient in Z, while Ł1 × Ł1 has none: its two projections onto
    Ł1 do not factor through a common quotient in Z
    """
    zc = zero_class_for(Family.MV)
    x = zc.max_quotient_in_z(l2)
    assert x is not None and x.target.size == 1

    l1 = lukasiewicz_chain(1)
    square = morphisms.product(l1, l1).obj
    assert zc.max_quotient_in_z(square) is None
    assert zc.zcoker(morphisms.identity(square)) is None


def test_dual_mset_zero_class(retraction) -> None:
    """
    Test triviality in the opposite category of M-sets, where arrows are stored as M-set maps read backwards
    """
    zc = DualMSetZeroClass()
    # The action of e is an M-set map onto the fixed point y, so it factors through the terminal M-set
    collapse = Morphism.create(retraction, retraction, [1, 1])
    assert zc.is_trivial(collapse)
    assert not zc.is_trivial(morphisms.identity(retraction))
    assert zc.is_trivial(zc.terminal_map(retraction))

    part = zc.zero_part(retraction)
    assert part.obj.size == 1
    assert part.inclusion.map == (0, 0)

    witness = zc.zker(collapse)
    assert zc.is_trivial(zc.category.compose(collapse, witness.kernel))
