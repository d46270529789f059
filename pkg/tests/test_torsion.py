#!/usr/bin/env python
import pytest

from torsionlab import morphisms
from torsionlab.catalogs import generate_catalog
from torsionlab.errors import FamilyMismatchError, NoDecompositionError
from torsionlab.factorization import check_axioms, check_condition
from torsionlab.structures import boolean_algebra, cyclic_group, lukasiewicz_chain
from torsionlab.torsion import (THEORY_NAMES, coslice_divisible_part, coslice_divisible_part_by_chains,
                                heyting_regulars, mset_fix, mv_radical, theory_for, theory_from_reflection)
from torsionlab.types import ConditionTag, Family


def test_theory_names() -> None:
    """
    Test that every advertised theory can be constructed, and unknown names are rejected
    """
    for name in THEORY_NAMES:
        assert theory_for(name).name == name
    assert theory_for("coslice", modulus=3).modulus == 3
    with pytest.raises(ValueError):
        theory_for("groups")


def test_finite_mv_algebras_are_semisimple() -> None:
    """
    Test that the radical of every catalog MV-algebra is {0}
    """
    for a in generate_catalog(Family.MV):
        assert mv_radical(a) == frozenset({0})


def test_mv_decomposition(l2) -> None:
    """
    Test the sequence P(Ł2) -> Ł2 -> S(Ł2): the perfect part is the two element algebra, the reflection is Ł2 itself
    """
    sequence = theory_for("mv").decompose(l2)
    assert sequence.torsion.size == 2
    assert sequence.torsion_free.size == 3
    assert morphisms.classify_morphism(sequence.eta).iso


def test_heyting_decomposition(chain3) -> None:
    """
    Test that the 3-chain is pseudo-deterministic and reflects onto the Boolean algebra {0, 1} with η(a) = 1
    """
    theory = theory_for("heyting")
    assert theory.is_torsion(chain3)
    assert not theory.is_torsion_free(chain3)
    assert theory.is_torsion_free(boolean_algebra(2))

    sequence = theory.decompose(chain3)
    assert sequence.torsion.size == 3
    assert sequence.torsion_free.labels == ("0", "1")
    assert sequence.eta.map == (0, 1, 1)
    assert heyting_regulars(chain3).unit == sequence.eta


def test_mset_decomposition(retraction) -> None:
    """
    Test that the retraction has the single fixed point y, which is its torsion-free part
    """
    assert mset_fix(retraction) == frozenset({1})
    sequence = theory_for("mset").decompose(retraction)
    assert sequence.torsion.size == 2
    assert sequence.torsion_free.labels == ("y",)


def test_coslice_decomposition(z4xz3) -> None:
    """
    Test the sequence of (Z4 ⊕ Z3, (2,0)) in Z_2/Ab: D_2 is the Z3 part, the torsion part has order 6 and the
    reflection order 4
    """
    assert len(coslice_divisible_part(z4xz3)) == 3
    theory = theory_for("coslice")
    sequence = theory.decompose(z4xz3)
    assert sequence.torsion.size == 6
    assert sequence.torsion_free.size == 4
    assert theory.is_torsion_free(sequence.torsion_free)

    searched = theory.search_decomposition(z4xz3)
    assert searched is not None
    assert searched.torsion.size == 6
    assert searched.torsion_free.size == 4


@pytest.mark.parametrize("modulus", [2, 3, 4])
def test_divisible_part_methods_agree(modulus: int) -> None:
    """
    Test that the stabilized multiples m^k·A and the points on cycles of y -> m·y give the same divisible part
    """
    for a in generate_catalog(Family.Coslice, 8, modulus=modulus):
        assert coslice_divisible_part(a) == coslice_divisible_part_by_chains(a)


def test_functorial_action(mod2) -> None:
    """
    Test that T(f) and F(f) are uniquely determined, and that the closed forms agree with the filtered arrows
    """
    theory = theory_for("coslice")
    t_f, f_f = theory.functorial_action(mod2)
    assert t_f == theory.coreflect_arrow(mod2)
    assert f_f == theory.reflect_arrow(mod2)
    assert morphisms.classify_morphism(f_f).iso


def test_family_mismatch(chain3) -> None:
    """
    Test that theories refuse objects of other families or moduli
    """
    with pytest.raises(FamilyMismatchError):
        theory_for("mv").decompose(chain3)
    with pytest.raises(FamilyMismatchError):
        theory_for("coslice", modulus=2).decompose(cyclic_group(3, 0, 3))


def test_swapped_mv_has_no_decomposition() -> None:
    """
    Test that swapping the two classes of the MV theory leaves Ł1 × Ł1 without a short Z-exact sequence
    """
    l1 = lukasiewicz_chain(1)
    square = morphisms.product(l1, l1, name="Ł1×Ł1").obj
    swapped = theory_for("mv-swapped")
    assert swapped.find_decomposition(square) is None
    with pytest.raises(NoDecompositionError):
        swapped.decompose(square)


def test_axioms() -> None:
    """
    Test the torsion theory axioms on a small MV catalog, for the real theory and the swapped one
    """
    catalog = generate_catalog(Family.MV, 4)
    report = check_axioms(theory_for("mv"), catalog)
    assert report.verdict
    assert report.checked == len(catalog)

    report = check_axioms(theory_for("mv-swapped"), catalog)
    assert not report.verdict
    assert report.counterexample == {"property": "decomposition", "object": "Ł1×Ł1"}


@pytest.mark.parametrize("name,bound", [("mv", 4), ("heyting", 4), ("mset", 2), ("coslice", 6)])
def test_theory_from_reflection(name: str, bound: int) -> None:
    """
    Test that rebuilding each theory from its reflection alone gives back the same torsion and torsion-free objects,
    with the Z-kernel of the unit as torsion part, and the same verdict on Condition (M')
    """
    theory = theory_for(name)
    rebuilt = theory_from_reflection(theory)
    assert rebuilt.name == "{}-reflected".format(name)
    assert rebuilt.family == theory.family
    cat = theory.category
    catalog = generate_catalog(theory.family, bound, modulus=2 if name == "coslice" else None)
    for a in catalog:
        assert rebuilt.reflection_failure(a) is None, a.describe()
        assert rebuilt.is_torsion(a) == theory.is_torsion(a), a.describe()
        assert rebuilt.is_torsion_free(a) == theory.is_torsion_free(a), a.describe()
        assert cat.same_subobject(rebuilt.torsion_part(a)[1], theory.torsion_part(a)[1]), a.describe()
        assert rebuilt.decompose(a).torsion.size == theory.decompose(a).torsion.size
    expected = check_condition(theory, ConditionTag.MPrime, catalog)
    assert check_condition(rebuilt, ConditionTag.MPrime, catalog).verdict == expected.verdict


def test_reflection_of_swapped_theory() -> None:
    """
    Test that the reflection of the swapped MV theory cannot be checked on Ł1 × Ł1, where it has no decomposition
    """
    swapped = theory_from_reflection(theory_for("mv-swapped"))
    square = morphisms.product(lukasiewicz_chain(1), lukasiewicz_chain(1), name="Ł1×Ł1").obj
    with pytest.raises(NoDecompositionError):
        swapped.reflection_failure(square)
