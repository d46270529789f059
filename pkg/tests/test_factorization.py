#!/usr/bin/env python
import pytest

from torsionlab import morphisms
from torsionlab.catalogs import generate_catalog
from torsionlab.errors import FamilyMismatchError
from torsionlab.factorization import (check_condition, check_orthogonality, factorize, generic_e, in_E, in_M,
                                      strict_terminal_counterexample, verify_factorization_system)
from torsionlab.morphisms import Morphism
from torsionlab.structures import heyting_chain
from torsionlab.torsion import theory_for
from torsionlab.types import ConditionTag, Family


def test_coslice_factorization(z4xz3, z2, z4) -> None:
    """
    Test factorizing (x, y) -> x mod 2 from (Z4 ⊕ Z3, (2,0)) onto (Z2, 0): the middle object is (Z4, 2)
    """
    theory = theory_for("coslice")
    f = Morphism.create(z4xz3, z2, [x % 2 for x in range(4) for _ in range(3)])
    result = factorize(theory, f, certify=True)
    assert result.middle.size == 4
    assert morphisms.is_isomorphic(result.middle, z4)
    assert result.m.map == (0, 1, 0, 1)
    assert morphisms.compose(result.m, result.e) == f
    assert in_E(theory, result.e)
    assert in_M(theory, result.m)
    assert result.generic_e is not None


def test_heyting_unit_factorization(chain3) -> None:
    """
    Test that the unit η of the 3-chain is its own E-part: e = η and m = id
    """
    theory = theory_for("heyting")
    eta = Morphism.create(chain3, heyting_chain(2), [0, 1, 1])
    result = factorize(theory, eta)
    assert result.e.map == (0, 1, 1)
    assert result.m.map == (0, 1)
    assert morphisms.classify_morphism(result.m).iso
    assert theory.category.same_quotient(generic_e(theory, eta), result.e)


def test_factorize_without_certification(mod2) -> None:
    """
    Test that the generic construction is skipped when certification is turned off
    """
    result = factorize(theory_for("coslice"), mod2, certify=False)
    assert result.generic_e is None
    assert morphisms.compose(result.m, result.e) == mod2


def test_factorize_wrong_family(mod2) -> None:
    """
    Test that a theory refuses to factorize arrows of another family
    """
    with pytest.raises(FamilyMismatchError):
        factorize(theory_for("mv"), mod2)


def test_orthogonality(z4xz3, z2) -> None:
    """
    Test that the square formed by the two parts of a factorization has the identity as its unique diagonal
    """
    theory = theory_for("coslice")
    f = Morphism.create(z4xz3, z2, [x % 2 for x in range(4) for _ in range(3)])
    result = factorize(theory, f)
    report = check_orthogonality(theory, result.e, result.m, [(result.e, result.m)])
    assert report.holds
    assert report.diagonals == [morphisms.identity(result.middle)]

    # The zero map breaks the square: m∘e = f is not zero
    zero = Morphism(result.middle, z2, (0, 0, 0, 0))
    with pytest.raises(ValueError):
        check_orthogonality(theory, result.e, result.m, [(result.e, zero)])


@pytest.mark.parametrize("name, family, bound", [
    ("mv", Family.MV, 4),
    ("heyting", Family.Heyting, 4),
    ("coslice", Family.Coslice, 4),
    ("mset", Family.MSet, 2),
])
def test_factorization_systems(name: str, family: Family, bound: int) -> None:
    """
    Test that every catalog arrow factors, and that E is stable under pullback along arrows inverted by Z
    """
    report = verify_factorization_system(theory_for(name), generate_catalog(family, bound))
    assert report.verdict, report.counterexample
    assert report.arrows > 0


def test_factorization_system_with_orthogonality() -> None:
    """
    Test orthogonality over every commuting square of the computed parts on a small coslice catalog
    """
    report = verify_factorization_system(theory_for("coslice"), generate_catalog(Family.Coslice, 3, modulus=2),
                                         orthogonality=True)
    assert report.verdict, report.counterexample
    assert report.squares > 0


@pytest.mark.parametrize("name, family, bound, tags", [
    ("mv", Family.MV, 4, [ConditionTag.N, ConditionTag.M, ConditionTag.S]),
    ("heyting", Family.Heyting, 4, [ConditionTag.S, ConditionTag.M, ConditionTag.N]),
    ("mset", Family.MSet, 2, [ConditionTag.S, ConditionTag.M, ConditionTag.N]),
    ("coslice", Family.Coslice, 4, [ConditionTag.M, ConditionTag.MPrime, ConditionTag.S, ConditionTag.N,
                                    ConditionTag.P]),
])
def test_conditions_hold(name: str, family: Family, bound: int, tags) -> None:
    """
    Test the conditions each theory is known to satisfy, on a small catalog
    """
    theory = theory_for(name)
    catalog = generate_catalog(family, bound)
    for tag in tags:
        report = check_condition(theory, tag, catalog)
        assert report.verdict, report.counterexample
        assert report.tag == tag
        assert report.to_dict()["condition"] == str(tag)


def test_conditions_fail_on_swapped_theory() -> None:
    """
    Test that every condition fails with the axiom counterexample when the classes of the MV theory are swapped
    """
    catalog = generate_catalog(Family.MV, 4)
    report = check_condition(theory_for("mv-swapped"), ConditionTag.N, catalog)
    assert not report.verdict
    assert report.tag == ConditionTag.N
    assert report.counterexample["object"] == "Ł1×Ł1"


def test_condition_on_wrong_catalog() -> None:
    """
    Test that checking a theory on a catalog of another family is refused
    """
    with pytest.raises(FamilyMismatchError):
        check_condition(theory_for("mv"), ConditionTag.N, generate_catalog(Family.Heyting, 3))


@pytest.mark.parametrize("name, family, bound, strict", [
    ("mv", Family.MV, 4, True),
    ("heyting", Family.Heyting, 4, True),
    ("mset", Family.MSet, 2, True),
    ("coslice", Family.Coslice, 4, False),
])
def test_strict_terminal_gives_condition_m(name: str, family: Family, bound: int, strict: bool) -> None:
    """
    Test that the terminal object is strict in the three categories whose zero class is {initial, terminal}, where
    Condition (M) then holds, and not in the coslice category where (Z2, 0) receives a non-invertible arrow
    """
    theory = theory_for(name)
    catalog = generate_catalog(family, bound)
    counterexample = strict_terminal_counterexample(theory, catalog)
    assert (counterexample is None) == strict
    if strict:
        assert check_condition(theory, ConditionTag.M, catalog).verdict
    else:
        assert counterexample["arrow"]["from"] == "terminal"
