#!/usr/bin/env python
from pathlib import Path
from typing import Callable

import pytest

from torsionlab import serialization
from torsionlab.config import TorsionLabConfig
from torsionlab.morphisms import Morphism
from torsionlab.structures import (FiniteHeytingAlgebra, FiniteMSetStructure, FiniteMVAlgebra, FiniteStructure,
                                   PointedFiniteAbelianGroup, abelian_group, cyclic_group, heyting_chain,
                                   idempotent_monoid, lukasiewicz_chain, mset)


@pytest.fixture(autouse=True)
def restore_config():
    """
    Restore the global config after every test, so that tests changing it do not leak into each other
    """
    config = TorsionLabConfig.get()
    saved = (config.catalog_bound, config.modulus, config.jobs, config.progress_type, config.certify)
    yield config
    config.catalog_bound, config.modulus, config.jobs, config.progress_type, config.certify = saved


@pytest.fixture
def l2() -> FiniteMVAlgebra:
    return lukasiewicz_chain(2)


@pytest.fixture
def chain3() -> FiniteHeytingAlgebra:
    return heyting_chain(3)


@pytest.fixture
def z4xz3() -> PointedFiniteAbelianGroup:
    """
    The pointed group (Z4 ⊕ Z3, (2,0)) in Z_2/Ab
    """
    return abelian_group((4, 3), (2, 0), 2)


@pytest.fixture
def z4() -> PointedFiniteAbelianGroup:
    return cyclic_group(4, 2, 2)


@pytest.fixture
def z2() -> PointedFiniteAbelianGroup:
    return cyclic_group(2, 0, 2)


@pytest.fixture
def retraction() -> FiniteMSetStructure:
    """
    The M-set {x, y} over {1, e} where e sends both points to y, so y is the only fixed point
    """
    return mset(idempotent_monoid(), ["x", "y"], {"e": {"x": "y"}}, name="retraction")


@pytest.fixture
def mod2(z4xz3: PointedFiniteAbelianGroup, z4: PointedFiniteAbelianGroup) -> Morphism:
    """
    The projection (x, y) -> x from (Z4 ⊕ Z3, (2,0)) onto (Z4, 2)
    """
    return Morphism.create(z4xz3, z4, [x for x in range(4) for _ in range(3)])


@pytest.fixture
def write_structure(tmpdir) -> Callable[[FiniteStructure, str], Path]:
    """
    :return: A function writing a structure file into the test's temporary directory
    """

    def _write(structure: FiniteStructure, file_name: str) -> Path:
        path = Path(tmpdir) / file_name
        serialization.save_structure(structure, path)
        return path

    return _write
