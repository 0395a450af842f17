from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from tregular.algebra import Algebra, builtin
from tregular.subspace import HypercomplexBasis, make_fan

settings.register_profile("tregular", deadline=None, max_examples=40)
settings.load_profile("tregular")

small_fractions = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def elements(alg: Algebra):
    return st.lists(small_fractions, min_size=alg.dim, max_size=alg.dim).map(alg.element)


@pytest.fixture(scope="session")
def H() -> Algebra:
    return builtin("quaternion")


@pytest.fixture(scope="session")
def O() -> Algebra:
    return builtin("octonion")


@pytest.fixture(scope="session")
def quat_basis(H) -> HypercomplexBasis:
    return HypercomplexBasis.standard(H)


@pytest.fixture(scope="session")
def cl3_basis() -> HypercomplexBasis:
    return HypercomplexBasis.paravectors(builtin("cl03"))


@pytest.fixture(scope="session")
def fan13(quat_basis):
    return make_fan(quat_basis, "1,3")


@pytest.fixture(scope="session")
def fan03(quat_basis):
    return make_fan(quat_basis, "0,3")


@pytest.fixture(scope="session")
def fan024():
    return make_fan(HypercomplexBasis.paravectors(builtin("cl04")), "0,2,4")


F = Fraction
