import pytest

from homstab.groupoids import make_symmetric, make_wreath, \
    make_general_linear, FiniteRing
from homstab.groups import cyclic_group
from homstab.bracket import BracketCategory


@pytest.fixture(scope="session")
def sym_cat():
    return BracketCategory(make_symmetric())


@pytest.fixture(scope="session")
def wreath_cat():
    return BracketCategory(make_wreath(cyclic_group(2)))


@pytest.fixture(scope="session")
def gl2_cat():
    return BracketCategory(make_general_linear(FiniteRing(2), budget=25000))
