import pytest

from clusterforms import zoo
from clusterforms.orean import as_orean


@pytest.fixture(scope="session")
def finset2():
    return zoo.finset_skeleton(2)


@pytest.fixture(scope="session")
def finset3():
    return zoo.finset_skeleton(3)


@pytest.fixture(scope="session")
def subsets3(finset3):
    return zoo.subsets_form(finset3)


@pytest.fixture(scope="session")
def equivrel3(finset3):
    return zoo.equivrel_form(finset3)


@pytest.fixture(scope="session")
def exaq3(finset3):
    return zoo.exaq_form(finset3)


@pytest.fixture(scope="session")
def palettes3(finset3):
    return zoo.palettes_form(finset3)


@pytest.fixture(scope="session")
def O_subsets(subsets3):
    return as_orean(subsets3)


@pytest.fixture(scope="session")
def O_equivrel(equivrel3):
    return as_orean(equivrel3)


@pytest.fixture(scope="session")
def O_exaq(exaq3):
    return as_orean(exaq3)


@pytest.fixture(scope="session")
def pointed3():
    return zoo.pointed_finset_skeleton(3)


@pytest.fixture(scope="session")
def groups4():
    return zoo.groups_category(4)


def obj(c, name):
    return c.object_index(name)


def mor(c, name):
    return c.names.index(name)
