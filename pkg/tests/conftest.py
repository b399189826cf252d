import pytest

from mzvassoc.at_pipeline import solve_cab
from mzvassoc.families import AssociatorFamilies
from mzvassoc.reduction import build_reduction_table


@pytest.fixture(scope="session")
def table8():
    # default construction includes the numeric verification pass
    return build_reduction_table(8)


@pytest.fixture(scope="session")
def table11():
    return build_reduction_table(11, verify=False)


@pytest.fixture(scope="session")
def fam(table8):
    return AssociatorFamilies(table8)


@pytest.fixture(scope="session")
def fam11(table11):
    return AssociatorFamilies(table11)


@pytest.fixture(scope="session")
def at_solutions(fam):
    return {n: solve_cab(n, fam) for n in (1, 2, 3)}
