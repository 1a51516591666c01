import pytest

from hrgen import cnf, counting, fixtures, oracle


@pytest.fixture(scope="session")
def fig2():
    return fixtures.build_fig2_grammar()


@pytest.fixture(scope="session")
def fig3():
    return fixtures.build_fig3_grammar()


@pytest.fixture(scope="session")
def fig4():
    return fixtures.build_fig4_grammar()


@pytest.fixture(scope="session")
def fig6():
    return fixtures.build_fig6_grammar()


@pytest.fixture(scope="session")
def anbncn():
    return fixtures.build_anbncn_grammar()


@pytest.fixture(scope="session")
def fig2_cnf(fig2):
    return cnf.to_cnf(fig2)


@pytest.fixture(scope="session")
def fig3_cnf(fig3):
    return cnf.to_cnf(fig3)


@pytest.fixture(scope="session")
def fig6_cnf(fig6):
    return cnf.to_cnf(fig6)


@pytest.fixture(scope="session")
def anbncn_cnf(anbncn):
    return cnf.to_cnf(anbncn)


@pytest.fixture(scope="session")
def fig4_tables(fig4):
    return counting.pre(fig4, 12)


@pytest.fixture(scope="session")
def fig4_enumerator(fig4):
    return oracle.TreeEnumerator(fig4, cap=14)
