import pytest

from tsurf.triangulation import IdealTriangulation, builtin, builtin_names

# one-tetrahedron gluings: every face glued to another face of the same tetrahedron
ONE_TET_SPHERE_LINK = [[[0, [1, 0, 2, 3]], [0, [1, 0, 2, 3]], [0, [0, 1, 3, 2]], [0, [0, 1, 3, 2]]]]
ONE_TET_NO_VERTICES = [[[0, [1, 2, 3, 0]], [0, [3, 0, 1, 2]], [0, [2, 0, 3, 1]], [0, [1, 3, 0, 2]]]]

ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def census():
    return {name: builtin(name) for name in builtin_names()}


@pytest.fixture(scope="session")
def fig8():
    return builtin("m004")


@pytest.fixture
def one_tet():
    return IdealTriangulation.from_data(ONE_TET_SPHERE_LINK)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
