import pytest

from dlscape import build, materialize_window, u_point_assigned


@pytest.fixture(scope="session")
def line_window():
    return materialize_window(build("line"), 0, 60)


@pytest.fixture(scope="session")
def halfline_window():
    return materialize_window(build("halfline"), 0, 60)


@pytest.fixture(scope="session")
def tree2_window():
    return materialize_window(build("tree", {"b": 2}), (), 14)


@pytest.fixture(scope="session")
def h_window():
    return materialize_window(build("h_graph"), (0, 0), 60)


@pytest.fixture(scope="session")
def h_field(h_window):
    fld, _ = u_point_assigned(h_window, range(6, 49, 6), 10)
    return fld


@pytest.fixture(scope="session")
def line_field(line_window):
    fld, _ = u_point_assigned(line_window, range(8, 49, 8), 10)
    return fld
