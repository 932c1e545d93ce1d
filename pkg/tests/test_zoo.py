"""Generator catalog: structure, labels, parameters, and oracles."""

import pytest
from fractions import Fraction

from dlscape import (DomainError, GeneratorParamError,
                     UnknownGeneratorError, build, build_from_dict, catalog,
                     dist_field, materialize_window, oracle)

ALL = [("line", {}, 25), ("halfline", {}, 25), ("tree", {"b": 1}, 25),
       ("tree", {"b": 2}, 10), ("tree", {"b": 3}, 7), ("grid2d", {}, 9),
       ("h_graph", {}, 18), ("stick", {"m": 3, "h": 0}, 12),
       ("stick", {"m": 6, "h": 3}, 14), ("pendant_line", {}, 14),
       ("cylinder", {"m": 5}, 12)]


@pytest.mark.parametrize("name,params,radius", ALL)
def test_generator_structure(name, params, radius):
    space = build(name, params)
    w = materialize_window(space, space.default_base(), radius)
    for i, v in enumerate(w.vertices):
        assert space.contains(v)
        nbrs = space.neighbors(v)
        # symmetry of the neighbor relation and the declared degree bound
        assert len(nbrs) == len(set(nbrs)) <= space.degree_bound
        for u in nbrs:
            assert space.contains(u)
            assert v in space.neighbors(u)
        # label round trip
        assert space.parse_vertex(space.vertex_label(v)) == v


def test_build_errors():
    with pytest.raises(UnknownGeneratorError):
        build("moebius")
    with pytest.raises(GeneratorParamError):
        build("tree")
    with pytest.raises(GeneratorParamError):
        build("line", {"b": 2})
    with pytest.raises(GeneratorParamError):
        build("stick", {"m": 2, "h": 0})


def test_build_from_dict_scale():
    space = build_from_dict({"generator": "line",
                             "scale": {"num": 3, "den": 2}})
    assert space.scale == Fraction(3, 2)
    with pytest.raises(DomainError):
        build_from_dict({"params": {}})


def test_catalog_lists_all():
    cat = catalog()
    assert set(cat) == {"line", "halfline", "tree", "grid2d", "h_graph",
                        "stick", "pendant_line", "cylinder"}
    assert cat["tree"]["params"] and "point_assigned" in \
        cat["h_graph"]["oracles"]


def test_tree1_is_halfline():
    t = build("tree", {"b": 1})
    h = build("halfline")
    wt = materialize_window(t, (), 15)
    wh = materialize_window(h, 0, 15)
    assert [len(v) for v in wt.vertices] == list(wh.vertices)
    assert wt.dist_from_base == wh.dist_from_base


def test_h_graph_axis_distance(h_window):
    # reaching (0,k) needs the arm through (k,0) or (-k,0): 3k hops
    df = dist_field(h_window, [(0, 0)])
    for k in range(1, 16):
        assert df[h_window.index[(0, k)]] == 3 * k


def test_stick_apex_distance():
    space = build("stick", {"m": 5, "h": 2})
    w = materialize_window(space, ("apex",), 12)
    df = dist_field(w, [("apex",)])
    for v in w.vertices:
        assert df[w.index[v]] == space.dist_to_apex(v)


def test_oracle_unknown_quantity(h_window):
    with pytest.raises(DomainError):
        oracle(h_window.space, "nonsense")
    with pytest.raises(DomainError):
        oracle(build("grid2d"), "point_assigned", (0, 0), (1, 1))
