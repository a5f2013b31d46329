import networkx as nx
import numpy as np
import pytest

from cagekit import formats
from cagekit.construct import build_gamma
from cagekit.dominating import remove_pds
from cagekit.graph import BipartiteGraph


@pytest.fixture(scope="module", params=["gamma3", "residual4"])
def graph(request):
    return build_gamma(3) if request.param == "gamma3" else remove_pds(4)


@pytest.mark.parametrize("fmt", formats.FORMATS)
def test_roundtrip(graph, fmt):
    data = formats.dumps(graph, fmt)
    back = formats.loads(data, fmt)
    assert np.array_equal(back.offsets, graph.offsets)
    assert np.array_equal(back.nbrs, graph.nbrs)
    assert np.array_equal(back.side, graph.side)
    assert formats.dumps(back, fmt) == data
    if fmt == "labeled-json":
        assert back.labels == graph.labels


def test_graph6_format_definition_example():
    # n=5, edges 0-2 0-4 1-3 3-4: bits 1010011001 -> "DQc"
    g = BipartiteGraph.from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)])
    assert formats.to_graph6(g) == b"DQc\n"
    assert formats.from_graph6(b">>graph6<<DQc").edges().tolist() == g.edges().tolist()


def test_graph6_long_order_header():
    g = build_gamma(3)  # 80 vertices: '~' + 18-bit order
    data = formats.to_graph6(g)
    assert data[:4] == bytes([126, 63 + 0, 63 + 1, 63 + 16])
    assert formats.to_graph6(BipartiteGraph.from_edges(62, []))[:1] == bytes([125])


def test_graph6_is_readable_by_networkx():
    g = build_gamma(3)
    G = nx.from_graph6_bytes(formats.to_graph6(g).strip())
    assert sorted(G.edges()) == [tuple(e) for e in g.edges().tolist()]


def test_dimacs_layout():
    text = formats.to_dimacs(build_gamma(2)).decode().splitlines()
    assert text[0] == "p edge 30 45"
    assert text[1].startswith("e 1 ")
    assert len(text) == 46


def test_edge_list_is_ascending_zero_based():
    lines = formats.to_edge_list(build_gamma(2)).decode().splitlines()
    pairs = [tuple(map(int, line.split())) for line in lines]
    assert pairs == sorted(pairs) and all(u < v for u, v in pairs)
    assert pairs[0][0] == 0


@pytest.mark.parametrize("fmt, data, line", [
    ("dimacs-edge", b"p edge 3 1\ne 1 x\n", 2),
    ("dimacs-edge", b"c hi\np edge 3 1\ne 1 4\n", 3),
    ("edge-list", b"0 1\n1\n", 2),
    ("graph6", b"D?", 1),
])
def test_parse_errors_carry_line(fmt, data, line):
    with pytest.raises(formats.GraphFormatError) as info:
        formats.loads(data, fmt)
    assert info.value.line == line


def test_parse_errors_without_line():
    with pytest.raises(formats.GraphFormatError):
        formats.loads(b"p edge 3 2\ne 1 2\n", "dimacs-edge")
    with pytest.raises(formats.GraphFormatError):
        formats.loads(b"{\"vertices\": [[0, \"rho\", 1, 5]], \"edges\": [], \"q\": 3}",
                      "labeled-json")


def test_labeled_json_spells_rho():
    data = formats.to_labeled_json(build_gamma(2)).decode()
    assert '"rho"' in data and "ρ" not in data


def test_guess_format():
    assert formats.guess_format("x.g6") == "graph6"
    assert formats.guess_format("x.json") == "labeled-json"
    with pytest.raises(formats.GraphFormatError):
        formats.guess_format("x.bin")
