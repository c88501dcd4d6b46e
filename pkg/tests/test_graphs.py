import pytest

from mret.errors import ParseError
from mret.graphs import (
    Digraph,
    Schedule,
    Temporalisation,
    format_digraph,
    format_schedule,
    format_temporal_graph,
    is_strongly_connected,
    parse_digraph,
    parse_schedule,
    parse_temporal_graph,
    parse_times,
)


def test_parse_two_cycle():
    g = parse_digraph("2 2\n0 1\n1 0")
    assert g.node_count == 2
    assert g.edges == ((0, 1), (1, 0))


def test_parse_path():
    g = parse_digraph("3 2\n0 1\n1 2")
    assert g.node_count == 3
    assert g.edges == ((0, 1), (1, 2))


def test_parse_endpoint_out_of_range():
    with pytest.raises(ParseError, match="out of range") as exc:
        parse_digraph("2 1\n0 2")
    assert exc.value.line == 2


def test_parse_malformed_header():
    with pytest.raises(ParseError, match="header"):
        parse_digraph("2\n0 1")


def test_parse_count_mismatch():
    with pytest.raises(ParseError, match="edge lines"):
        parse_digraph("3 3\n0 1\n1 2")


def test_parse_comments_and_blanks_ignored():
    g = parse_digraph("# a comment\n3 2\n\n0 1\n# mid\n1 2\n")
    assert g.edges == ((0, 1), (1, 2))


def test_parse_non_integer_field():
    with pytest.raises(ParseError, match="non-integer"):
        parse_digraph("2 1\n0 x")


def test_digraph_roundtrip_canonical():
    g = parse_digraph("3 3\n0 1\n1 2\n2 0")
    text = format_digraph(g)
    assert text == "3 3\n0 1\n1 2\n2 0\n"
    assert parse_digraph(text) == g


def test_digraph_permits_self_loops_and_parallel_edges():
    g = parse_digraph("2 3\n0 0\n0 1\n0 1")
    assert g.self_loops() == [0]
    assert g.edges[1] == g.edges[2]


def test_digraph_rejects_bad_endpoint_at_construction():
    with pytest.raises(ValueError, match="out of range"):
        Digraph(2, ((0, 5),))


def test_adjacency_indexes_match_edge_order():
    g = Digraph(3, ((0, 1), (0, 2), (1, 2)))
    assert g.out_adj[0] == ((1, 0), (2, 1))
    assert g.in_adj[2] == ((0, 1), (1, 2))


def test_temporal_graph_roundtrip():
    text = "3 2\n0 1 5\n1 2 5\n"
    g, t = parse_temporal_graph(text)
    assert t.times == (5, 5)
    assert format_temporal_graph(g, t) == text


def test_temporal_graph_rejects_zero_label():
    with pytest.raises(ParseError, match=">= 1"):
        parse_temporal_graph("2 1\n0 1 0")


def test_temporalisation_rejects_label_below_one():
    with pytest.raises(ValueError):
        Temporalisation((1, 0))


def test_schedule_must_be_permutation():
    with pytest.raises(ValueError, match="permutation"):
        Schedule((0, 0, 1))
    with pytest.raises(ValueError, match="permutation"):
        Schedule((1, 2))


def test_schedule_file_roundtrip():
    s = parse_schedule("2 0 1\n", 3)
    assert s.order == (2, 0, 1)
    assert format_schedule(s) == "2 0 1\n"


def test_schedule_file_wrong_length():
    with pytest.raises(ParseError, match="expected 3"):
        parse_schedule("0 1\n", 3)


def test_schedule_file_not_permutation():
    with pytest.raises(ParseError, match="permutation"):
        parse_schedule("0 0 1\n", 3)


def test_times_file():
    t = parse_times("3 1 2\n", 3)
    assert t.times == (3, 1, 2)
    with pytest.raises(ParseError):
        parse_times("3 1\n", 3)


def test_strongly_connected_examples():
    assert is_strongly_connected(parse_digraph("2 2\n0 1\n1 0"))
    assert not is_strongly_connected(parse_digraph("3 2\n0 1\n1 2"))
    assert is_strongly_connected(parse_digraph("1 0"))
    assert not is_strongly_connected(parse_digraph("2 0"))
    assert is_strongly_connected(parse_digraph("4 4\n0 1\n1 2\n2 3\n3 0"))
