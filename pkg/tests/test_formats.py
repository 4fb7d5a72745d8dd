import io
import sys

import pytest

from lrcm import constants
from lrcm.errors import InputError, ParseError
from lrcm.formats import InputSpec, parse_edge_list, parse_matrix_market


def test_parse_edge_list(two_pairs):
    g = parse_edge_list("# two components\n4 2\n1 3\n2 4\n")
    assert g == two_pairs
    assert parse_edge_list("3 1\n0 2\n", index_base=0).edges() == [(1, 3)]
    assert parse_edge_list(["3 0"]).n == 3
    single = parse_edge_list("1 0")
    assert single.n == 1 and single.m == 0


def test_parse_edge_list_inline_comments_and_blank_lines():
    g = parse_edge_list("\n3 2  # header\n\n1 2 # first\n2 3\n")
    assert g.edges() == [(1, 2), (2, 3)]


def test_parse_edge_list_errors():
    with pytest.raises(ParseError, match="self-loop at line 2"):
        parse_edge_list("3 1\n1 1")
    with pytest.raises(ParseError, match=r"duplicate edge \(1, 2\) at line 3"):
        parse_edge_list("3 2\n1 2\n2 1\n")
    with pytest.raises(ParseError, match="header declares 3 edges, found 2"):
        parse_edge_list("4 3\n1 2\n2 3\n")
    with pytest.raises(ParseError, match="more edges"):
        parse_edge_list("4 1\n1 2\n2 3\n")
    with pytest.raises(ParseError, match="outside 1..4 at line 2"):
        parse_edge_list("4 1\n1 5\n")
    with pytest.raises(ParseError, match="expected edge"):
        parse_edge_list("4 1\n1 2 3\n")
    with pytest.raises(ParseError, match="expected header"):
        parse_edge_list("4\n")
    with pytest.raises(ParseError, match="missing header"):
        parse_edge_list("# nothing\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_edge_list("4 1\n1 x\n")


def test_parse_error_is_input_error():
    with pytest.raises(InputError):
        parse_edge_list("2 1\n1 1\n")


def test_parse_edge_list_sanitize():
    g = parse_edge_list("3 4\n1 2\n2 1\n3 3\n2 3\n", sanitize=True)
    assert g.edges() == [(1, 2), (2, 3)]


def test_parse_matrix_market(two_pairs, data_dir):
    assert parse_matrix_market(data_dir.joinpath('two_pairs.mtx').read_text()) == two_pairs


def test_parse_matrix_market_general_and_values():
    text = ("%%MatrixMarket matrix coordinate real general\n"
            "3 3 5\n"
            "1 1 2.0\n"
            "1 2 -1.0\n"
            "2 1 -1.0\n"
            "2 3 -1.0\n"
            "3 2 -1.0\n")
    assert parse_matrix_market(text).edges() == [(1, 2), (2, 3)]


def test_parse_matrix_market_ignores_diagonal():
    g = parse_matrix_market("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 4\n2 2 1\n")
    assert g.n == 2 and g.m == 0


def test_parse_matrix_market_errors():
    with pytest.raises(ParseError, match="unsupported format 'array'"):
        parse_matrix_market("%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n1\n")
    with pytest.raises(ParseError, match="not square: 2 x 3 at line 2"):
        parse_matrix_market("%%MatrixMarket matrix coordinate pattern symmetric\n2 3 0\n")
    with pytest.raises(ParseError, match=r"structurally symmetric: \(1, 2\)"):
        parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 2\n")
    with pytest.raises(ParseError, match="declares 2 entries, found 1"):
        parse_matrix_market("%%MatrixMarket matrix coordinate pattern symmetric\n2 2 2\n2 1\n")
    with pytest.raises(ParseError, match="not a Matrix Market header"):
        parse_matrix_market("2 2 0\n")
    with pytest.raises(ParseError, match="missing size line"):
        parse_matrix_market("%%MatrixMarket matrix coordinate pattern symmetric\n% empty\n")
    with pytest.raises(ParseError):
        parse_matrix_market("%%MatrixMarket matrix coordinate complex symmetric\n2 2 0\n")


def test_parse_matrix_market_bad_entries():
    with pytest.raises(ParseError, match="bad Matrix Market entry"):
        parse_matrix_market("%%MatrixMarket matrix coordinate pattern symmetric\n2 2 1\n3 1\n")
    with pytest.raises(ParseError, match="bad Matrix Market entry"):
        parse_matrix_market("%%MatrixMarket matrix coordinate pattern symmetric\n2 2 1\n2 x\n")


def test_header_counts_are_not_allocated():
    with pytest.raises(ParseError, match="header declares 100000000000000 edges, found 1"):
        parse_edge_list("3 100000000000000\n1 2\n")
    with pytest.raises(ParseError, match="declares 100000000000000 entries, found 1"):
        parse_matrix_market("%%MatrixMarket matrix coordinate pattern symmetric\n"
                            "3 3 100000000000000\n2 1\n")


def test_input_spec_formats(data_dir, two_pairs):
    assert InputSpec('graph.mtx').resolved_format() == constants.MATRIX_MARKET
    assert InputSpec('graph.txt').resolved_format() == constants.EDGE_LIST
    assert InputSpec(str(data_dir.joinpath('two_pairs.mtx'))).load() == two_pairs
    assert InputSpec(str(data_dir.joinpath('two_pairs.txt'))).load() == two_pairs


def test_input_spec_stdin(monkeypatch, two_pairs):
    monkeypatch.setattr(sys, 'stdin', io.StringIO("4 2\n1 3\n2 4\n"))
    assert InputSpec('-').load() == two_pairs


def test_input_spec_missing_file(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        InputSpec(str(tmp_path.joinpath('missing.txt'))).load()


def test_input_spec_rejects_undecodable_bytes(tmp_path):
    path = tmp_path.joinpath('binary.txt')
    path.write_bytes(b"2 1\n1 \xff\xfe2\n")
    with pytest.raises(ParseError, match="not UTF-8 text: byte 0xff at offset 6"):
        InputSpec(str(path)).load()
