"""Readers for edge-list and Matrix Market graph files."""
import io
import logging
import sys
from dataclasses import dataclass
from functools import partial

import numpy as np
from scipy.io import mminfo, mmread

from lrcm import constants
from lrcm.core import INDEX_DTYPE, graph_from_edges
from lrcm.errors import InputError, ParseError

logger = logging.getLogger(__name__)

MM_FIELDS = ("real", "integer", "pattern")
MM_SYMMETRIES = ("symmetric", "general")


def _lines(text):
    return text.splitlines() if isinstance(text, str) else text


def _ints(tokens, line_no, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected {what}, got {' '.join(tokens)!r}", line_no) from None


def _first_duplicate(lo, hi, n):
    keys = lo * max(n, 1) + hi
    _, first = np.unique(keys, return_index=True)
    if len(first) == len(keys):
        return None
    seen = np.zeros(len(keys), dtype=bool)
    seen[first] = True
    return int(np.flatnonzero(~seen)[0])


def parse_edge_list(text, index_base=1, sanitize=False):
    """
    Parses::

        # comment
        n m
        u v
        ...

    with exactly m edge lines after the header. Labels are numbered from
    ``index_base``. With ``sanitize`` self-loops are dropped and duplicate edges
    merged, so the graph may have fewer than m edges.
    """
    if index_base not in (0, 1):
        raise InputError(f"index base must be 0 or 1, got {index_base}")
    n = m = None
    edges, lines = [], []
    for line_no, raw in enumerate(_lines(text), start=1):
        tokens = raw.split('#', 1)[0].split()
        if not tokens:
            continue
        if n is None:
            if len(tokens) != 2:
                raise ParseError("expected header 'n m'", line_no)
            n, m = _ints(tokens, line_no, "header 'n m'")
            if n < 0 or m < 0:
                raise ParseError(f"negative size in header 'n m': {n} {m}", line_no)
            continue
        if len(tokens) != 2:
            raise ParseError("expected edge 'u v'", line_no)
        u, v = _ints(tokens, line_no, "edge 'u v'")
        for label in (u, v):
            if not index_base <= label < n + index_base:
                raise ParseError(f"label {label} outside {index_base}..{n - 1 + index_base}", line_no)
        if len(edges) == m:
            raise ParseError(f"more edges than the {m} declared in the header", line_no)
        if u == v and not sanitize:
            raise ParseError("self-loop", line_no)
        edges.append((u, v))
        lines.append(line_no)

    if n is None:
        raise ParseError("missing header 'n m'")
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")

    pairs = np.array(edges, dtype=INDEX_DTYPE).reshape(-1, 2) - index_base
    lines = np.array(lines, dtype=INDEX_DTYPE)
    keep = pairs[:, 0] != pairs[:, 1]
    if not keep.all():
        logger.debug(f"dropping {int((~keep).sum())} self-loops")
        pairs, lines = pairs[keep], lines[keep]
    lo, hi = pairs.min(axis=1), pairs.max(axis=1)
    dup = _first_duplicate(lo, hi, n)
    if dup is not None and not sanitize:
        raise ParseError(f"duplicate edge ({lo[dup] + index_base}, {hi[dup] + index_base})",
                         int(lines[dup]))
    return graph_from_edges(n, pairs, sanitize=sanitize, index_base=0)


def _count_entry_lines(lines):
    """Line number of the size line and the number of non-comment lines after it."""
    size_line = None
    count = 0
    for line_no, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith('%'):
            continue
        if size_line is None:
            size_line = line_no
        else:
            count += 1
    return size_line, count


def parse_matrix_market(text):
    """
    Off-diagonal structure of a square Matrix Market coordinate matrix as a graph.
    Values and the diagonal are ignored. ``general`` matrices must be
    structurally symmetric.
    """
    if not isinstance(text, str):
        text = "\n".join(line.rstrip("\n") for line in text)
    size_line, count = _count_entry_lines(text.splitlines())
    if size_line is None:
        raise ParseError("missing size line 'rows cols nnz'")
    data = text.encode()
    try:
        rows, cols, nnz, fmt, field, symmetry = mminfo(io.BytesIO(data))
    except ValueError as e:
        raise ParseError(f"not a Matrix Market header: {e}") from e
    if fmt.lower() != "coordinate":
        raise ParseError(f"unsupported format {fmt!r}, only 'coordinate' is read", 1)
    if field not in MM_FIELDS:
        raise ParseError(f"unsupported field {field!r}", 1)
    if symmetry not in MM_SYMMETRIES:
        raise ParseError(f"unsupported symmetry {symmetry!r}", 1)
    if min(rows, cols, nnz) < 0:
        raise ParseError(f"negative value in size line: {rows} {cols} {nnz}", size_line)
    if rows != cols:
        raise ParseError(f"matrix is not square: {rows} x {cols}", size_line)
    if count != nnz:
        raise ParseError(f"size line declares {nnz} entries, found {count}")

    try:
        coo = mmread(io.BytesIO(data))
    except (ValueError, IndexError) as e:
        raise ParseError(f"bad Matrix Market entry: {e}") from e
    off = coo.row != coo.col
    entries = np.column_stack([coo.row[off], coo.col[off]]).astype(INDEX_DTYPE)
    if symmetry == "general":
        keys = entries[:, 0] * max(rows, 1) + entries[:, 1]
        mirrored = entries[:, 1] * max(rows, 1) + entries[:, 0]
        missing = np.flatnonzero(~np.isin(mirrored, keys))
        if len(missing):
            i, j = entries[missing[0]] + 1
            raise ParseError(f"general matrix is not structurally symmetric: ({i}, {j}) "
                             f"has no mirrored entry")
    return graph_from_edges(rows, entries, sanitize=True, index_base=0)


@dataclass(frozen=True)
class InputSpec:
    """Where a graph comes from: a path, or ``-`` for stdin."""

    path: str
    format: str = constants.AUTO
    index_base: int = 1
    sanitize: bool = False

    def resolved_format(self):
        if self.format != constants.AUTO:
            return self.format
        if str(self.path).lower().endswith(".mtx"):
            return constants.MATRIX_MARKET
        return constants.EDGE_LIST

    def load(self):
        fmt = self.resolved_format()
        if fmt == constants.MATRIX_MARKET:
            parse = parse_matrix_market
        elif fmt == constants.EDGE_LIST:
            parse = partial(parse_edge_list, index_base=self.index_base, sanitize=self.sanitize)
        else:
            raise InputError(f"unknown input format {fmt!r}")
        g = parse(self.read_text())
        logger.debug(f"loaded {g} from {self.path} as {fmt}")
        return g

    def read_text(self):
        try:
            if self.path == "-":
                return sys.stdin.read()
            with open(self.path, 'rb') as f:
                return f.read().decode('utf-8')
        except OSError as e:
            raise InputError(f"cannot read {self.path}: {e.strerror}") from e
        except UnicodeDecodeError as e:
            raise ParseError(f"{self.path} is not UTF-8 text: byte {e.object[e.start]:#04x} "
                             f"at offset {e.start}") from e
