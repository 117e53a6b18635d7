"""graph6 and edge-list reading and writing."""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .errors import (
    ByteOutOfRange,
    DuplicateEdge,
    GraphFormatError,
    Malformed,
    SelfLoop,
    TrailingGarbage,
    TruncatedInput,
    VertexOutOfRange,
)
from .graph import MAX_ORDER, Graph

HEADER = b">>graph6<<"
_MAX_G6_ORDER = (1 << 18) - 1


def _as_bytes(text: bytes | str) -> bytes:
    if isinstance(text, str):
        try:
            return text.encode("ascii")
        except UnicodeEncodeError as exc:
            raise ByteOutOfRange(f"non-ASCII character at offset {exc.start}") from None
    return bytes(text)


def parse_graph6(text: bytes | str) -> Graph:
    """Decode a single graph6 record.

    A leading ``>>graph6<<`` header and one trailing newline are accepted.
    """
    data = _as_bytes(text)
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    if data.endswith(b"\r\n"):
        data = data[:-2]
    elif data.endswith(b"\n"):
        data = data[:-1]
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise ByteOutOfRange(f"byte {b} at offset {pos} outside 63..126")
    if not data:
        raise TruncatedInput("empty graph6 record")

    if data[0] != 126:
        n, pos = data[0] - 63, 1
    else:
        if len(data) < 4:
            raise TruncatedInput("size field truncated")
        if data[1] == 126:
            raise GraphFormatError("graphs with n >= 2^18 are not supported")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    if n == 0:
        raise GraphFormatError("graph6 record encodes the empty graph")

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nbytes:
        raise TruncatedInput(f"expected {nbytes} body bytes, got {len(body)}")
    if len(body) > nbytes:
        raise TrailingGarbage(f"{len(body) - nbytes} unexpected bytes after body")

    edges = []
    k = 0
    i, j = 0, 1
    for byte in body:
        value = byte - 63
        for shift in range(5, -1, -1):
            if k >= nbits:
                break
            if value >> shift & 1:
                edges.append((i, j))
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, edges)


def encode_graph6(g: Graph) -> bytes:
    """graph6 bytes for ``g`` (no header, no newline)."""
    n = g.n
    if n > _MAX_G6_ORDER:
        raise ValueError(f"graph6 supports n <= {_MAX_G6_ORDER}")
    if n <= 62:
        out = bytearray([n + 63])
    else:
        out = bytearray([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    value = nfilled = 0
    for j in range(1, n):
        col = g.neighbor_mask(j)
        for i in range(j):
            value = (value << 1) | (col >> i & 1)
            nfilled += 1
            if nfilled == 6:
                out.append(value + 63)
                value = nfilled = 0
    if nfilled:
        out.append((value << (6 - nfilled)) + 63)
    return bytes(out)


def to_graph6(g: Graph) -> str:
    return encode_graph6(g).decode("ascii")


def iter_graph6(lines: Iterable[bytes | str]) -> Iterator[Graph]:
    """Decode a graph6 stream, one graph per non-blank line.

    Errors carry the 1-based line number.
    """
    for lineno, line in enumerate(lines, 1):
        raw = _as_bytes(line).strip()
        if not raw:
            continue
        try:
            yield parse_graph6(raw)
        except GraphFormatError as exc:
            raise exc.at_line(lineno) from None


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` on the first line followed by one ``u v`` pair per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    numbered = [(i, ln) for i, ln in enumerate(lines, 1) if ln]
    if not numbered:
        raise Malformed("missing vertex count")
    first_no, first = numbered[0]
    try:
        n = int(first)
    except ValueError:
        raise Malformed(f"vertex count {first!r} is not an integer", line=first_no) from None
    if n < 1:
        raise Malformed(f"vertex count must be positive, got {n}", line=first_no)
    if n > MAX_ORDER:
        raise Malformed(f"vertex count must be at most {MAX_ORDER}, got {n}", line=first_no)
    edges = []
    seen: set[tuple[int, int]] = set()
    for lineno, ln in numbered[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise Malformed(f"expected 'u v', got {ln!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise Malformed(f"non-integer vertex in {ln!r}", line=lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}", line=lineno)
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}", line=lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"duplicate edge ({u}, {v})", line=lineno)
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges()]) + "\n"


def iter_edge_lists(text: str) -> Iterator[Graph]:
    """Several edge-list graphs separated by blank lines."""
    block: list[str] = []
    start = 1
    for lineno, line in enumerate(text.splitlines() + [""], 1):
        if line.strip():
            if not block:
                start = lineno
            block.append(line)
        elif block:
            try:
                graph = parse_edge_list("\n".join(block))
            except GraphFormatError as exc:
                raise exc.at_line(start + (exc.line or 1) - 1) from None
            yield graph
            block = []
