"""Simple undirected graphs: construction, graph6 codec, enumeration, isomorphism.

Vertices are 0..n-1. Graphs are immutable; adjacency is kept both as a sorted
edge tuple and as per-vertex neighbor bitmasks.
"""

from __future__ import annotations

from typing import Iterable, Iterator

CANONICAL_CAP = 10  # brute-force canonical labeling bound
ENUMERATION_CAP = 8  # exhaustive enumeration bound


class GraphParseError(ValueError):
    """Malformed graph6 or edge-list input; the message names the offending position."""


class Graph:
    """Immutable simple graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "_rows")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise ValueError("vertex count must be positive")
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        self.n = n
        self.edges = tuple(sorted(seen))
        rows = [0] * n
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self._rows = tuple(rows)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        row = self._rows[v]
        return tuple(u for u in range(self.n) if row >> u & 1)

    def degree(self, v: int) -> int:
        return bin(self._rows[v]).count("1")

    def adjacency_rows(self) -> list[list[int]]:
        """Dense 0/1 adjacency matrix as row lists."""
        return [[self._rows[i] >> j & 1 for j in range(self.n)] for i in range(self.n)]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def degree_vector(g: Graph) -> tuple[int, ...]:
    return tuple(bin(r).count("1") for r in g._rows)


def complement(g: Graph) -> Graph:
    n = g.n
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if not g.has_edge(i, j)]
    return Graph(n, edges)


def relabel(g: Graph, perm: Iterable[int]) -> Graph:
    """Image of g under the vertex map old -> perm[old]."""
    p = list(perm)
    if sorted(p) != list(range(g.n)):
        raise ValueError("perm is not a permutation of the vertex set")
    return Graph(g.n, [(p[u], p[v]) for u, v in g.edges])


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    full = (1 << g.n) - 1
    while frontier:
        nxt = 0
        v = 0
        f = frontier
        while f:
            if f & 1:
                nxt |= g._rows[v]
            f >>= 1
            v += 1
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


# ---------------------------------------------------------------------------
# graph6 codec
# ---------------------------------------------------------------------------
# Order header: n <= 62 is one byte n+63; 63 <= n <= 258047 is '~' plus three
# bytes of 6-bit big-endian groups; beyond that '~~' plus six such bytes.
# Edge bits follow: the strict upper triangle read column by column
# (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed six bits per byte, MSB first,
# zero-padded to a byte boundary. Every byte is offset by 63.


def _decode_order(data: bytes) -> tuple[int, int]:
    """Return (n, offset of first edge byte)."""
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphParseError(
                f"extended order header truncated at byte offset {len(data)}"
            )
        n = 0
        for k in range(2, 8):
            n = n << 6 | (data[k] - 63)
        return n, 8
    if len(data) < 4:
        raise GraphParseError(
            f"extended order header truncated at byte offset {len(data)}"
        )
    n = 0
    for k in range(1, 4):
        n = n << 6 | (data[k] - 63)
    return n, 4


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line (an optional '>>graph6<<' prefix is accepted)."""
    if isinstance(text, str):
        data = text.strip().encode("ascii", errors="replace")
    else:
        data = bytes(text).strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data:
        raise GraphParseError("empty graph6 input")
    for off, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise GraphParseError(f"invalid graph6 byte {byte!r} at byte offset {off}")
    n, off = _decode_order(data)
    if n < 1:
        raise GraphParseError("vertex count must be positive")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    have = len(data) - off
    if have != nbytes:
        raise GraphParseError(
            f"expected {nbytes} edge bytes for order {n}, got {have}"
            f" (edge data starts at byte offset {off})"
        )
    edges = []
    idx = 0
    bit_src = data[off:]
    bits = []
    for byte in bit_src:
        group = byte - 63
        for shift in (5, 4, 3, 2, 1, 0):
            bits.append(group >> shift & 1)
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    for t in range(nbits, len(bits)):
        if bits[t]:
            raise GraphParseError(
                f"nonzero padding bit at byte offset {off + t // 6}"
            )
    return Graph(n, edges)


def _encode_order(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("order too large for graph6")


def encode_graph6(g: Graph) -> str:
    out = bytearray(_encode_order(g.n))
    group = 0
    filled = 0
    for j in range(1, g.n):
        for i in range(j):
            group = group << 1 | (g._rows[i] >> j & 1)
            filled += 1
            if filled == 6:
                out.append(group + 63)
                group = 0
                filled = 0
    if filled:
        out.append((group << (6 - filled)) + 63)
    return out.decode("ascii")


# ---------------------------------------------------------------------------
# edge-list format: first token is n, remaining token pairs are edges
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    tokens = text.split()
    if not tokens:
        raise GraphParseError("empty edge-list input")
    try:
        n = int(tokens[0])
    except ValueError:
        raise GraphParseError(f"vertex count {tokens[0]!r} is not an integer") from None
    if n < 1:
        raise GraphParseError("vertex count must be positive")
    rest = tokens[1:]
    if len(rest) % 2:
        raise GraphParseError("odd token count: edge lines must be 'u v' pairs")
    edges = []
    for k in range(0, len(rest), 2):
        try:
            u, v = int(rest[k]), int(rest[k + 1])
        except ValueError:
            raise GraphParseError(
                f"edge tokens {rest[k]!r} {rest[k + 1]!r} are not integers"
            ) from None
        if u == v:
            raise GraphParseError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"edge ({u}, {v}) out of range for {n} vertices")
        edges.append((u, v))
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise GraphParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# canonical labeling, isomorphism, enumeration
# ---------------------------------------------------------------------------


def canonical_form(g: Graph) -> bytes:
    """Canonical graph6 bytes: minimal edge bit-string over degree-respecting relabelings.

    Positions are filled in ascending degree order, so only permutations mapping
    the degree profile onto itself compete; the lexicographic minimum over that
    family is constant on isomorphism classes. Output compares equal exactly for
    isomorphic graphs and parses back as a canonical representative.
    """
    n = g.n
    if n > CANONICAL_CAP:
        raise ValueError(f"canonical form supports at most {CANONICAL_CAP} vertices")
    rows = g._rows
    degs = degree_vector(g)
    profile = sorted(degs)
    cols = [0] * n
    placed = [0] * n
    best: list[int] | None = None

    def rec(k: int, used: int) -> None:
        nonlocal best
        if k == n:
            if best is None or cols < best:
                best = cols[:]
            return
        cands = []
        want = profile[k]
        for v in range(n):
            if used >> v & 1 or degs[v] != want:
                continue
            c = 0
            rv = rows[v]
            for i in range(k):
                c = c << 1 | (rv >> placed[i] & 1)
            cands.append((c, v))
        cands.sort()
        for c, v in cands:
            cols[k] = c
            if best is not None and cols[: k + 1] > best[: k + 1]:
                break
            placed[k] = v
            rec(k + 1, used | 1 << v)

    rec(0, 0)
    assert best is not None
    edges = []
    for k in range(1, n):
        c = best[k]
        for i in range(k):
            if c >> (k - 1 - i) & 1:
                edges.append((i, k))
    return encode_graph6(Graph(n, edges)).encode("ascii")


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    if sorted(degree_vector(g)) != sorted(degree_vector(h)):
        return False
    return canonical_form(g) == canonical_form(h)


_enum_cache: dict[int, tuple[bytes, ...]] = {}


def _representatives(n: int) -> tuple[bytes, ...]:
    if n not in _enum_cache:
        if n == 1:
            _enum_cache[1] = (canonical_form(Graph(1)),)
        else:
            found: set[bytes] = set()
            for form in _representatives(n - 1):
                g = parse_graph6(form)
                for mask in range(1 << (n - 1)):
                    extra = [(i, n - 1) for i in range(n - 1) if mask >> i & 1]
                    found.add(canonical_form(Graph(n, g.edges + tuple(extra))))
            _enum_cache[n] = tuple(sorted(found))
    return _enum_cache[n]


def enumerate_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """Yield one representative per isomorphism class on n vertices, in canonical order."""
    if not 1 <= n <= ENUMERATION_CAP:
        raise ValueError(f"enumeration supports 1..{ENUMERATION_CAP} vertices")
    for form in _representatives(n):
        g = parse_graph6(form)
        if connected_only and not is_connected(g):
            continue
        yield g
