"""Immutable simple graphs, graph6 I/O, named families and graph compositions.

Vertices are the integers ``0..n-1``.  Composition operations use fixed
relabeling conventions so that every downstream trace is reproducible:

* ``cartesian_product(g, h)``: vertex ``(a, b)`` gets label ``a * h.n + b``.
* ``vertex_sum(g, u, h, u2)``: ``g`` keeps its labels and the merged vertex
  takes label ``u``; the remaining vertices ``w`` of ``h`` are appended in
  order, i.e. ``w -> g.n + w`` for ``w < u2`` and ``w -> g.n + w - 1`` for
  ``w > u2``.
* ``edge_sum(g, u, h, u2)``: ``h`` is shifted by ``g.n`` and the edge
  ``{u, g.n + u2}`` is added.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable

import numpy as np

GRAPH6_MAX_ORDER = 62
RNG_FAMILY = "numpy.random.PCG64"


class GraphError(ValueError):
    """Raised for malformed graphs, encodings or out-of-range arguments."""


class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("_n", "_adj", "_masks", "_m", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self._n = n
        self._adj = tuple(frozenset(s) for s in nbrs)
        self._masks = tuple(sum(1 << w for w in s) for s in nbrs)
        self._m = sum(len(s) for s in nbrs) // 2
        self._hash = None

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def adj(self) -> tuple[frozenset[int], ...]:
        return self._adj

    @property
    def masks(self) -> tuple[int, ...]:
        """Neighborhoods as bitmasks (bit ``w`` set iff ``w`` is a neighbor)."""
        return self._masks

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in sorted(self._adj[u]) if u < v]

    def arcs(self) -> list[tuple[int, int]]:
        """Both orientations of every edge, sorted lexicographically."""
        return [(u, v) for u in range(self._n) for v in sorted(self._adj[u])]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def remove_vertex(self, v: int) -> Graph:
        """``G - v`` with the remaining vertices relabeled in order."""
        if not 0 <= v < self._n:
            raise GraphError(f"vertex {v} out of range for n={self._n}")

        def lab(w):
            return w if w < v else w - 1

        return Graph(self._n - 1, [(lab(a), lab(b)) for a, b in self.edges() if v not in (a, b)])

    def is_connected(self) -> bool:
        if self._n == 0:
            return True
        return len(self._bfs(0)) == self._n

    def _bfs(self, s: int) -> dict[int, int]:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def diameter(self) -> int | None:
        """Largest eccentricity, or ``None`` for a disconnected graph."""
        best = 0
        for s in range(self._n):
            dist = self._bfs(s)
            if len(dist) < self._n:
                return None
            best = max(best, max(dist.values()))
        return best

    def is_tree(self) -> bool:
        return self._n >= 1 and self._m == self._n - 1 and self.is_connected()

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._masks))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self._n}, m={self._m}, g6={encode_graph6(self)!r})" if self._n <= GRAPH6_MAX_ORDER \
            else f"Graph(n={self._n}, m={self._m})"


# ---------------------------------------------------------------- graph6

def _upper_bits(g: Graph):
    for j in range(1, g.n):
        for i in range(j):
            yield 1 if g.has_edge(i, j) else 0


def encode_graph6(g: Graph) -> str:
    """Encode ``g`` as a short-form graph6 line (no trailing newline)."""
    if g.n > GRAPH6_MAX_ORDER:
        raise GraphError(f"graph6 short form supports n <= {GRAPH6_MAX_ORDER}, got {g.n}")
    bits = list(_upper_bits(g))
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode one short-form graph6 line."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise GraphError(f"graph6 string contains bytes outside 63..126: {text!r}")
    n = codes[0]
    if n == 63:
        raise GraphError("long-form graph6 (n > 62) is not supported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(codes) - 1 != need:
        raise GraphError(f"graph6 body has {len(codes) - 1} bytes, expected {need} for n={n}")
    bits = []
    for c in codes[1:]:
        bits.extend((c >> k) & 1 for k in range(5, -1, -1))
    if any(bits[nbits:]):
        raise GraphError("graph6 padding bits are not zero")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def read_graph6_file(path) -> list[Graph]:
    """Read one graph per non-blank line, skipping ``#`` comment lines."""
    graphs = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                graphs.append(parse_graph6(line))
    return graphs


def write_graph6_file(path, graphs: Iterable[Graph]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(encode_graph6(g) + "\n")


# ---------------------------------------------------------------- families

def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path requires n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle requires n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph requires n >= 1")
    return Graph(n, itertools.combinations(range(n), 2))


def star(n: int) -> Graph:
    """Center ``0`` adjacent to leaves ``1..n-1``."""
    if n < 1:
        raise GraphError("star requires n >= 1")
    return Graph(n, [(0, i) for i in range(1, n)])


def empty(n: int) -> Graph:
    return Graph(n)


def hypercube(d: int) -> Graph:
    """``Q_1 = P_2`` and ``Q_i = Q_{i-1} x Q_1`` under the product labeling."""
    if d < 1:
        raise GraphError("hypercube requires dimension d >= 1")
    q1 = path(2)
    g = q1
    for _ in range(d - 1):
        g = cartesian_product(g, q1)
    return g


FAMILIES = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "star": star,
    "hypercube": hypercube,
}


def family(kind: str, size: int) -> Graph:
    try:
        builder = FAMILIES[kind]
    except KeyError:
        raise GraphError(f"unknown family {kind!r}; choose from {sorted(FAMILIES)}") from None
    return builder(size)


# ---------------------------------------------------------------- operations

def cartesian_product(g: Graph, h: Graph) -> Graph:
    if g.n == 0 or h.n == 0:
        raise GraphError("cartesian product needs nonempty factors")
    k = h.n
    edges = []
    for a in range(g.n):
        for b, d in h.edges():
            edges.append((a * k + b, a * k + d))
    for a, c in g.edges():
        for b in range(k):
            edges.append((a * k + b, c * k + b))
    return Graph(g.n * k, edges)


def _check_vertex(g: Graph, u: int, what: str) -> None:
    if not 0 <= u < g.n:
        raise GraphError(f"{what} vertex {u} out of range for n={g.n}")


def vertex_sum(g: Graph, u: int, h: Graph, u2: int) -> Graph:
    """Identify ``u`` in ``g`` with ``u2`` in ``h`` (see module docstring)."""
    _check_vertex(g, u, "first")
    _check_vertex(h, u2, "second")

    def lab(w):
        if w == u2:
            return u
        return g.n + w if w < u2 else g.n + w - 1

    edges = g.edges() + [(lab(a), lab(b)) for a, b in h.edges()]
    return Graph(g.n + h.n - 1, edges)


def edge_sum(g: Graph, u: int, h: Graph, u2: int) -> Graph:
    _check_vertex(g, u, "first")
    _check_vertex(h, u2, "second")
    edges = g.edges() + [(g.n + a, g.n + b) for a, b in h.edges()] + [(u, g.n + u2)]
    return Graph(g.n + h.n, edges)


def random_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi graph; edges ``(i, j)``, ``i < j``, drawn in lexicographic order.

    Uses ``numpy.random.PCG64(seed)``; one uniform draw per vertex pair.
    """
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must be in [0, 1], got {p}")
    if n < 0:
        raise GraphError("n must be non-negative")
    rng = np.random.Generator(np.random.PCG64(seed))
    pairs = list(itertools.combinations(range(n), 2))
    draws = rng.random(len(pairs))
    return Graph(n, [e for e, r in zip(pairs, draws) if r < p])


# ---------------------------------------------------------------- isomorphism

def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking isomorphism test, intended for small graphs only."""
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(map(len, g.adj)) != sorted(map(len, h.adj)):
        return False
    n = g.n
    order = sorted(range(n), key=lambda v: -g.degree(v))
    image = [-1] * n
    used = [False] * n

    def extend(k):
        if k == n:
            return True
        v = order[k]
        for w in range(n):
            if used[w] or h.degree(w) != g.degree(v):
                continue
            ok = True
            for j in range(k):
                a = order[j]
                if g.has_edge(v, a) != h.has_edge(w, image[a]):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                if extend(k + 1):
                    return True
                used[w] = False
                image[v] = -1
        return False

    return extend(0)
