"""Seeded Erdős–Rényi sampling and common-neighbor queries on bitset adjacency."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class Seed:
    """Reproducible per-trial RNG stream identifier.

    The (master, trial_index) pair fully determines a sampled graph.  Streams
    are realized with the Philox counter-based generator keyed on
    ``master * 2**64 + trial_index``, so results are independent of execution
    order and platform.
    """

    master: int
    trial_index: int = 0

    def generator(self) -> np.random.Generator:
        key = (self.master & (2**64 - 1)) * 2**64 + (self.trial_index & (2**64 - 1))
        return np.random.Generator(np.random.Philox(key=key))


class Graph:
    """Undirected simple graph on vertices 0..n-1 with bitrow adjacency.

    Immutable after construction; safe to share across trial workers.  Each
    row is a Python integer whose bit j is set iff {i, j} is an edge.
    """

    __slots__ = ("n", "rows", "_words")

    def __init__(self, n: int, rows, validate: bool = True):
        if n < 1:
            raise ConfigError("graph needs at least one vertex")
        rows = tuple(rows)
        if len(rows) != n:
            raise ConfigError(f"expected {n} adjacency rows, got {len(rows)}")
        if validate:
            full = (1 << n) - 1
            for i, row in enumerate(rows):
                if row & ~full:
                    raise ConfigError(f"row {i} has bits beyond vertex range")
                if row >> i & 1:
                    raise ConfigError(f"loop at vertex {i}")
            for i in range(n):
                for j in range(i + 1, n):
                    if (rows[i] >> j & 1) != (rows[j] >> i & 1):
                        raise ConfigError(f"adjacency not symmetric at ({i},{j})")
        self.n = n
        self.rows = rows
        self._words = None

    @property
    def words(self) -> np.ndarray:
        """Adjacency as an (n, W) uint64 array for the compiled kernel."""
        if self._words is None:
            nw = (self.n + 63) // 64
            arr = np.zeros((self.n, nw), dtype=np.uint64)
            for i, row in enumerate(self.rows):
                arr[i] = np.frombuffer(row.to_bytes(nw * 8, "little"), dtype=np.uint64)
            arr.setflags(write=False)
            self._words = arr
        return self._words

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self):
        for i in range(self.n):
            row = self.rows[i] >> (i + 1) << (i + 1)
            while row:
                j = (row & -row).bit_length() - 1
                yield (i, j)
                row &= row - 1

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count()})"

    # -- edge-list text format: first line "n m", then one "u v" per line --

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.edge_count()}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text: str) -> "Graph":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ConfigError("empty edge-list input")
        try:
            n, m = (int(tok) for tok in lines[0].split())
        except ValueError as exc:
            raise ConfigError(f"bad edge-list header: {lines[0]!r}") from exc
        rows = [0] * n
        for ln in lines[1:]:
            u, v = (int(tok) for tok in ln.split())
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ConfigError(f"bad edge {ln!r}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        g = cls(n, rows, validate=False)
        if g.edge_count() != m:
            raise ConfigError(f"header claims {m} edges, found {g.edge_count()}")
        return g

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ConfigError(f"loop edge ({u},{v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, validate=False)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << i) for i in range(n)], validate=False)


def sample_er(n: int, p: float, seed: Seed) -> Graph:
    """Sample G(n, p): each unordered pair an edge independently with probability p.

    Pairs (i, j), i < j, are visited in lexicographic order with one uniform
    draw each, so the result is a deterministic function of the seed.
    """
    if n < 1:
        raise ConfigError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"edge probability {p} outside [0, 1]")
    rng = seed.generator()
    rows = [0] * n
    for i in range(n - 1):
        draws = rng.random(n - 1 - i)
        for off in np.nonzero(draws < p)[0]:
            j = i + 1 + int(off)
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, rows, validate=False)


def common_neighbors(g: Graph, s) -> set[int]:
    """Vertices outside ``s`` adjacent to every vertex of ``s``.

    For s = {} returns all vertices (empty-intersection convention).
    """
    s = set(s)
    for v in s:
        if not 0 <= v < g.n:
            raise ConfigError(f"vertex {v} out of range")
    if not s:
        return set(range(g.n))
    mask = g.rows[next(iter(s))]
    for v in s:
        mask &= g.rows[v]
    out = set()
    while mask:
        out.add((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return out - s


def common_neighbor_count(g: Graph, s) -> int:
    """|common_neighbors(g, s)| via the AND-popcount kernel path."""
    s = list(s)
    if not s:
        return g.n
    mask = g.rows[s[0]]
    for v in s[1:]:
        mask &= g.rows[v]
    return mask.bit_count()
