"""Exact counting of faces, labeled subcomplex copies, and witness structures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import ConfigError
from .graph_core import Graph
from .shapes import FSetWitness


@dataclass(frozen=True)
class CensusProfile:
    """Per-cardinality face counts with ratios to the maximum possible."""

    n_vertices: int
    counts: dict  # cardinality -> count
    ratios: dict  # cardinality -> count / C(n, c)

    def as_dict(self) -> dict:
        return {
            "n_vertices": self.n_vertices,
            "counts": {str(c): v for c, v in sorted(self.counts.items())},
            "ratios": {str(c): v for c, v in sorted(self.ratios.items())},
        }


def count_faces(kx) -> CensusProfile:
    """Exact face counts up to the construction cap."""
    n = kx.n_vertices
    counts = {c: kx.face_count(c) for c in range(1, min(kx.max_card_examined, n) + 1)}
    ratios = {c: counts[c] / comb(n, c) for c in counts}
    return CensusProfile(n, counts, ratios)


def count_copies(kx, x_complex) -> int:
    """Number of injective vertex maps from x_complex into kx carrying every
    face to a face.

    Copies are labeled: automorphic images count separately.  Backtracking
    places the target's vertices in an order that front-loads constraints,
    checking each face of x_complex as soon as its image is fully placed.
    """
    x_verts = sorted({v for f in x_complex.all_faces() for v in f})
    if x_complex.n_vertices > 8 or len(x_verts) > 8:
        raise ConfigError("copy counting is limited to targets with <= 8 vertices")
    x_faces = [tuple(f) for f in x_complex.all_faces()]
    if not x_faces:
        return 1 if kx.n_vertices >= 0 else 0

    # Order vertices so each newcomer shares faces with those already placed.
    order: list = []
    remaining = set(x_verts)
    while remaining:
        best, best_score = None, (-1, -1)
        for v in sorted(remaining):
            placed_overlap = sum(
                1 for f in x_faces if v in f and all(u in order or u == v for u in f)
            )
            degree = sum(1 for f in x_faces if v in f)
            score = (placed_overlap, degree)
            if score > best_score:
                best, best_score = v, score
        order.append(best)
        remaining.remove(best)
    position = {v: i for i, v in enumerate(order)}

    # Faces checkable as soon as vertex order[i] is placed.
    checks_at: list[list[tuple]] = [[] for _ in order]
    for f in x_faces:
        last = max(position[v] for v in f)
        checks_at[last].append(f)

    nk = kx.n_vertices
    images: dict = {}
    used = [False] * nk
    count = 0

    def place(i: int):
        nonlocal count
        if i == len(order):
            count += 1
            return
        v = order[i]
        for target in range(nk):
            if used[target]:
                continue
            images[v] = target
            ok = all(
                kx.contains(tuple(images[u] for u in f)) for f in checks_at[i]
            )
            if ok:
                used[target] = True
                place(i + 1)
                used[target] = False
        del images[v]

    place(0)
    return count


def count_copies_bruteforce(kx, x_complex) -> int:
    """Independent oracle: try every injective map."""
    x_verts = sorted({v for f in x_complex.all_faces() for v in f})
    x_faces = [tuple(f) for f in x_complex.all_faces()]
    count = 0
    for perm in itertools.permutations(range(kx.n_vertices), len(x_verts)):
        images = dict(zip(x_verts, perm))
        if all(kx.contains(tuple(images[u] for u in f)) for f in x_faces):
            count += 1
    return count


def count_k_set_witness_pairs(g: Graph, k: int, m: int) -> int:
    """Number of (k-set, m-set) pairs where the m-set consists of common
    neighbors of the k-set (hence disjoint from it)."""
    if k + m > g.n:
        raise ConfigError(f"need k + m <= n, got {k}+{m} > {g.n}")
    total = 0
    for f in itertools.combinations(range(g.n), k):
        mask = g.rows[f[0]]
        for v in f[1:]:
            mask &= g.rows[v]
        total += comb(mask.bit_count(), m)
    return total


def count_bipartite_witness_embeddings(g: Graph, x_facets, witness: FSetWitness) -> int:
    """Injective maps of complex-plus-witness labels into the graph such that
    every facet-vertex image is adjacent to every image of that facet's
    witness labels."""
    x_facets = [frozenset(f) for f in x_facets]
    if len(x_facets) != witness.phi:
        raise ConfigError(
            f"facet count {len(x_facets)} != witness facet count {witness.phi}"
        )
    x_labels = sorted(frozenset().union(*x_facets), key=str)
    w_labels = sorted(witness.ground, key=str)
    overlap = set(x_labels) & set(w_labels)
    if overlap:
        raise ConfigError(f"labels shared between complex and witness: {overlap}")
    labels = x_labels + w_labels
    if len(labels) > 10:
        raise ConfigError("embedding count is limited to <= 10 combined labels")

    # Adjacency constraints between label pairs, as index pairs.
    index = {lab: i for i, lab in enumerate(labels)}
    constraints: list[list[int]] = [[] for _ in labels]
    for fi, facet in enumerate(x_facets):
        for u in facet:
            for w in witness.sets[fi]:
                a, b = index[u], index[w]
                lo, hi = min(a, b), max(a, b)
                constraints[hi].append(lo)

    n = g.n
    used = [False] * n
    placed = [0] * len(labels)
    count = 0

    def place(i: int):
        nonlocal count
        if i == len(labels):
            count += 1
            return
        for target in range(n):
            if used[target]:
                continue
            if all(g.has_edge(target, placed[j]) for j in constraints[i]):
                placed[i] = target
                used[target] = True
                place(i + 1)
                used[target] = False

    place(0)
    return count
