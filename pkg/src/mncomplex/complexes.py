"""Simplicial complexes: the m-neighbor construction, the Linial–Meshulam
sampler, and support classification."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from . import _kernel
from .errors import ConfigError, SupportUndecidedError
from .graph_core import Graph, Seed


class SimplicialComplex:
    """Faces stored by cardinality as frozensets of sorted vertex tuples.

    ``max_card_examined`` records the cardinality cap used at construction:
    faces above it are unknown, not known-absent.  Instances are immutable
    after construction.
    """

    __slots__ = ("n_vertices", "faces", "max_card_examined")

    def __init__(self, n_vertices: int, faces_by_card, max_card_examined: int):
        store: dict[int, frozenset] = {}
        for c, fs in dict(faces_by_card).items():
            fs = frozenset(tuple(sorted(f)) for f in fs)
            for f in fs:
                if len(f) != c:
                    raise ConfigError(f"face {f} filed under cardinality {c}")
                if f and not (0 <= f[0] and f[-1] < n_vertices):
                    raise ConfigError(f"face {f} outside vertex range")
            if fs:
                store[c] = fs
        self.n_vertices = n_vertices
        self.faces = store
        self.max_card_examined = max_card_examined

    def faces_of_card(self, c: int) -> frozenset:
        return self.faces.get(c, frozenset())

    def face_count(self, c: int) -> int:
        return len(self.faces.get(c, ()))

    def contains(self, face) -> bool:
        face = tuple(sorted(face))
        return face in self.faces.get(len(face), ())

    def cardinalities(self):
        return sorted(self.faces)

    def max_face_card(self) -> int:
        return max(self.faces, default=0)

    def all_faces(self):
        """All faces in canonical order: by cardinality, then lexicographic."""
        for c in sorted(self.faces):
            yield from sorted(self.faces[c])

    def is_downward_closed(self) -> bool:
        for c in sorted(self.faces):
            if c == 1:
                continue
            below = self.faces.get(c - 1, frozenset())
            for f in self.faces[c]:
                for sub in itertools.combinations(f, c - 1):
                    if sub not in below:
                        return False
        return True

    def canonical_key(self):
        """Hashable label-exact identity (used as a distribution key)."""
        return tuple((c, tuple(sorted(self.faces[c]))) for c in sorted(self.faces))

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.n_vertices == other.n_vertices
            and self.faces == other.faces
        )

    def __hash__(self):
        return hash((self.n_vertices, self.canonical_key()))

    def __repr__(self):
        counts = {c: len(fs) for c, fs in sorted(self.faces.items())}
        return f"SimplicialComplex(n={self.n_vertices}, counts={counts})"

    # -- text dump: one face per line, cardinality-grouped, sorted --

    def to_text(self) -> str:
        lines = [f"# n_vertices {self.n_vertices} max_card {self.max_card_examined}"]
        lines.extend(" ".join(str(v) for v in f) for f in self.all_faces())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SimplicialComplex":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("# n_vertices"):
            raise ConfigError("missing complex header line")
        toks = lines[0].split()
        n, cap = int(toks[2]), int(toks[4])
        by_card: dict[int, set] = {}
        for ln in lines[1:]:
            if not ln.strip():
                continue
            face = tuple(int(t) for t in ln.split())
            by_card.setdefault(len(face), set()).add(face)
        return cls(n, by_card, cap)

    @classmethod
    def from_faces(cls, n_vertices: int, faces, max_card_examined: int | None = None):
        """Hand-built complex; by default treated as fully known (cap = n)."""
        by_card: dict[int, set] = {}
        for f in faces:
            f = tuple(sorted(f))
            by_card.setdefault(len(f), set()).add(f)
        cap = n_vertices if max_card_examined is None else max_card_examined
        return cls(n_vertices, by_card, cap)

    @classmethod
    def full_skeleton(cls, n_vertices: int, card: int, max_card_examined: int | None = None):
        """All vertex subsets of cardinality <= card."""
        by_card = {
            c: set(itertools.combinations(range(n_vertices), c))
            for c in range(1, card + 1)
        }
        cap = n_vertices if max_card_examined is None else max_card_examined
        return cls(n_vertices, by_card, cap)


def m_neighbor_complex(g: Graph, m: int, max_card: int) -> SimplicialComplex:
    """N_m(G) up to the cardinality cap.

    A set is a face iff it has at least m common neighbors outside itself;
    the count is monotone non-increasing under set growth, so incremental
    extension of passing faces is exhaustive.
    """
    if m < 1:
        raise ConfigError("m must be >= 1")
    if max_card < 1:
        raise ConfigError("max_card must be >= 1")
    levels = _kernel.enumerate_faces(g.words, m, min(max_card, g.n))
    by_card = {c + 1: level for c, level in enumerate(levels) if level}
    return SimplicialComplex(g.n, by_card, max_card)


def m_neighbor_complex_bruteforce(g: Graph, m: int, max_card: int) -> SimplicialComplex:
    """Independent oracle: test every vertex subset directly."""
    from .graph_core import common_neighbor_count

    by_card: dict[int, set] = {}
    for c in range(1, min(max_card, g.n) + 1):
        fs = {
            f
            for f in itertools.combinations(range(g.n), c)
            if common_neighbor_count(g, f) >= m
        }
        if fs:
            by_card[c] = fs
    return SimplicialComplex(g.n, by_card, max_card)


def sample_linial_meshulam(n: int, k: int, q: float, seed: Seed) -> SimplicialComplex:
    """Sample Y_{n,k-1,q}: full (k-1)-cardinality skeleton, each k-set a face
    independently with probability q, nothing larger.

    k-sets are visited in lexicographic order with one draw each.
    """
    if not 1 <= k <= n:
        raise ConfigError(f"need 1 <= k <= n, got k={k}, n={n}")
    if not 0.0 <= q <= 1.0:
        raise ConfigError(f"face probability {q} outside [0, 1]")
    rng = seed.generator()
    by_card: dict[int, set] = {
        c: set(itertools.combinations(range(n), c)) for c in range(1, k)
    }
    draws = rng.random(comb(n, k))
    chosen = {
        f
        for f, u in zip(itertools.combinations(range(n), k), draws)
        if u < q
    }
    if chosen:
        by_card[k] = chosen
    return SimplicialComplex(n, by_card, max_card_examined=n)


@dataclass(frozen=True)
class SupportReport:
    """Support classification of a complex against Y_{n,k-1}."""

    k: int
    all_sub_faces: bool        # every (k-1)-set is a face
    no_super_faces: bool       # no face with k+1 vertices
    in_y: bool
    counts: dict               # cardinality -> face count
    ratios: dict               # cardinality -> count / C(n, c)


def support_class(kx: SimplicialComplex, k: int) -> SupportReport:
    """Classify membership in Y_{n,k-1} and report per-cardinality ratios."""
    n = kx.n_vertices
    if k < 1 or k > n:
        raise ConfigError(f"need 1 <= k <= n, got k={k}")
    if k - 1 >= 1 and kx.max_card_examined < k - 1:
        raise SupportUndecidedError(
            f"cap {kx.max_card_examined} cannot certify cardinality {k - 1} faces"
        )
    if k + 1 <= n and kx.max_card_examined < k + 1:
        raise SupportUndecidedError(
            f"cap {kx.max_card_examined} cannot certify absence of cardinality {k + 1} faces"
        )
    all_sub = k == 1 or kx.face_count(k - 1) == comb(n, k - 1)
    no_super = kx.face_count(k + 1) == 0
    counts = {c: kx.face_count(c) for c in range(1, min(kx.max_card_examined, n) + 1)}
    ratios = {c: counts[c] / comb(n, c) for c in counts}
    return SupportReport(
        k=k,
        all_sub_faces=all_sub,
        no_super_faces=no_super,
        in_y=all_sub and no_super,
        counts=counts,
        ratios=ratios,
    )
