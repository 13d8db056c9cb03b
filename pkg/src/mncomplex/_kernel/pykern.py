"""Pure-Python bitset kernel.

Drop-in fallback for the compiled extension in ``_fastkern``.  Adjacency is
handed over as an (n, W) uint64 array of bitrows; internally each row is
converted to a single Python integer so that the AND/popcount hot path runs
on CPython's big-int machinery.
"""

from __future__ import annotations

IMPLEMENTATION = "python"


def rows_to_ints(words):
    """Convert an (n, W) uint64 bitrow array to a list of Python ints."""
    return [int.from_bytes(words[i].tobytes(), "little") for i in range(words.shape[0])]


def common_neighbor_bits(words, members) -> int:
    """Bitmask of vertices adjacent to every vertex in ``members``.

    Members are excluded automatically because the diagonal is zero.  An
    empty ``members`` returns the full vertex set (empty-intersection
    convention).
    """
    n = words.shape[0]
    members = list(members)
    if not members:
        return (1 << n) - 1
    mask = int.from_bytes(words[members[0]].tobytes(), "little")
    for v in members[1:]:
        mask &= int.from_bytes(words[v].tobytes(), "little")
    return mask


def enumerate_faces(words, m: int, max_card: int):
    """Faces of the m-neighbor complex, grouped by cardinality.

    Returns a list of ``max_card`` lists; entry ``c-1`` holds the sorted
    vertex tuples of cardinality ``c`` with at least ``m`` common neighbors.
    The common-neighbor count is non-increasing under set growth, so a
    depth-first extension of passing faces is exhaustive; lexicographic DFS
    makes each output level sorted.
    """
    n = words.shape[0]
    rows = rows_to_ints(words)
    out = [[] for _ in range(max_card)]
    face = []

    def extend(mask: int, depth: int, start: int) -> None:
        for v in range(start, n):
            new = mask & rows[v]
            if new.bit_count() >= m:
                face.append(v)
                out[depth].append(tuple(face))
                if depth + 1 < max_card:
                    extend(new, depth + 1, v + 1)
                face.pop()

    extend((1 << n) - 1, 0, 0)
    return out
