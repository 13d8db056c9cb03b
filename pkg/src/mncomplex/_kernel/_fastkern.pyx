# cython: boundscheck=False, wraparound=False, cdivision=True
# Compiled bitset kernel; semantics match _kernel.pykern exactly.

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc

IMPLEMENTATION = "compiled"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef int _extend(const uint64_t[:, ::1] words, int m, int max_card,
                 int depth, int start, uint64_t* masks, int* face,
                 list out) except -1:
    cdef int n = words.shape[0]
    cdef int nwords = words.shape[1]
    cdef int v, w, cnt, i
    cdef uint64_t x
    cdef uint64_t* parent = masks + (depth - 1) * nwords
    cdef uint64_t* cur = masks + depth * nwords
    for v in range(start, n):
        cnt = 0
        if depth == 0:
            for w in range(nwords):
                x = words[v, w]
                cur[w] = x
                cnt += __builtin_popcountll(x)
        else:
            for w in range(nwords):
                x = parent[w] & words[v, w]
                cur[w] = x
                cnt += __builtin_popcountll(x)
        if cnt >= m:
            face[depth] = v
            out[depth].append(tuple([face[i] for i in range(depth + 1)]))
            if depth + 1 < max_card:
                _extend(words, m, max_card, depth + 1, v + 1, masks, face, out)
    return 0


def enumerate_faces(const uint64_t[:, ::1] words, int m, int max_card):
    """Faces of the m-neighbor complex, grouped by cardinality.

    Same contract as the pure-Python kernel: a list of ``max_card`` lists of
    sorted vertex tuples, lexicographic within each cardinality.
    """
    cdef int nwords = words.shape[1]
    out = [[] for _ in range(max_card)]
    if words.shape[0] == 0:
        return out
    cdef uint64_t* masks = <uint64_t*> malloc(max_card * nwords * sizeof(uint64_t))
    cdef int* face = <int*> malloc(max_card * sizeof(int))
    if masks == NULL or face == NULL:
        free(masks)
        free(face)
        raise MemoryError()
    try:
        _extend(words, m, max_card, 0, 0, masks, face, out)
    finally:
        free(masks)
        free(face)
    return out
