# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tally kernels over an ``(n, m)`` int32 ranking matrix."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def tally(const int[:, ::1] profile, int m):
    """Return ``(wins, adjacent)`` as int64 ``(m, m)`` arrays.

    ``wins[i, j]`` counts votes ranking i above j; ``adjacent[d, c]`` counts
    votes placing c exactly one position below d.
    """
    cdef Py_ssize_t n = profile.shape[0]
    cdef Py_ssize_t v, a, b
    cdef int hi
    wins_arr = np.zeros((m, m), dtype=np.int64)
    adj_arr = np.zeros((m, m), dtype=np.int64)
    cdef long long[:, ::1] wins = wins_arr
    cdef long long[:, ::1] adj = adj_arr
    for v in range(n):
        for a in range(m):
            hi = profile[v, a]
            for b in range(a + 1, m):
                wins[hi, profile[v, b]] += 1
            if a + 1 < m:
                adj[hi, profile[v, a + 1]] += 1
    return wins_arr, adj_arr


def nice_flags(const int[:, ::1] profile, int m):
    """Return a uint8 array whose entry c is 1 iff the triple with designated c is nice."""
    wins_arr, adj_arr = tally(profile, m)
    cdef long long[:, ::1] wins = wins_arr
    cdef long long[:, ::1] adj = adj_arr
    cdef long long threshold = profile.shape[0] // 2 + 1
    cdef long long deficit
    cdef Py_ssize_t c, d
    out_arr = np.ones(m, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    for c in range(m):
        for d in range(m):
            if d == c:
                continue
            deficit = threshold - wins[c, d]
            if deficit > 0 and adj[d, c] < deficit:
                out[c] = 0
                break
    return out_arr
