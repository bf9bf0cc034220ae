# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled assignment scan: hot kernel behind the brute-force oracle.

Mirrors _scan_py.scan_first exactly; the pure-Python module is the reference
implementation and the test suite cross-checks the two.
"""

from libc.stdlib cimport calloc, free

BACKEND = "cython"


def scan_first(prog, k, counts):
    cdef int n = prog.n
    cdef int delta = prog.delta
    cdef long long nodes = 0

    cdef const int[:] scope_flat = prog.scope_flat
    cdef const int[:] scope_off = prog.scope_off
    cdef const long long[:] strides_flat = prog.strides_flat
    cdef const unsigned char[:] table_blob = prog.table_blob
    cdef const long long[:] table_off = prog.table_off
    cdef const int[:] start = prog.start

    if n == 0:
        if k == 0 and start[0] == start[len(prog.start) - 1]:
            return (), nodes
        return None, nodes

    cdef int *assignment = <int *> calloc(n, sizeof(int))
    cdef int *choice = <int *> calloc(n, sizeof(int))
    cdef int *rem = NULL
    cdef bint use_counts = counts is not None
    cdef int i
    if use_counts:
        rem = <int *> calloc(delta + 1, sizeof(int))
        for i in range(1, delta + 1):
            rem[i] = counts[i]
    for i in range(n):
        choice[i] = -1

    cdef int need = k
    cdef int p = 0
    cdef int v, ci, j, lo, hi
    cdef long long idx
    cdef bint ok, placed, good
    cdef object result = None

    try:
        while True:
            v = choice[p]
            if v >= 1:
                need += 1
                if use_counts:
                    rem[v] += 1
            v += 1
            placed = False
            while v <= delta:
                nodes += 1
                if v == 0:
                    ok = need <= n - p - 1
                elif use_counts:
                    ok = rem[v] > 0 and need - 1 <= n - p - 1
                else:
                    ok = need > 0 and need - 1 <= n - p - 1
                if ok:
                    assignment[p] = v
                    good = True
                    for ci in range(start[p], start[p + 1]):
                        lo = scope_off[ci]
                        hi = scope_off[ci + 1]
                        idx = 0
                        for j in range(lo, hi):
                            idx += assignment[scope_flat[j]] * strides_flat[j]
                        if not table_blob[table_off[ci] + idx]:
                            good = False
                            break
                    if good:
                        placed = True
                        break
                v += 1
            if not placed:
                choice[p] = -1
                assignment[p] = 0
                p -= 1
                if p < 0:
                    return None, nodes
                continue
            choice[p] = v
            if v >= 1:
                need -= 1
                if use_counts:
                    rem[v] -= 1
            if p == n - 1:
                result = tuple(assignment[i] for i in range(n))
                return result, nodes
            p += 1
            choice[p] = -1
    finally:
        free(assignment)
        free(choice)
        if rem != NULL:
            free(rem)
