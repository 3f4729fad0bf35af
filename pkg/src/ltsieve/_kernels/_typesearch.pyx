# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled type-search kernel (64-bit integers).

Same contract and loop structure as ``_typesearch_py.search``; the
dispatcher only routes inputs here when every quantity fits comfortably
in a signed 64-bit integer.
"""
from cpython.long cimport PyLong_FromLongLong
from cpython.ref cimport Py_INCREF
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from libc.stdlib cimport malloc, free

from ._typesearch_py import SearchLimit


cdef inline long long _min_pairs(long long rk, long long nb):
    cdef long long q, rem
    if nb >= rk:
        return 0
    q = rk // nb
    rem = rk % nb
    return rem * (q + 1) * q // 2 + (nb - rem) * q * (q - 1) // 2


cdef inline bint _feasible(long long j, long long rk, long long rx, long long nb,
                           long long *pairs):
    if nb <= 0 or rk > j * nb:
        return False
    if (rk // j) * pairs[j] + pairs[rk % j] < rx:
        return False
    return _min_pairs(rk, nb) <= rx


cdef tuple _solution(long long first, long long i, long long top, long long *cnt):
    # (first, 0, ..., 0, cnt[i], ..., cnt[top])
    cdef tuple out = PyTuple_New(top)
    cdef object zero = 0
    cdef object val
    cdef long long t
    val = PyLong_FromLongLong(first)
    Py_INCREF(val)
    PyTuple_SET_ITEM(out, 0, val)
    for t in range(2, top + 1):
        if t < i or cnt[t] == 0:
            val = zero
        else:
            val = PyLong_FromLongLong(cnt[t])
        Py_INCREF(val)
        PyTuple_SET_ITEM(out, t - 1, val)
    return out


def search(long long k, long long x, long long top, long long budget, steps,
           long long max_solutions, long long max_nodes, bint first_only=False):
    """Return ``(solutions, nodes)``; each solution is a tuple (d_1, ..., d_top)."""
    cdef list sols = []
    if x == 0 or top < 2:
        if x == 0 and k <= budget and top >= 1 and k % <long long>steps[1] == 0:
            sols.append((k,) + (0,) * (top - 1))
        return sols, 1

    cdef Py_ssize_t n = top + 2
    cdef long long *pairs = <long long *> malloc(n * sizeof(long long))
    cdef long long *step = <long long *> malloc(n * sizeof(long long))
    cdef long long *cnt = <long long *> malloc(n * sizeof(long long))
    cdef long long *rk = <long long *> malloc(n * sizeof(long long))
    cdef long long *rx = <long long *> malloc(n * sizeof(long long))
    cdef long long *nb = <long long *> malloc(n * sizeof(long long))
    if not (pairs and step and cnt and rk and rx and nb):
        free(pairs); free(step); free(cnt); free(rk); free(rx); free(nb)
        raise MemoryError()

    cdef long long i, j, e, hi, nrk, nrx, nnb, nodes = 0
    cdef Py_ssize_t t
    try:
        for t in range(n):
            pairs[t] = t * (t - 1) // 2
            cnt[t] = 0
            rk[t] = 0
            rx[t] = 0
            nb[t] = 0
            step[t] = <long long>steps[t] if t <= top else 1
        rk[top] = k
        rx[top] = x
        nb[top] = budget
        hi = min(k // top, x // pairs[top], budget)
        cnt[top] = hi - hi % step[top]
        i = top
        while True:
            if cnt[i] < 0:
                cnt[i] = 0
                i += 1
                if i > top:
                    break
                cnt[i] -= step[i]
                continue
            nodes += 1
            if nodes > max_nodes:
                raise SearchLimit("node", nodes, len(sols))
            e = cnt[i]
            nrk = rk[i] - i * e
            nrx = rx[i] - pairs[i] * e
            nnb = nb[i] - e
            j = i - 1
            if nrx == 0:
                if nrk % step[1] == 0 and nrk <= nnb:
                    sols.append(_solution(nrk, i, top, cnt))
                    if first_only:
                        return sols, nodes
                    if len(sols) > max_solutions:
                        raise SearchLimit("solution", nodes, len(sols))
                cnt[i] -= step[i]
                continue
            if j == 1 or not _feasible(j, nrk, nrx, nnb, pairs):
                cnt[i] -= step[i]
                continue
            rk[j] = nrk
            rx[j] = nrx
            nb[j] = nnb
            hi = min(nrk // j, nrx // pairs[j], nnb)
            cnt[j] = hi - hi % step[j]
            i = j
        return sols, nodes
    finally:
        free(pairs); free(step); free(cnt); free(rk); free(rx); free(nb)
