# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels with the same contracts as _core_py.

Arithmetic runs on C long longs.  Any input that could overflow an
intermediate (or is not a plain int) is handed to the exact pure-Python
twin instead, so results agree with _core_py on every input.
"""

from libc.stdlib cimport free, malloc

from cpython.long cimport PyLong_AsLongLongAndOverflow

from . import _core_py

# row sums in lattice_scan add at most 16 products of guarded values,
# keeping every intermediate under 2^62
cdef long long _GUARD = 1LL << 29
cdef Py_ssize_t _MAX_DIM = 16


cdef bint _fill(object values, long long* buf, Py_ssize_t n,
                long long bound) except? False:
    """Copy n Python ints into buf; False when any fails the bound."""
    cdef Py_ssize_t i = 0
    cdef int overflow = 0
    cdef long long v
    for x in values:
        if i >= n:
            return False
        v = PyLong_AsLongLongAndOverflow(x, &overflow)
        if overflow or not -bound < v < bound:
            return False
        buf[i] = v
        i += 1
    return i == n


def lattice_scan(A, b, lower, upper):
    """All integer points of [lower, upper] satisfying A u <= b, lex order."""
    cdef Py_ssize_t m = len(A)
    cdef Py_ssize_t d = len(lower)
    if m == 0 or d == 0 or d > _MAX_DIM:
        return _core_py.lattice_scan(A, b, lower, upper)
    cdef long long* buf = <long long*> malloc(
        (m * d + m + 3 * d) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef long long* rows = buf
    cdef long long* rhs = buf + m * d
    cdef long long* lo = rhs + m
    cdef long long* hi = lo + d
    cdef long long* pt = hi + d
    cdef Py_ssize_t i, j, k
    cdef long long s
    cdef bint ok
    try:
        try:
            ok = (_fill((x for row in A for x in row), rows, m * d, _GUARD)
                  and _fill(b, rhs, m, _GUARD)
                  and _fill(lower, lo, d, _GUARD)
                  and _fill(upper, hi, d, _GUARD))
        except (TypeError, OverflowError):
            ok = False
        if not ok:
            return _core_py.lattice_scan(A, b, lower, upper)
        out = []
        for j in range(d):
            pt[j] = lo[j]
        while True:
            ok = True
            for i in range(m):
                s = 0
                for j in range(d):
                    s += rows[i * d + j] * pt[j]
                if s > rhs[i]:
                    ok = False
                    break
            if ok:
                out.append(tuple(pt[j] for j in range(d)))
            k = d - 1
            while k >= 0:
                pt[k] += 1
                if pt[k] <= hi[k]:
                    break
                pt[k] = lo[k]
                k -= 1
            if k < 0:
                return out
    finally:
        free(buf)


def pareto_filter(points):
    """Minimal elements under componentwise <= (weak dominance), lex-sorted,
    duplicates collapsed."""
    pts = sorted(set(tuple(p) for p in points))
    cdef Py_ssize_t n = len(pts)
    if n == 0:
        return []
    cdef Py_ssize_t k = len(pts[0])
    if k == 0:
        return pts[:1]
    cdef long long* buf = <long long*> malloc(n * k * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, c
    cdef bint dominated, le, strict, ok
    try:
        try:
            ok = _fill((x for p in pts for x in p), buf, n * k,
                       1LL << 62)
        except (TypeError, OverflowError):
            ok = False
        if not ok:
            return _core_py.pareto_filter(pts)
        out = []
        for i in range(n):
            dominated = False
            for j in range(n):
                if j == i:
                    continue
                le = True
                strict = False
                for c in range(k):
                    if buf[j * k + c] > buf[i * k + c]:
                        le = False
                        break
                    if buf[j * k + c] < buf[i * k + c]:
                        strict = True
                if le and strict:
                    dominated = True
                    break
            if not dominated:
                out.append(pts[i])
        return out
    finally:
        free(buf)


def count_in_slab(points, lower, upper):
    """How many of the integer vectors fall inside [lower, upper]."""
    pts = points if type(points) is list else list(points)
    cdef Py_ssize_t n = len(pts)
    cdef Py_ssize_t p = len(lower)
    if n == 0:
        return 0
    if p == 0:
        return n
    cdef long long* buf = <long long*> malloc(
        (n * p + 2 * p) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef long long* lo = buf + n * p
    cdef long long* hi = lo + p
    cdef Py_ssize_t i, j
    cdef long long count = 0
    cdef bint inside, ok
    try:
        try:
            ok = (_fill((x for v in pts for x in v), buf, n * p, 1LL << 62)
                  and _fill(lower, lo, p, 1LL << 62)
                  and _fill(upper, hi, p, 1LL << 62))
        except (TypeError, OverflowError):
            ok = False
        if not ok:
            return _core_py.count_in_slab(pts, lower, upper)
        for i in range(n):
            inside = True
            for j in range(p):
                if buf[i * p + j] < lo[j] or buf[i * p + j] > hi[j]:
                    inside = False
                    break
            if inside:
                count += 1
        return count
    finally:
        free(buf)
