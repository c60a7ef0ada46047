# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled subset-hafnian kernels. Mirrors ``_kernels_py`` exactly."""
import numpy as np

cdef extern from *:
    """
    static inline int gd_mul_ovf(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int gd_add_ovf(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    static inline int gd_ctz(unsigned long long m) { return __builtin_ctzll(m); }
    static inline int gd_popcount(unsigned long long m) { return __builtin_popcountll(m); }
    """
    int gd_mul_ovf(long long a, long long b, long long *r) nogil
    int gd_add_ovf(long long a, long long b, long long *r) nogil
    int gd_ctz(unsigned long long m) nogil
    int gd_popcount(unsigned long long m) nogil


def subset_hafnians_int(long long[:, ::1] a):
    """table[mask] = haf(a restricted to mask), int64, raising OverflowError."""
    cdef Py_ssize_t k = a.shape[0]
    out = np.zeros(1 << k, dtype=np.int64)
    cdef long long[::1] t = out
    cdef unsigned long long mask, rest, m, full = (1ULL << k)
    cdef int i, j
    cdef long long acc, prod, w
    cdef bint ovf = 0
    t[0] = 1
    with nogil:
        mask = 1
        while mask < full:
            if gd_popcount(mask) & 1 == 0:
                i = gd_ctz(mask)
                rest = mask ^ (1ULL << i)
                acc = 0
                m = rest
                while m:
                    j = gd_ctz(m)
                    m &= m - 1
                    w = a[i, j]
                    if w != 0:
                        if gd_mul_ovf(w, t[rest ^ (1ULL << j)], &prod) or gd_add_ovf(acc, prod, &acc):
                            ovf = 1
                            break
                if ovf:
                    break
                t[mask] = acc
            mask += 1
    if ovf:
        raise OverflowError("int64 overflow in subset hafnian table")
    return out


def subset_hafnians_float(double[:, ::1] a):
    """Float64 version of :func:`subset_hafnians_int`."""
    cdef Py_ssize_t k = a.shape[0]
    out = np.zeros(1 << k, dtype=np.float64)
    cdef double[::1] t = out
    cdef unsigned long long mask, rest, m, full = (1ULL << k)
    cdef int i, j
    cdef double acc, w
    t[0] = 1.0
    with nogil:
        mask = 1
        while mask < full:
            if gd_popcount(mask) & 1 == 0:
                i = gd_ctz(mask)
                rest = mask ^ (1ULL << i)
                acc = 0.0
                m = rest
                while m:
                    j = gd_ctz(m)
                    m &= m - 1
                    w = a[i, j]
                    if w != 0.0:
                        acc += w * t[rest ^ (1ULL << j)]
                t[mask] = acc
            mask += 1
    return out


def graded_subset_sums_int(long long[::1] table, int k):
    """out[mask, s] = sum of table[T] over T subset of mask with |T| = s."""
    cdef unsigned long long n = 1ULL << k, mask, bit
    out = np.zeros((n, k + 1), dtype=np.int64)
    cdef long long[:, ::1] g = out
    cdef int b, s
    cdef long long r
    cdef bint ovf = 0
    with nogil:
        for mask in range(n):
            g[mask, gd_popcount(mask)] = table[mask]
        for b in range(k):
            bit = 1ULL << b
            for mask in range(n):
                if mask & bit:
                    for s in range(k + 1):
                        if gd_add_ovf(g[mask, s], g[mask ^ bit, s], &r):
                            ovf = 1
                            break
                        g[mask, s] = r
                    if ovf:
                        break
            if ovf:
                break
    if ovf:
        raise OverflowError("int64 overflow in graded subset sums")
    return out
