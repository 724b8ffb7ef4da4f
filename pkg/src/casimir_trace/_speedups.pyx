# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled modular linear-algebra primitives.

Mirrors _purekernel exactly; 64-bit arithmetic with 128-bit intermediate
products, inner loops run without the GIL so weight spaces can be
processed from a thread pool."""

from libc.stdlib cimport calloc, free

NAME = "compiled"

ctypedef long long i64

cdef extern from *:
    ctypedef long long i128 "__int128_t"


cdef inline i64 mulmod(i64 a, i64 b, i64 p) nogil:
    return <i64>((<i128>a * <i128>b) % <i128>p)


cdef inline i64 submod(i64 a, i64 b, i64 p) nogil:
    cdef i64 r = a - b
    if r < 0:
        r += p
    return r


cdef i64 powmod(i64 a, i64 e, i64 p) nogil:
    cdef i64 r = 1
    a %= p
    while e:
        if e & 1:
            r = mulmod(r, a, p)
        a = mulmod(a, a, p)
        e >>= 1
    return r


cdef int _charpoly_core(i64* h, i64* polybuf, int n, i64 p) nogil:
    # Hessenberg reduction by similarity transforms
    cdef int col, r, c, i, k, piv, t2
    cdef i64 t, inv, a, b, prod, tmp
    for col in range(n - 2):
        piv = -1
        for r in range(col + 1, n):
            if h[r * n + col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != col + 1:
            for c in range(n):
                tmp = h[piv * n + c]; h[piv * n + c] = h[(col + 1) * n + c]; h[(col + 1) * n + c] = tmp
            for r in range(n):
                tmp = h[r * n + piv]; h[r * n + piv] = h[r * n + col + 1]; h[r * n + col + 1] = tmp
        inv = powmod(h[(col + 1) * n + col], p - 2, p)
        for r in range(col + 2, n):
            t = mulmod(h[r * n + col], inv, p)
            if t:
                for c in range(col, n):
                    h[r * n + c] = submod(h[r * n + c], mulmod(t, h[(col + 1) * n + c], p), p)
                for i in range(n):
                    h[i * n + col + 1] = (h[i * n + col + 1] + mulmod(t, h[i * n + r], p)) % p
    # leading-minor charpoly recurrence; polys stored row k at polybuf[k*(n+1)]
    polybuf[0] = 1
    for k in range(1, n + 1):
        # cur = x*prev
        polybuf[k * (n + 1)] = 0
        for i in range(k):
            polybuf[k * (n + 1) + i + 1] = polybuf[(k - 1) * (n + 1) + i]
        a = h[(k - 1) * n + (k - 1)]
        if a:
            for i in range(k):
                polybuf[k * (n + 1) + i] = submod(polybuf[k * (n + 1) + i],
                                                  mulmod(a, polybuf[(k - 1) * (n + 1) + i], p), p)
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = mulmod(prod, h[i * n + i - 1], p)
            if not prod:
                break
            b = mulmod(h[(i - 1) * n + (k - 1)], prod, p)
            if b:
                for t2 in range(i):
                    polybuf[k * (n + 1) + t2] = submod(polybuf[k * (n + 1) + t2],
                                                       mulmod(b, polybuf[(i - 1) * (n + 1) + t2], p), p)
    return 0


def charpoly_mod(flat, int n, p_in):
    """Characteristic polynomial det(xI - A) mod p, coefficients ascending."""
    cdef i64 p = p_in
    cdef i64* h = <i64*> calloc(n * n, sizeof(i64))
    cdef i64* polybuf = <i64*> calloc((n + 1) * (n + 1), sizeof(i64))
    if h == NULL or polybuf == NULL:
        if h != NULL: free(h)
        if polybuf != NULL: free(polybuf)
        raise MemoryError()
    cdef Py_ssize_t idx
    cdef object v
    try:
        for idx in range(n * n):
            h[idx] = flat[idx] % p_in
        with nogil:
            _charpoly_core(h, polybuf, n, p)
        return [polybuf[n * (n + 1) + i] for i in range(n + 1)]
    finally:
        free(h)
        free(polybuf)


def rank_mod(flat, int nrows, int ncols, p_in):
    cdef i64 p = p_in
    cdef i64* m = <i64*> calloc(max(nrows * ncols, 1), sizeof(i64))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t idx
    cdef int rank = 0, row = 0, col, r, c, piv
    cdef i64 inv, t
    try:
        for idx in range(nrows * ncols):
            m[idx] = flat[idx] % p_in
        with nogil:
            for col in range(ncols):
                if row == nrows:
                    break
                piv = -1
                for r in range(row, nrows):
                    if m[r * ncols + col]:
                        piv = r
                        break
                if piv < 0:
                    continue
                if piv != row:
                    for c in range(col, ncols):
                        inv = m[piv * ncols + c]; m[piv * ncols + c] = m[row * ncols + c]; m[row * ncols + c] = inv
                inv = powmod(m[row * ncols + col], p - 2, p)
                for c in range(col, ncols):
                    m[row * ncols + c] = mulmod(m[row * ncols + c], inv, p)
                for r in range(row + 1, nrows):
                    t = m[r * ncols + col]
                    if t:
                        for c in range(col, ncols):
                            m[r * ncols + c] = submod(m[r * ncols + c], mulmod(t, m[row * ncols + c], p), p)
                row += 1
                rank += 1
        return rank
    finally:
        free(m)


def matmul_mod(a, b, int n, p_in):
    cdef i64 p = p_in
    cdef i64* am = <i64*> calloc(n * n, sizeof(i64))
    cdef i64* bm = <i64*> calloc(n * n, sizeof(i64))
    cdef i64* om = <i64*> calloc(n * n, sizeof(i64))
    if am == NULL or bm == NULL or om == NULL:
        if am != NULL: free(am)
        if bm != NULL: free(bm)
        if om != NULL: free(om)
        raise MemoryError()
    cdef Py_ssize_t idx
    cdef int i, j, k
    cdef i64 x
    try:
        for idx in range(n * n):
            am[idx] = a[idx] % p_in
            bm[idx] = b[idx] % p_in
        with nogil:
            for i in range(n):
                for k in range(n):
                    x = am[i * n + k]
                    if x:
                        for j in range(n):
                            om[i * n + j] = (om[i * n + j] + mulmod(x, bm[k * n + j], p)) % p
        return [om[idx] for idx in range(n * n)]
    finally:
        free(am)
        free(bm)
        free(om)
