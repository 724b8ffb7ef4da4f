"""Pure-Python modular linear-algebra primitives.

Same contracts as the compiled backend in _speedups.pyx; correct at any
size but noticeably slower on matrices past a few hundred rows.  Entries
are reduced mod p on entry; p must be an odd prime below 2^61.
"""

from __future__ import annotations

NAME = "pure"


def charpoly_mod(flat: list[int], n: int, p: int) -> list[int]:
    """Characteristic polynomial det(xI - A) mod p, coefficients ascending.

    Hessenberg reduction by similarity, then the standard leading-minor
    recurrence; O(n^3) ring operations."""
    h = [[flat[i * n + j] % p for j in range(n)] for i in range(n)]
    for col in range(n - 2):
        piv = None
        for r in range(col + 1, n):
            if h[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != col + 1:
            h[piv], h[col + 1] = h[col + 1], h[piv]
            for r in range(n):
                h[r][piv], h[r][col + 1] = h[r][col + 1], h[r][piv]
        inv = pow(h[col + 1][col], p - 2, p)
        for r in range(col + 2, n):
            t = h[r][col] * inv % p
            if t:
                hrow, prow = h[r], h[col + 1]
                for c in range(col, n):
                    hrow[c] = (hrow[c] - t * prow[c]) % p
                for i in range(n):
                    h[i][col + 1] = (h[i][col + 1] + t * h[i][r]) % p
    polys: list[list[int]] = [[1]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [0] + prev
        a = h[k - 1][k - 1]
        if a:
            for i in range(k):
                cur[i] = (cur[i] - a * prev[i]) % p
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * h[i][i - 1] % p
            if not prod:
                break
            b = h[i - 1][k - 1] * prod % p
            if b:
                pi = polys[i - 1]
                for t2 in range(i):
                    cur[t2] = (cur[t2] - b * pi[t2]) % p
        polys.append(cur)
    return [c % p for c in polys[n]]


def rank_mod(flat: list[int], nrows: int, ncols: int, p: int) -> int:
    m = [[flat[i * ncols + j] % p for j in range(ncols)] for i in range(nrows)]
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = pow(m[row][col], p - 2, p)
        mrow = m[row]
        for c in range(col, ncols):
            mrow[c] = mrow[c] * inv % p
        for r in range(row + 1, nrows):
            t = m[r][col]
            if t:
                mr = m[r]
                for c in range(col, ncols):
                    mr[c] = (mr[c] - t * mrow[c]) % p
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def matmul_mod(a: list[int], b: list[int], n: int, p: int) -> list[int]:
    out = [0] * (n * n)
    for i in range(n):
        base = i * n
        for k in range(n):
            x = a[base + k] % p
            if x:
                brow = k * n
                for j in range(n):
                    out[base + j] = (out[base + j] + x * b[brow + j]) % p
    return out
