"""Small exact linear algebra over the integers and rationals.

Only what the representation and monodromy layers need: fraction-free
integer rank, reduced echelon form, nullspaces, inverses, and dense
matrix products over Fraction.  Sizes here are modest (the heavy modular
work lives in the kernel backends), so clarity beats micro-optimization.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, InvariantError


def rank_int(rows: list[list[int]], ncols: int | None = None) -> int:
    """Rank over Q of an integer matrix, by fraction-free elimination."""
    m = [list(r) for r in rows]
    nrows = len(m)
    if nrows == 0:
        return 0
    if ncols is None:
        ncols = len(m[0])
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
        pval = m[row][col]
        for r in range(row + 1, nrows):
            rval = m[r][col]
            if rval:
                for c in range(col, ncols):
                    m[r][c] = m[r][c] * pval - rval * m[row][c]
                # keep entries small; content removal is safe for rank
                g = 0
                for c in range(col, ncols):
                    g = _gcd(g, m[r][c])
                    if g == 1:
                        break
                if g > 1:
                    for c in range(col, ncols):
                        m[r][c] //= g
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot column list (Fraction arithmetic)."""
    m = [[Fraction(x) for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
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
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for r in range(nrows):
            if r != row and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return m, pivots


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Canonical nullspace basis (one vector per free column of the RREF)."""
    if not rows:
        return [[Fraction(i == j) for i in range(ncols)] for j in range(ncols)]
    r, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for prow, pcol in enumerate(pivots):
            v[pcol] = -r[prow][free]
        basis.append(v)
    return basis


def mat_mul(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    if a and b and len(a[0]) != len(b):
        raise DomainError("matrix shapes do not compose")
    n, k = len(a), len(b)
    p = len(b[0]) if b else 0
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(p):
                    if bt[j]:
                        oi[j] += x * bt[j]
    return out


def mat_identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(i == j) for j in range(n)] for i in range(n)]


def mat_inverse(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(i == j) for j in range(n)] for i, row in enumerate(a)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise InvariantError("matrix is singular; no inverse")
    return [row[n:] for row in r[:n]]


def mat_sub_scalar(a: list[list[Fraction]], c: Fraction) -> list[list[Fraction]]:
    n = len(a)
    return [[a[i][j] - (c if i == j else 0) for j in range(n)] for i in range(n)]


def mat_from_int(flat: list[int], n: int) -> list[list[Fraction]]:
    return [[Fraction(flat[i * n + j]) for j in range(n)] for i in range(n)]
