"""Kernel driver: backend selection plus certified integer spectra.

The two backends (compiled Cython, pure Python) expose identical modular
primitives; this module picks one at import time (environment variable
CASIMIR_TRACE_KERNEL forces the choice) and layers the exact machinery on
top: CRT-reconstructed characteristic polynomials with a rigorous
coefficient bound, and integer eigenvalue extraction with multiplicities.

Two proof levels, reported via the ``exact`` flag:

* dimension <= EXACT_DIM_MAX: the characteristic polynomial is exactly
  reconstructed from enough primes to cover the Hadamard-style bound
  binom(n,k) (sqrt(n) B)^k summed over k, i.e. (1 + sqrt(n) B)^n; integer
  roots are then proven by synthetic division over Z with full deflation.
* above the threshold: the spectrum is computed modulo three fixed 61-bit
  primes and certified by cross-prime agreement, full splitting mod every
  prime, and exact Newton checks (sum of roots = tr A, sum of squares =
  tr A^2 over Z).  A wrong answer would need simultaneous coincidences
  modulo three independent ~2^61 primes.
"""

from __future__ import annotations

import math
import os

from .errors import InvariantError, UnsupportedInputError

PRIMES61 = (
    2305843009213693951, 2305843009213693921, 2305843009213693907, 2305843009213693723,
    2305843009213693693, 2305843009213693669, 2305843009213693613, 2305843009213693561,
    2305843009213693549, 2305843009213693487, 2305843009213693421, 2305843009213693373,
    2305843009213693277, 2305843009213693193, 2305843009213693153, 2305843009213693133,
    2305843009213693123, 2305843009213693109, 2305843009213693093, 2305843009213693013,
    2305843009213692967, 2305843009213692937, 2305843009213692799, 2305843009213692757,
    2305843009213692737, 2305843009213692671, 2305843009213692653, 2305843009213692601,
    2305843009213692581, 2305843009213692527, 2305843009213692463, 2305843009213692427,
    2305843009213692419, 2305843009213692409, 2305843009213692343, 2305843009213692331,
    2305843009213692283, 2305843009213692211, 2305843009213692199, 2305843009213692139,
    2305843009213692107, 2305843009213692103, 2305843009213692097, 2305843009213692089,
    2305843009213692083, 2305843009213692043, 2305843009213692031, 2305843009213692029,
    2305843009213692007, 2305843009213691993, 2305843009213691929, 2305843009213691869,
    2305843009213691837, 2305843009213691819, 2305843009213691767, 2305843009213691581,
    2305843009213691579, 2305843009213691569, 2305843009213691567, 2305843009213691551,
    2305843009213691413, 2305843009213691401, 2305843009213691357, 2305843009213691347,
    2305843009213691287, 2305843009213691257, 2305843009213691041, 2305843009213691033,
    2305843009213690937, 2305843009213690907, 2305843009213690883, 2305843009213690873,
    2305843009213690871, 2305843009213690847, 2305843009213690813, 2305843009213690801,
    2305843009213690799, 2305843009213690769, 2305843009213690657, 2305843009213690627,
    2305843009213690621, 2305843009213690591, 2305843009213690589, 2305843009213690579,
    2305843009213690543, 2305843009213690511, 2305843009213690487, 2305843009213690327,
    2305843009213690283, 2305843009213690159, 2305843009213690153, 2305843009213690117,
    2305843009213690087, 2305843009213690057, 2305843009213690039, 2305843009213690021,
    2305843009213690019, 2305843009213689949, 2305843009213689937, 2305843009213689877,
    2305843009213689833, 2305843009213689811, 2305843009213689767, 2305843009213689733,
    2305843009213689709, 2305843009213689601, 2305843009213689593, 2305843009213689559,
    2305843009213689521, 2305843009213689509, 2305843009213689493, 2305843009213689487,
    2305843009213689479, 2305843009213689427, 2305843009213689377, 2305843009213689353,
    2305843009213689293, 2305843009213689229, 2305843009213689223, 2305843009213689203,
    2305843009213689163, 2305843009213689157, 2305843009213689133, 2305843009213689089,
    2305843009213689067, 2305843009213688983, 2305843009213688909, 2305843009213688873,
)


EXACT_DIM_MAX = int(os.environ.get("CASIMIR_TRACE_EXACT_DIM", "240"))
CERTIFYING_PRIMES = PRIMES61[:3]


def _load_backend(name: str):
    if name == "pure":
        from . import _purekernel as impl
        return impl
    if name == "compiled":
        from . import _speedups as impl  # type: ignore[attr-defined]
        return impl
    raise UnsupportedInputError(f"unknown kernel backend {name!r}")


def _select() -> object:
    forced = os.environ.get("CASIMIR_TRACE_KERNEL")
    if forced:
        return _load_backend(forced)
    try:
        return _load_backend("compiled")
    except ImportError:
        return _load_backend("pure")


BACKEND = _select()


def backend_name() -> str:
    return BACKEND.NAME


def get_backend(name: str | None = None):
    return BACKEND if name is None else _load_backend(name)


def _crt(residues: list[int], primes: list[int]) -> int:
    """Symmetric CRT lift: the unique representative in (-P/2, P/2]."""
    x, m = 0, 1
    for r, p in zip(residues, primes):
        # x' = x + m * t with t = (r - x)/m mod p
        t = (r - x) % p * pow(m % p, p - 2, p) % p
        x += m * t
        m *= p
    if 2 * x > m:
        x -= m
    return x


def charpoly_int(flat: list[int], n: int, backend=None) -> list[int]:
    """Exact characteristic polynomial det(xI - A), coefficients ascending."""
    impl = backend or BACKEND
    bound = max((abs(e) for e in flat), default=0)
    bits = 2 + math.ceil(n * math.log2(1.0 + math.sqrt(n) * bound)) if bound else 2
    primes: list[int] = []
    have = 0.0
    for p in PRIMES61:
        primes.append(p)
        have += math.log2(p)
        if have > bits + 1:
            break
    else:
        raise InvariantError(f"prime table exhausted at dimension {n}, entry bound {bound}")
    tables = [impl.charpoly_mod(flat, n, p) for p in primes]
    return [_crt([t[k] for t in tables], primes) for k in range(n + 1)]


def gershgorin_radius(flat: list[int], n: int) -> int:
    """Every eigenvalue lies in [-R, R] for both the row and column bound;
    the smaller of the two maxima is still valid."""
    rowmax = max(sum(abs(flat[i * n + j]) for j in range(n)) for i in range(n))
    colmax = max(sum(abs(flat[i * n + j]) for i in range(n)) for j in range(n))
    return min(rowmax, colmax)


def _int_roots_window_mod(cp: list[int], p: int, radius: int) -> list[tuple[int, int]]:
    """Roots of cp mod p among integers in [-radius, radius], with
    multiplicities found by repeated synthetic division mod p."""
    out = []
    work = [c % p for c in cp]
    for c in range(-radius, radius + 1):
        cm = c % p
        # Horner evaluation
        acc = 0
        for coeff in reversed(work):
            acc = (acc * cm + coeff) % p
        if acc:
            continue
        mult = 0
        while len(work) > 1:
            # divide by (x - c): synthetic division, remainder must vanish
            q = [0] * (len(work) - 1)
            carry = 0
            for k in range(len(work) - 1, 0, -1):
                carry = (work[k] + carry * cm) % p
                q[k - 1] = carry
            rem = (work[0] + carry * cm) % p
            if rem:
                break
            work = q
            mult += 1
        if mult:
            out.append((c, mult))
    return out


def _int_roots_exact(cp: list[int], candidates: list[int]) -> tuple[list[tuple[int, int]], list[int]]:
    """Proven integer roots of an exact monic polynomial, plus the deflated
    cofactor (which has no integer roots among the candidates)."""
    out = []
    work = list(cp)
    for c in candidates:
        mult = 0
        while len(work) > 1:
            q = [0] * (len(work) - 1)
            carry = 0
            for k in range(len(work) - 1, 0, -1):
                carry = work[k] + carry * c
                q[k - 1] = carry
            rem = work[0] + carry * c
            if rem:
                break
            work = q
            mult += 1
        if mult:
            out.append((c, mult))
    return out, work


def trace_of(flat: list[int], n: int) -> int:
    return sum(flat[i * n + i] for i in range(n))


def trace_of_square(flat: list[int], n: int) -> int:
    total = 0
    for i in range(n):
        base = i * n
        for j in range(n):
            x = flat[base + j]
            if x:
                total += x * flat[j * n + i]
    return total


def integer_spectrum(flat: list[int], n: int, backend=None) -> tuple[list[tuple[int, int]], bool]:
    """Eigenvalues with algebraic multiplicities, all proven integers.

    Returns (sorted [(value, multiplicity)], exact) where ``exact`` records
    the proof level (True: exact deflation over Z; False: triple-prime
    certificate).  Raises UnsupportedInputError if the spectrum is not
    integral."""
    impl = backend or BACKEND
    if n == 0:
        return [], True
    radius = gershgorin_radius(flat, n)
    if n <= EXACT_DIM_MAX:
        cp = charpoly_int(flat, n, backend=impl)
        # cheap prescan mod one prime narrows the exact divisions
        p0 = PRIMES61[0]
        cand = [c for c, _ in _int_roots_window_mod([x % p0 for x in cp], p0, radius)]
        eigs, cofactor = _int_roots_exact(cp, cand)
        if sum(m for _, m in eigs) != n or cofactor != [1]:
            raise UnsupportedInputError(
                f"matrix has a non-integer eigenvalue (dimension {n}, "
                f"{sum(m for _, m in eigs)} integer roots found)")
        return sorted(eigs), True
    results = []
    for p in CERTIFYING_PRIMES:
        cp_p = impl.charpoly_mod(flat, n, p)
        roots = sorted(_int_roots_window_mod(cp_p, p, radius))
        if sum(m for _, m in roots) != n:
            raise UnsupportedInputError(
                f"characteristic polynomial does not split over the integer "
                f"window mod {p} (dimension {n})")
        results.append(roots)
    if not (results[0] == results[1] == results[2]):
        raise InvariantError("certifying primes disagree on the spectrum")
    eigs = results[0]
    if sum(m * c for c, m in eigs) != trace_of(flat, n):
        raise InvariantError("Newton check failed: eigenvalue sum != trace")
    if sum(m * c * c for c, m in eigs) != trace_of_square(flat, n):
        raise InvariantError("Newton check failed: second power sum != tr(A^2)")
    return eigs, False


def nullity_mod(flat: list[int], n: int, c: int, s: int, p: int, backend=None) -> int:
    """Nullity of (A - cI)^s mod p."""
    impl = backend or BACKEND
    base = list(flat)
    for i in range(n):
        base[i * n + i] -= c
    power = base
    for _ in range(s - 1):
        power = impl.matmul_mod(power, base, n, p)
    return n - impl.rank_mod(power, n, n, p)
