"""Sparse exact power series in q, q^(1/2) allowed, with a hard order contract.

A QSeries stores finitely many (exponent, coefficient) pairs with rational
exponents whose denominators divide 2, plus an ``order`` N: coefficients at
exponents < N are exact, nothing is claimed at or beyond N.  Asking a
question that needs coefficients >= N raises PrecisionError instead of
answering wrong.  BiSeries adds a non-negative integer x-grading on top of
the q-grading, MuPoly is a dense polynomial in a nilpotent marker mu.

All coefficients are fractions.Fraction; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import DomainError, PrecisionError

Rat = Union[int, Fraction]


def as_frac(x: Rat) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise DomainError(f"expected an exact rational, got {type(x).__name__}")


def rat_str(r: Fraction) -> str:
    """Coefficient rendering: denominator always shown ('1/1', '-3/2')."""
    r = as_frac(r)
    return f"{r.numerator}/{r.denominator}"


def exp_str(r: Fraction) -> str:
    """Exponent rendering: integers bare, halves as 'n/2'."""
    r = as_frac(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def _check_exponent(e: Fraction) -> None:
    if e.denominator not in (1, 2):
        raise DomainError(f"exponent {e} has denominator {e.denominator}; only 1 or 2 allowed")


class QSeries:
    """Truncated sparse series sum c_e q^e, exact below ``order``."""

    __slots__ = ("terms", "order")

    def __init__(self, terms: Mapping[Rat, Rat] | Iterable[tuple[Rat, Rat]] = (), order: Rat = 0):
        order = as_frac(order)
        canon: dict[Fraction, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = as_frac(e)
            c = as_frac(c)
            _check_exponent(e)
            if e >= order:
                raise DomainError(f"term q^{e} at or beyond order {order}")
            if c:
                canon[e] = canon.get(e, Fraction(0)) + c
                if not canon[e]:
                    del canon[e]
        self.terms = canon
        self.order = order

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, order: Rat) -> "QSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: Rat) -> "QSeries":
        return cls.monomial(0, 1, order)

    @classmethod
    def monomial(cls, exponent: Rat, coeff: Rat, order: Rat) -> "QSeries":
        exponent = as_frac(exponent)
        order = as_frac(order)
        if exponent >= order:
            # a monomial past the window is just the zero series at that order
            return cls((), order)
        return cls({exponent: coeff}, order)

    # -- introspection -------------------------------------------------
    def items(self) -> list[tuple[Fraction, Fraction]]:
        return sorted(self.terms.items())

    def coeff(self, exponent: Rat) -> Fraction:
        e = as_frac(exponent)
        if e >= self.order:
            raise PrecisionError(f"coefficient of q^{e} not determined at order {self.order}")
        return self.terms.get(e, Fraction(0))

    def min_exponent(self) -> Fraction:
        """Smallest stored exponent; 0 for the zero series."""
        return min(self.terms) if self.terms else Fraction(0)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            parts = []
            for e, c in self.items():
                mono = "1" if e == 0 else ("q" if e == 1 else f"q^{exp_str(e)}")
                if e != 0 and c == 1:
                    parts.append(mono)
                elif e != 0 and c == -1:
                    parts.append(f"-{mono}")
                elif e == 0:
                    parts.append(str(c))
                else:
                    parts.append(f"{c}*{mono}")
            body = " + ".join(parts).replace("+ -", "- ")
        return f"<{body} + O(q^{exp_str(self.order)})>"

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        order = min(self.order, other.order)
        out = {e: c for e, c in self.terms.items() if e < order}
        for e, c in other.terms.items():
            if e < order:
                s = out.get(e, Fraction(0)) + c
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return QSeries(out, order)

    def __neg__(self) -> "QSeries":
        return QSeries({e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Rat) -> "QSeries":
        f = as_frac(factor)
        if not f:
            return QSeries.zero(self.order)
        return QSeries({e: c * f for e, c in self.terms.items()}, self.order)

    def __mul__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        # Laurent-safe order: a term of the partner at negative exponent m
        # drags products from beyond our window down below it.
        ma = min(self.min_exponent(), Fraction(0))
        mb = min(other.min_exponent(), Fraction(0))
        order = min(self.order, other.order, self.order + mb, other.order + ma)
        out: dict[Fraction, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = ea + eb
                if e < order:
                    s = out.get(e, Fraction(0)) + ca * cb
                    if s:
                        out[e] = s
                    elif e in out:
                        del out[e]
        return QSeries(out, order)

    def __pow__(self, n: int) -> "QSeries":
        if not isinstance(n, int) or n < 0:
            raise DomainError("series powers take non-negative integer exponents")
        result = QSeries.one(self.order)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, exponent: Rat) -> "QSeries":
        """Multiply by q^exponent; order shifts along."""
        d = as_frac(exponent)
        _check_exponent(d)
        return QSeries({e + d: c for e, c in self.terms.items()}, self.order + d)

    def truncate(self, order: Rat) -> "QSeries":
        order = as_frac(order)
        if order > self.order:
            raise PrecisionError(f"cannot extend order {self.order} to {order}")
        return QSeries({e: c for e, c in self.terms.items() if e < order}, order)

    def substitute_power(self, l: int) -> "QSeries":
        """q -> q^l (l >= 1): exponents and order scale by l."""
        if l < 1:
            raise DomainError("substitution power must be >= 1")
        return QSeries({e * l: c for e, c in self.terms.items()}, self.order * l)

    # -- serialization -------------------------------------------------
    def to_obj(self) -> dict:
        return {
            "variable": "q",
            "order": exp_str(self.order),
            "terms": [[exp_str(e), rat_str(c)] for e, c in self.items()],
        }


def series_eq(a: QSeries, b: QSeries, order: Rat) -> bool:
    """Exact term-by-term equality below ``order``.

    Raises PrecisionError when either operand is not valid that far; a
    truncated series never silently passes for a longer one.
    """
    order = as_frac(order)
    if order > a.order or order > b.order:
        raise PrecisionError(
            f"equality to order {order} needs orders >= {order}; "
            f"have {a.order} and {b.order}"
        )
    for e, c in a.terms.items():
        if e < order and b.terms.get(e, Fraction(0)) != c:
            return False
    for e, c in b.terms.items():
        if e < order and a.terms.get(e, Fraction(0)) != c:
            return False
    return True


def series_diff_witness(a: QSeries, b: QSeries, order: Rat) -> tuple[Fraction, Fraction, Fraction] | None:
    """First differing exponent below order, with both coefficients; None if equal."""
    order = as_frac(order)
    if order > a.order or order > b.order:
        raise PrecisionError("witness search past guaranteed order")
    exps = sorted(set(a.terms) | set(b.terms))
    for e in exps:
        if e >= order:
            break
        ca = a.terms.get(e, Fraction(0))
        cb = b.terms.get(e, Fraction(0))
        if ca != cb:
            return (e, ca, cb)
    return None


def geometric(step: Rat, order: Rat) -> QSeries:
    """1/(1 - q^step) expanded to ``order``; step must be positive."""
    step = as_frac(step)
    order = as_frac(order)
    if step <= 0:
        raise DomainError("geometric series needs a positive exponent step")
    _check_exponent(step)
    terms = {}
    e = Fraction(0)
    while e < order:
        terms[e] = Fraction(1)
        e += step
    return QSeries(terms, order)


class BiSeries:
    """Series in q (denominators dividing 2) and x (non-negative integers).

    The order contract applies to the q-grading only: exact at every
    bidegree (e, k) with e < q_order.  x-degrees are unbounded but finite.
    """

    __slots__ = ("terms", "q_order")

    def __init__(self, terms: Mapping[tuple[Rat, int], Rat] | Iterable[tuple[tuple[Rat, int], Rat]] = (), q_order: Rat = 0):
        q_order = as_frac(q_order)
        canon: dict[tuple[Fraction, int], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (e, k), c in items:
            e = as_frac(e)
            c = as_frac(c)
            _check_exponent(e)
            if not isinstance(k, int) or k < 0:
                raise DomainError(f"x-exponent must be a non-negative integer, got {k}")
            if e >= q_order:
                raise DomainError(f"term q^{e} at or beyond q-order {q_order}")
            if c:
                key = (e, k)
                s = canon.get(key, Fraction(0)) + c
                if s:
                    canon[key] = s
                elif key in canon:
                    del canon[key]
        self.terms = canon
        self.q_order = q_order

    @classmethod
    def zero(cls, q_order: Rat) -> "BiSeries":
        return cls((), q_order)

    def items(self) -> list[tuple[tuple[Fraction, int], Fraction]]:
        return sorted(self.terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.q_order == other.q_order and self.terms == other.terms

    def __hash__(self):
        return hash((self.q_order, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        parts = [f"{rat_str(c)}*q^{exp_str(e)}*x^{k}" for (e, k), c in self.items()]
        return f"<{' + '.join(parts) or '0'} + O(q^{exp_str(self.q_order)})>"

    def __add__(self, other: "BiSeries") -> "BiSeries":
        if not isinstance(other, BiSeries):
            return NotImplemented
        q_order = min(self.q_order, other.q_order)
        out = {key: c for key, c in self.terms.items() if key[0] < q_order}
        for key, c in other.terms.items():
            if key[0] < q_order:
                s = out.get(key, Fraction(0)) + c
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return BiSeries(out, q_order)

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        if not isinstance(other, BiSeries):
            return NotImplemented
        # x-exponents are >= 0, so only the q-grading constrains the order
        ma = min(min((e for e, _ in self.terms), default=Fraction(0)), Fraction(0))
        mb = min(min((e for e, _ in other.terms), default=Fraction(0)), Fraction(0))
        q_order = min(self.q_order, other.q_order, self.q_order + mb, other.q_order + ma)
        out: dict[tuple[Fraction, int], Fraction] = {}
        for (ea, ka), ca in self.terms.items():
            for (eb, kb), cb in other.terms.items():
                e = ea + eb
                if e < q_order:
                    key = (e, ka + kb)
                    s = out.get(key, Fraction(0)) + ca * cb
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
        return BiSeries(out, q_order)

    def at_x_one(self) -> QSeries:
        """Forget the x-grading (set x = 1)."""
        out: dict[Fraction, Fraction] = {}
        for (e, _k), c in self.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return QSeries(out, self.q_order)

    def to_obj(self) -> dict:
        return {
            "variables": ["q", "x"],
            "q_order": exp_str(self.q_order),
            "terms": [[exp_str(e), str(k), rat_str(c)] for (e, k), c in self.items()],
        }


def biseries_eq(a: BiSeries, b: BiSeries, q_order: Rat) -> bool:
    """Bidegree-exact equality below ``q_order`` in the q-grading."""
    q_order = as_frac(q_order)
    if q_order > a.q_order or q_order > b.q_order:
        raise PrecisionError("bidegree equality requested past guaranteed q-order")
    for key, c in a.terms.items():
        if key[0] < q_order and b.terms.get(key, Fraction(0)) != c:
            return False
    for key, c in b.terms.items():
        if key[0] < q_order and a.terms.get(key, Fraction(0)) != c:
            return False
    return True


class MuPoly:
    """Dense polynomial in the nilpotent marker mu; exact, no truncation."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rat] = ()):
        cs = [as_frac(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: Rat) -> "MuPoly":
        return cls((c,))

    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MuPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "<0>"
        parts = [f"{c}*mu^{k}" if k else str(c) for k, c in enumerate(self.coeffs) if c]
        return f"<{' + '.join(parts)}>"

    def __add__(self, other: "MuPoly") -> "MuPoly":
        if not isinstance(other, MuPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return MuPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    def __neg__(self) -> "MuPoly":
        return MuPoly(-c for c in self.coeffs)

    def __sub__(self, other: "MuPoly") -> "MuPoly":
        if not isinstance(other, MuPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "MuPoly") -> "MuPoly":
        if not isinstance(other, MuPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return MuPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return MuPoly(out)

    def scale(self, factor: Rat) -> "MuPoly":
        f = as_frac(factor)
        return MuPoly(c * f for c in self.coeffs)

    def to_list(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]
