"""Exact arithmetic in the cyclotomic field Q(lam), lam a primitive root of unity.

A field element is the canonical residue of a rational polynomial modulo the
n-th cyclotomic polynomial, stored as a coefficient tuple of length
deg(Phi_n) = phi(n).  Two elements are equal iff their tuples are equal, so
canonical form doubles as an equality test.  Everything is exact: the
coefficient type is `fractions.Fraction` and no floating point appears
anywhere in this package.

The distinguished root `lam` of a :class:`CycField` is x^r where r is the
field's root exponent (coprime to the order).  The default r = 1 picks the
residue class of x itself; other exponents reinterpret which primitive root
"lam" names, which is useful for checking that downstream results do not
depend on the choice.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

Rat = Fraction


class FieldMismatchError(ValueError):
    """Raised when combining elements of cyclotomic fields of different order."""


def _poly_divmod_int(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Quotient and remainder of integer polynomials; division must stay integral."""
    num_l = list(num)
    quot = [0] * max(len(num) - len(den) + 1, 1)
    dlead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num_l[k + len(den) - 1]
        if c % dlead != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // dlead
        quot[k] = q
        if q:
            for i, d in enumerate(den):
                num_l[k + i] -= q * d
    while len(num_l) > 1 and num_l[-1] == 0:
        num_l.pop()
    return tuple(quot), tuple(num_l)


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Ascending coefficients of the n-th cyclotomic polynomial.

    Computed by exact division of x^n - 1 by the cyclotomic polynomials of
    the proper divisors of n.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(3)
    (1, 1, 1)
    >>> cyclotomic_polynomial(9)
    (1, 0, 0, 1, 0, 0, 1)
    """
    if n < 1:
        raise ValueError(f"cyclotomic polynomial needs n >= 1, got {n}")
    poly: tuple[int, ...] = tuple([-1] + [0] * (n - 1) + [1])  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, cyclotomic_polynomial(d))
            assert rem == (0,)
    return poly


@functools.lru_cache(maxsize=None)
def _degree(order: int) -> int:
    return len(cyclotomic_polynomial(order)) - 1


@functools.lru_cache(maxsize=None)
def _power_residues(order: int) -> tuple[tuple[int, ...], ...]:
    """Residues of x^k mod Phi_order for 0 <= k <= max(2*deg-2, order-1)."""
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    top = max(2 * deg - 2, order - 1)
    rows: list[tuple[int, ...]] = []
    for k in range(deg):
        rows.append(tuple(1 if i == k else 0 for i in range(deg)))
    cur = list(rows[deg - 1]) if deg > 0 else []
    for _ in range(deg, top + 1):
        lead = cur[-1]
        cur = [0] + cur[:-1]
        if lead:
            for i in range(deg):
                cur[i] -= lead * phi[i]
        rows.append(tuple(cur))
    return tuple(rows)


class CycNum:
    """An element of Q[x]/(Phi_order), in canonical reduced form."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: tuple[Fraction, ...]):
        self.order = order
        self.coeffs = coeffs

    @staticmethod
    def from_rational(order: int, value) -> "CycNum":
        deg = _degree(order)
        c = [Fraction(0)] * deg
        c[0] = Fraction(value)
        return CycNum(order, tuple(c))

    def _check(self, other: "CycNum") -> None:
        if self.order != other.order:
            raise FieldMismatchError(
                f"cyclotomic orders differ: {self.order} vs {other.order}")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: "CycNum") -> "CycNum":
        self._check(other)
        return CycNum(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycNum") -> "CycNum":
        self._check(other)
        return CycNum(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycNum":
        return CycNum(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> "CycNum":
        if isinstance(other, (int, Fraction)):
            return CycNum(self.order, tuple(a * other for a in self.coeffs))
        self._check(other)
        a, b = self.coeffs, other.coeffs
        deg = len(a)
        conv = [Fraction(0)] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = list(conv[:deg])
        rows = _power_residues(self.order)
        for k in range(deg, 2 * deg - 1):
            ck = conv[k]
            if ck:
                row = rows[k]
                for i in range(deg):
                    if row[i]:
                        out[i] += ck * row[i]
        return CycNum(self.order, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        """Multiplicative inverse, by the extended Euclidean algorithm mod Phi."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        phi = tuple(Fraction(c) for c in cyclotomic_polynomial(self.order))
        r0, r1 = phi, _trim(self.coeffs)
        s0: tuple[Fraction, ...] = (Fraction(0),)
        s1: tuple[Fraction, ...] = (Fraction(1),)
        while _poly_deg(r1) > 0:
            q, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant: gcd(self, Phi) up to scale
        scale = Fraction(1) / r1[0]
        inv = tuple(c * scale for c in s1)
        deg = len(self.coeffs)
        padded = list(inv) + [Fraction(0)] * (2 * deg)
        out = list(padded[:deg])
        rows = _power_residues(self.order)
        for k in range(deg, len(inv)):
            if padded[k]:
                row = rows[k]
                for i in range(deg):
                    if row[i]:
                        out[i] += padded[k] * row[i]
        return CycNum(self.order, tuple(out))

    def __truediv__(self, other: "CycNum") -> "CycNum":
        return self * other.inverse()

    def __pow__(self, k: int) -> "CycNum":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = CycNum.from_rational(self.order, 1)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"CycNum({self.order}, {self.coeffs!r})"


def _trim(coeffs) -> tuple[Fraction, ...]:
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_deg(p: tuple[Fraction, ...]) -> int:
    return len(_trim(p)) - 1 if any(p) else -1


def _poly_sub(a, b) -> tuple[Fraction, ...]:
    n = max(len(a), len(b))
    a = tuple(a) + (Fraction(0),) * (n - len(a))
    b = tuple(b) + (Fraction(0),) * (n - len(b))
    return _trim(x - y for x, y in zip(a, b))


def _poly_mul(a, b) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def _poly_divmod_frac(num, den):
    num_l = list(num)
    dlead = den[-1]
    qlen = max(len(num) - len(den) + 1, 1)
    quot = [Fraction(0)] * qlen
    for k in range(len(num) - len(den), -1, -1):
        c = num_l[k + len(den) - 1]
        if c:
            q = c / dlead
            quot[k] = q
            for i, d in enumerate(den):
                num_l[k + i] -= q * d
    return _trim(quot), _trim(num_l)


@dataclass(frozen=True)
class CycField:
    """The field Q(lam) with lam := x^root_exponent mod Phi_ell, ell odd > 1."""

    ell: int
    root_exponent: int = 1

    def __post_init__(self):
        if self.ell < 3 or self.ell % 2 == 0:
            raise ValueError(f"order must be odd and >= 3, got {self.ell}")
        if math.gcd(self.root_exponent % self.ell, self.ell) != 1:
            raise ValueError(
                f"root exponent {self.root_exponent} not coprime to {self.ell}")

    @property
    def degree(self) -> int:
        return _degree(self.ell)

    def zero(self) -> CycNum:
        return CycNum.from_rational(self.ell, 0)

    def one(self) -> CycNum:
        return CycNum.from_rational(self.ell, 1)

    def rational(self, value) -> CycNum:
        return CycNum.from_rational(self.ell, value)

    def lam(self) -> CycNum:
        return self.lambda_pow(1)

    def lambda_pow(self, k: int) -> CycNum:
        """lam^k = x^(root_exponent * k mod ell), for any integer k."""
        return _lambda_pow_cached(self.ell, (self.root_exponent * k) % self.ell)


@functools.lru_cache(maxsize=None)
def _lambda_pow_cached(order: int, e: int) -> CycNum:
    rows = _power_residues(order)
    return CycNum(order, tuple(Fraction(c) for c in rows[e]))
