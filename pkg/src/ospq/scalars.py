"""Exact scalars: rational functions in v (v^2 = q) over the Gaussian rationals.

A scalar is stored as ``(re + I*im) / den`` with ``re, im, den`` in Q[v],
``den`` monic and ``gcd(re, im, den) = 1``.  The smallest real denominator of
an element of Q(i)(v) is unique up to a unit, so this form is canonical and
equality is identity of components.  Polynomial arithmetic over Q is done by
FLINT's ``fmpq_poly``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from flint import fmpq, fmpq_poly

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "V",
    "I",
    "vpow",
    "qpow",
    "q_int",
    "q_factorial",
    "q_binomial",
]

_P0 = fmpq_poly([])
_P1 = fmpq_poly([1])


def _is_one(p) -> bool:
    return p.degree() == 0 and p[0] == 1


def _to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    return fmpq(int(x))


class Scalar:
    """Element of Q(i)(v); immutable."""

    __slots__ = ("re", "im", "den", "_hash")

    def __init__(self, re=None, im=None, den=None):
        re = _P0 if re is None else re
        im = _P0 if im is None else im
        den = _P1 if den is None else den
        if not isinstance(re, fmpq_poly):
            re = fmpq_poly([_to_fmpq(re)])
        if not isinstance(im, fmpq_poly):
            im = fmpq_poly([_to_fmpq(im)])
        if not isinstance(den, fmpq_poly):
            den = fmpq_poly([_to_fmpq(den)])
        self.re, self.im, self.den = _canonical(re, im, den)
        self._hash = None

    @classmethod
    def _raw(cls, re, im, den) -> "Scalar":
        obj = object.__new__(cls)
        obj.re, obj.im, obj.den = re, im, den
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, (int, Fraction, fmpq)):
            if x == 0:
                return ZERO
            return cls._raw(fmpq_poly([_to_fmpq(x)]), _P0, _P1)
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact scalars")
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    @classmethod
    def gaussian(cls, a, b) -> "Scalar":
        return cls(fmpq_poly([_to_fmpq(a)]), fmpq_poly([_to_fmpq(b)]))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def is_laurent(self) -> bool:
        """True when the denominator is a power of v."""
        d = self.den
        return d.degree() == 0 or (d[d.degree()] == 1 and all(d[k] == 0 for k in range(d.degree())))

    def is_constant(self) -> bool:
        return self.den.degree() == 0 and self.re.degree() <= 0 and self.im.degree() <= 0

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            if _is_one(d1):
                return _make(self.re + other.re, self.im + other.im, _P1, trusted_den=True)
            return _make(self.re + other.re, self.im + other.im, d1)
        g = d1.gcd(d2)
        if _is_one(g):
            return _make(self.re * d2 + other.re * d1, self.im * d2 + other.im * d1, d1 * d2)
        c1, c2 = d2 // g, d1 // g
        return _make(self.re * c1 + other.re * c2, self.im * c1 + other.im * c2, d1 * c1)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im, self.den)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        a1, b1, d1 = self.re, self.im, self.den
        a2, b2, d2 = other.re, other.im, other.den
        if b1.is_zero() and b2.is_zero():
            re, im = a1 * a2, _P0
        elif b1.is_zero():
            re, im = a1 * a2, a1 * b2
        elif b2.is_zero():
            re, im = a1 * a2, b1 * a2
        else:
            re, im = a1 * a2 - b1 * b2, a1 * b2 + a2 * b1
        if _is_one(d1) and _is_one(d2):
            return _make(re, im, _P1, trusted_den=True)
        return _make(re, im, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        a, b, d = self.re, self.im, self.den
        if b.is_zero():
            return _make(d, _P0, a)
        return _make(d * a, -(d * b), a * a + b * b)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im, self.den)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self.den == other.den and self.re == other.re and self.im == other.im

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.re), str(self.im), str(self.den)))
        return self._hash

    # -- presentation -----------------------------------------------------

    def __str__(self):
        from .parsing import format_scalar

        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def laurent_terms(self) -> list[tuple[int, fmpq, fmpq]]:
        """``[(exponent, real, imag), ...]`` ascending; requires :meth:`is_laurent`."""
        if not self.is_laurent():
            raise ValueError("not a Laurent polynomial")
        shift = self.den.degree()
        out = []
        top = max(self.re.degree(), self.im.degree())
        for k in range(top + 1):
            a = self.re[k] if k <= self.re.degree() else fmpq(0)
            b = self.im[k] if k <= self.im.degree() else fmpq(0)
            if a != 0 or b != 0:
                out.append((k - shift, a, b))
        return out


def _canonical(re, im, den):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if re.is_zero() and im.is_zero():
        return _P0, _P0, _P1
    g = re.gcd(im) if not im.is_zero() else re
    g = g.gcd(den)
    if not _is_one(g):
        re, im, den = re // g, im // g, den // g
    lc = den[den.degree()]
    if lc != 1:
        inv = 1 / lc
        re, im, den = re * inv, im * inv, den * inv
    return re, im, den


def _make(re, im, den, trusted_den: bool = False) -> Scalar:
    if trusted_den:
        if re.is_zero() and im.is_zero():
            return ZERO
        return Scalar._raw(re, im, den)
    return Scalar._raw(*_canonical(re, im, den))


ZERO = Scalar._raw(_P0, _P0, _P1)
ONE = Scalar._raw(_P1, _P0, _P1)
I = Scalar._raw(_P0, _P1, _P1)
V = Scalar._raw(fmpq_poly([0, 1]), _P0, _P1)


@lru_cache(maxsize=None)
def vpow(k: int) -> Scalar:
    """v**k for any integer k."""
    mono = fmpq_poly([0] * abs(k) + [1])
    if k >= 0:
        return Scalar._raw(mono, _P0, _P1)
    return Scalar._raw(_P1, _P0, mono)


def qpow(x) -> Scalar:
    """q**x = v**(2x); ``x`` must be a half-integer."""
    t = Fraction(x) * 2
    if t.denominator != 1:
        raise ValueError(f"q^{x} is not a power of v")
    return vpow(int(t))


def _check_base(base: Scalar):
    if base.is_zero() or base == ONE or base == -ONE:
        raise ValueError("degenerate base for q-number (0 or +-1)")


def q_int(n: int, base: Scalar = V) -> Scalar:
    """[n]_base = (base^n - base^-n) / (base - base^-1)."""
    base = Scalar.coerce(base)
    _check_base(base)
    if n == 0:
        return ZERO
    return (base ** n - base ** (-n)) / (base - base.inverse())


def q_factorial(n: int, base: Scalar = V) -> Scalar:
    """[n]! with [0]! = 1."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    base = Scalar.coerce(base)
    _check_base(base)
    out = ONE
    for k in range(1, n + 1):
        out = out * q_int(k, base)
    return out


def q_binomial(n: int, m: int, base: Scalar = V) -> Scalar:
    """Gaussian binomial [n]! / ([m]! [n-m]!)."""
    if not 0 <= m <= n:
        raise ValueError(f"q-binomial needs 0 <= m <= n, got n={n}, m={m}")
    return q_factorial(n, base) / (q_factorial(m, base) * q_factorial(n - m, base))
