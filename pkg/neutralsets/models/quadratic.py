"""
Exact arithmetic in the real quadratic field Q(sqrt(d)).
"""

from fractions import Fraction
from functools import total_ordering
from math import isqrt

import mpmath

from neutralsets.errors import InputError


def _is_square_free(n):
    if n < 1:
        return False
    for f in range(2, isqrt(n) + 1):
        if n % (f * f) == 0:
            return False
    return True


def _sign(x):
    return (x > 0) - (x < 0)


@total_ordering
class QuadraticReal:
    """The real number p + q*sqrt(d) with rational p, q.

    ``d = 1`` is the pure-rational mode: q is folded into p so that the
    representation stays canonical.
    """

    __slots__ = ('_p', '_q', '_d')

    def __init__(self, p, q=0, d=1):
        p = Fraction(p)
        q = Fraction(q)
        if d == 1:
            p, q = p + q, Fraction(0)
        self._p = p
        self._q = q
        self._d = d

    @property
    def p(self):
        return self._p

    @property
    def q(self):
        return self._q

    @property
    def d(self):
        return self._d

    def __repr__(self):
        return f"QuadraticReal({self._p}, {self._q}, d={self._d})"

    def __str__(self):
        if self._q == 0:
            return str(self._p)
        if self._p == 0:
            return f"{self._q}√{self._d}"
        return f"{self._p}{'+' if self._q > 0 else '-'}{abs(self._q)}√{self._d}"

    def _field_pair(self, other):
        """Both operands in one field, or (None, None) for unsupported types."""
        if isinstance(other, (int, Fraction)):
            return self, QuadraticReal(other, 0, self._d)
        if not isinstance(other, QuadraticReal):
            return None, None
        if other._d == self._d:
            return self, other
        # a rational value lifts into any field
        if other._q == 0:
            return self, QuadraticReal(other._p, 0, self._d)
        if self._q == 0:
            return QuadraticReal(self._p, 0, other._d), other
        raise ValueError(f"Cannot mix Q(√{self._d}) and Q(√{other._d})")

    def sign(self):
        """Exact sign, decided from the signs of p, q and p^2 against q^2 d."""
        sp, sq = _sign(self._p), _sign(self._q)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare magnitudes |p| and |q| sqrt(d)
        return sp * _sign(self._p * self._p - self._q * self._q * self._d)

    def is_zero(self):
        return self._p == 0 and self._q == 0

    def __eq__(self, other):
        a, b = self._field_pair(other)
        if a is None:
            return NotImplemented
        return a._p == b._p and a._q == b._q

    def __hash__(self):
        if self._q == 0:
            return hash(self._p)
        return hash((self._p, self._q, self._d))

    def __lt__(self, other):
        a, b = self._field_pair(other)
        if a is None:
            return NotImplemented
        return (a - b).sign() < 0

    def __add__(self, other):
        a, b = self._field_pair(other)
        if a is None:
            return NotImplemented
        return QuadraticReal(a._p + b._p, a._q + b._q, a._d)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return QuadraticReal(-self._p, -self._q, self._d)

    def __sub__(self, other):
        a, b = self._field_pair(other)
        if a is None:
            return NotImplemented
        return QuadraticReal(a._p - b._p, a._q - b._q, a._d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._field_pair(other)
        if a is None:
            return NotImplemented
        return QuadraticReal(
            a._p * b._p + a._q * b._q * a._d,
            a._p * b._q + a._q * b._p,
            a._d,
        )

    def __rmul__(self, other):
        return self * other

    def conjugate(self):
        return QuadraticReal(self._p, -self._q, self._d)

    def norm(self):
        return self._p * self._p - self._q * self._q * self._d

    def __truediv__(self, other):
        a, b = self._field_pair(other)
        if a is None:
            return NotImplemented
        if b.is_zero():
            raise ZeroDivisionError("division by zero in a quadratic field")
        n = b.norm()
        c = b.conjugate()
        num = a * c
        return QuadraticReal(num._p / n, num._q / n, a._d)

    def __rtruediv__(self, other):
        a, b = self._field_pair(other)
        if a is None:
            return NotImplemented
        return b / a

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.to_mpf(20))

    def to_mpf(self, digits=30):
        with mpmath.workdps(digits + 10):
            value = mpmath.mpf(self._p.numerator) / self._p.denominator
            if self._q:
                value += (mpmath.mpf(self._q.numerator) / self._q.denominator) * mpmath.sqrt(self._d)
            return +value

    def to_decimal(self, digits=30):
        with mpmath.workdps(digits + 10):
            return mpmath.nstr(self.to_mpf(digits), digits)

    def to_dict(self):
        return {
            'p': str(self._p),
            'q': str(self._q),
            'd': self._d,
            'decimal': self.to_decimal(),
        }


class QuadraticField:
    """Arithmetic context fixing the square-free radicand d."""

    def __init__(self, d):
        if not isinstance(d, int) or not _is_square_free(d):
            raise InputError(f"Radicand must be a square-free positive integer, got {d!r}")
        self.d = d

    def __repr__(self):
        return f"QuadraticField({self.d})"

    def __call__(self, p, q=0):
        return QuadraticReal(p, q, self.d)

    @property
    def sqrt_d(self):
        return QuadraticReal(0, 1, self.d)

    def parse(self, data):
        """Parse ``{"p": "...", "q": "..."}`` or a plain rational string/number."""
        try:
            if isinstance(data, dict):
                return self(Fraction(str(data.get('p', '0'))), Fraction(str(data.get('q', '0'))))
            return self(Fraction(str(data)))
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"Malformed quadratic number {data!r}: {e}")


def golden_alpha():
    """alpha = (3 - sqrt(5)) / 2, which satisfies 0 < alpha < 1/2."""
    return QuadraticReal(Fraction(3, 2), Fraction(-1, 2), 5)
