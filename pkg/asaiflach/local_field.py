# -*- coding: utf-8 -*-
import logging
import math

from fractions import Fraction
from functools import lru_cache

from sympy import isprime, legendre_symbol

from asaiflach.scalar_tower import CycloScalar, SqrtScalar, cyclo_sum, to_fraction

logger = logging


class LocalFieldDesc(object):
    """ Q_l (degree 1) or its unramified quadratic extension E = Q_l + Q_l*delta
        (degree 2), where delta^2 = P + Q*delta with delta a unit.

        For odd l, delta^2 is the smallest positive non-residue mod l, for
        l = 2 the generator satisfies delta^2 + delta + 1 = 0.
    """
    __slots__ = ("prime", "degree", "q", "P", "Q")

    def __init__(self, prime, degree=1):
        if not isprime(prime):
            raise ValueError("%s is not a prime" % prime)
        if degree not in (1, 2):
            raise ValueError("only degree 1 and 2 (unramified) are supported")
        self.prime = prime
        self.degree = degree
        self.q = prime ** degree
        if degree == 1:
            self.P, self.Q = 0, 0
        elif prime == 2:
            self.P, self.Q = -1, -1
        else:
            self.P = next(d for d in range(2, prime) if legendre_symbol(d, prime) == -1)
            self.Q = 0

    def __eq__(self, other):
        if not isinstance(other, LocalFieldDesc):
            return NotImplemented
        return self.prime == other.prime and self.degree == other.degree

    def __hash__(self):
        return hash((self.prime, self.degree))

    def __repr__(self):
        return "LocalFieldDesc(%d, %d)" % (self.prime, self.degree)

    def __str__(self):
        if self.degree == 1:
            return "Q_%d" % self.prime
        return "Q_%d(delta), delta^2 = %s" % (self.prime, FieldElt(self, self.P, self.Q))

    def elt(self, x, y=0):
        return FieldElt(self, x, y)

    @property
    def zero(self):
        return FieldElt(self, 0)

    @property
    def one(self):
        return FieldElt(self, 1)

    @property
    def delta(self):
        if self.degree == 1:
            raise ValueError("Q_%d has no delta" % self.prime)
        return FieldElt(self, 0, 1)

    @property
    def theta(self):
        """ the trace-zero unit used to build the additive character of E """
        if self.prime == 2:
            return FieldElt(self, 1, 2)
        return self.delta


@lru_cache(maxsize=None)
def field_for(prime, degree=1):
    return LocalFieldDesc(prime, degree)


def rational_valuation(r, prime):
    r = to_fraction(r)
    if r == 0:
        return math.inf
    v = 0
    num, den = r.numerator, r.denominator
    while num % prime == 0:
        num //= prime
        v += 1
    while den % prime == 0:
        den //= prime
        v -= 1
    return v


def rational_mod(r, prime, n):
    """ the canonical representative c/l^E (0 <= c < l^(n+E)) of r + l^n Z_l """
    r = to_fraction(r)
    v = rational_valuation(r, prime)
    if v >= n:
        return Fraction(0)
    e = max(0, -v)
    modulus = prime ** (n + e)
    scaled = r * Fraction(prime) ** e
    num, den = scaled.numerator, scaled.denominator
    c = num * pow(den, -1, modulus) % modulus
    return Fraction(c, prime ** e)


def e_ell(r, prime):
    """ (k, N) with e_l(r) = exp(2 pi i k / l^N) """
    r = to_fraction(r)
    v = rational_valuation(r, prime)
    if v >= 0:
        return 0, 0
    level = -v
    modulus = prime ** level
    scaled = r * modulus
    k = scaled.numerator * pow(scaled.denominator, -1, modulus) % modulus
    return k, level


class FieldElt(object):
    """ x + y*delta with exact rational coordinates """
    __slots__ = ("field", "x", "y")

    def __init__(self, field, x, y=0):
        self.field = field
        self.x = to_fraction(x)
        self.y = to_fraction(y)
        if field.degree == 1 and self.y:
            raise ValueError("Q_%d elements have no delta part" % field.prime)

    def _other(self, other):
        if isinstance(other, FieldElt):
            if other.field != self.field:
                raise ValueError("mixing %r and %r" % (self.field, other.field))
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElt(self.field, other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return FieldElt(self.field, self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __neg__(self):
        return FieldElt(self.field, -self.x, -self.y)

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return FieldElt(self.field, self.x - other.x, self.y - other.y)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        P, Q = self.field.P, self.field.Q
        yy = self.y * other.y
        return FieldElt(self.field,
                        self.x * other.x + P * yy,
                        self.x * other.y + other.x * self.y + Q * yy)

    __rmul__ = __mul__

    def norm(self):
        return self.x * self.x + self.field.Q * self.x * self.y - self.field.P * self.y * self.y

    def conj(self):
        return FieldElt(self.field, self.x + self.field.Q * self.y, -self.y)

    def trace(self):
        return 2 * self.x + self.field.Q * self.y

    def inverse(self):
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return FieldElt(self.field, c.x / norm, c.y / norm)

    def __truediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FieldElt(self.field, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if not self.y:
            return hash(self.x)
        return hash((self.x, self.y))

    def __bool__(self):
        return bool(self.x) or bool(self.y)

    def valuation(self):
        prime = self.field.prime
        return min(rational_valuation(self.x, prime), rational_valuation(self.y, prime))

    def absolute(self):
        v = self.valuation()
        if v == math.inf:
            return Fraction(0)
        return Fraction(self.field.prime) ** (-self.field.degree * v)

    def is_integral(self):
        return self.valuation() >= 0

    def is_unit(self):
        return self.valuation() == 0

    def is_rational(self):
        return not self.y

    def to_fraction(self):
        if self.y:
            raise ValueError("%s is not in Q_%d" % (self, self.field.prime))
        return self.x

    def __repr__(self):
        return "FieldElt(%s)" % self

    def __str__(self):
        if not self.y:
            return str(self.x)
        if not self.x:
            return "%s*delta" % self.y
        return "%s + %s*delta" % (self.x, self.y)


def coerce(field, value):
    if isinstance(value, FieldElt):
        return value
    return FieldElt(field, value)


def canonical_mod(z, n):
    """ canonical representative of z + l^n O """
    prime = z.field.prime
    return FieldElt(z.field, rational_mod(z.x, prime, n), rational_mod(z.y, prime, n))


def char_exponent(field, z, sign=1):
    """ (k, N) with Psi(sign*z) = exp(2 pi i k / l^N) """
    z = coerce(field, z)
    if field.degree == 1:
        return e_ell(sign * z.x, field.prime)
    return e_ell(sign * (z / field.theta).trace(), field.prime)


def additive_char(field, z, sign=1):
    """ Psi(sign*z): e_l on Q_l, e_l(tr(theta^-1 z)) on E; trivial on the integers """
    k, level = char_exponent(field, z, sign)
    return CycloScalar.root_of_unity(field.prime, level, k)


def character_sum(field, phases):
    """ sum of the roots of unity given as (k, N) exponent pairs """
    phases = list(phases)
    top = max([level for _, level in phases] or [0])
    prime = field.prime
    return cyclo_sum(prime ** top, [k * prime ** (top - level) for k, level in phases], prime)


def coset_reps(field, n):
    """ representatives of O/l^n O, delta coordinate outermost """
    modulus = field.prime ** n
    if field.degree == 1:
        return [FieldElt(field, x) for x in range(modulus)]
    return [FieldElt(field, x, y) for y in range(modulus) for x in range(modulus)]


def unit_reps(field, n):
    return [u for u in coset_reps(field, n) if u.is_unit()]


def unit_shell_integral(field, k):
    """ average of Psi(u/l^k) over the units of O """
    if k <= 0:
        return SqrtScalar(1, 0, field.prime)
    if k == 1:
        return SqrtScalar(Fraction(-1, field.q - 1), 0, field.prime)
    return SqrtScalar(0, 0, field.prime)


def unit_shell_average(field, k):
    """ the same average as unit_shell_integral, summed over (O/l^k)^x """
    n = max(k, 1)
    units = unit_reps(field, n)
    scale = Fraction(1, field.prime ** k) if k > 0 else Fraction(field.prime ** -k)
    total = CycloScalar.base(field.prime, 0)
    for u in units:
        total = total + additive_char(field, u * scale)
    return total / len(units)


class Mat2(object):
    """ (a, b; c, d) over a LocalFieldDesc, acting on row vectors from the right """
    __slots__ = ("field", "a", "b", "c", "d")

    def __init__(self, field, a, b, c, d):
        self.field = field
        self.a, self.b, self.c, self.d = (coerce(field, e) for e in (a, b, c, d))

    @classmethod
    def identity(cls, field):
        return cls(field, 1, 0, 0, 1)

    @classmethod
    def diag(cls, field, a, d):
        return cls(field, a, 0, 0, d)

    @classmethod
    def unipotent(cls, field, b):
        return cls(field, 1, b, 0, 1)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(self.field,
                    self.a * other.a + self.b * other.c,
                    self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c,
                    self.c * other.b + self.d * other.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def inverse(self):
        det = self.det()
        if not det:
            raise ZeroDivisionError("singular matrix %s" % self)
        return Mat2(self.field, self.d / det, -self.b / det, -self.c / det, self.a / det)

    def scale(self, factor):
        return Mat2(self.field, *(factor * e for e in self.entries()))

    def min_valuation(self):
        return min(e.valuation() for e in self.entries())

    def is_integral(self):
        return self.min_valuation() >= 0

    def apply_row(self, x, y):
        """ the row vector (x, y) times the matrix """
        return (x * self.a + y * self.c, x * self.b + y * self.d)

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.entries() == other.entries()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return "Mat2(%s)" % self

    def __str__(self):
        return "(%s, %s; %s, %s)" % self.entries()
