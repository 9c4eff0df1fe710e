# -*- coding: utf-8 -*-
import logging

from collections import namedtuple
from fractions import Fraction
from functools import lru_cache

from sympy import factorint
from sympy.polys.specialpolys import cyclotomic_poly
from sympy.polys.densearith import dup_add, dup_mul, dup_neg, \
    dup_div, dup_rem, dup_quo, dup_mul_ground
from sympy.polys.densebasic import dup_degree, dup_strip
from sympy.polys.densetools import dup_monic
from sympy.polys.euclidtools import dup_invert
from sympy.polys.polyerrors import NotInvertible as ZeroDivisorError

logger = logging


class ScalarError(Exception):
    """ base of the errors raised by the exact scalar arithmetic
    """
    def __init__(self, value):
        self.value = value

    def __str__(self):
        return repr(self.value)


class PoleAtOrigin(ScalarError):
    """ a series expansion was requested for a function with a pole at X=0 """


class PoleAtPoint(ScalarError):
    """ a rational function was evaluated at one of its poles """


class NotInvertible(ScalarError):
    """ the element is a zero divisor of Q(sqrt l)[x]/Phi_{l^n} """


def to_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError("not an exact rational: %r" % (value, ))


class SqrtScalar(object):
    """ An element rat + surd*sqrt(prime) of Q(sqrt(prime)).

        The prime may be left out as long as the surd part is zero.
    """
    __slots__ = ("rat", "surd", "prime")

    def __init__(self, rat=0, surd=0, prime=None):
        self.rat = to_fraction(rat)
        self.surd = to_fraction(surd)
        if self.surd and prime is None:
            raise ValueError("a surd part needs a prime")
        self.prime = prime

    @classmethod
    def coerce(cls, value, prime=None):
        if isinstance(value, SqrtScalar):
            return value
        return SqrtScalar(to_fraction(value), 0, prime)

    def _other(self, other):
        if isinstance(other, SqrtScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return SqrtScalar(other, 0, self.prime)
        return None

    def _prime_with(self, other):
        if self.surd and other.surd and self.prime != other.prime:
            raise ValueError("mixing sqrt(%s) and sqrt(%s)" % (self.prime, other.prime))
        return self.prime if self.prime is not None else other.prime

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return SqrtScalar(self.rat + other.rat, self.surd + other.surd,
                          self._prime_with(other))

    __radd__ = __add__

    def __neg__(self):
        return SqrtScalar(-self.rat, -self.surd, self.prime)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        prime = self._prime_with(other)
        rat = self.rat * other.rat
        if self.surd and other.surd:
            rat += self.surd * other.surd * prime
        surd = self.rat * other.surd + self.surd * other.rat
        return SqrtScalar(rat, surd, prime)

    __rmul__ = __mul__

    def norm(self):
        if not self.surd:
            return self.rat * self.rat
        return self.rat * self.rat - self.prime * self.surd * self.surd

    def conjugate(self):
        return SqrtScalar(self.rat, -self.surd, self.prime)

    def inverse(self):
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return SqrtScalar(self.rat / norm, -self.surd / norm, self.prime)

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
        if not isinstance(exponent, int):
            raise TypeError("integral exponents only")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = SqrtScalar(1, 0, self.prime)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if self.surd and other.surd and self.prime != other.prime:
            return False
        return self.rat == other.rat and self.surd == other.surd

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if not self.surd:
            return hash(self.rat)
        return hash((self.rat, self.surd, self.prime))

    def __bool__(self):
        return bool(self.rat) or bool(self.surd)

    def is_rational(self):
        return not self.surd

    def to_fraction(self):
        if self.surd:
            raise ValueError("%s is not rational" % self)
        return self.rat

    def __repr__(self):
        return "SqrtScalar(%s)" % self

    def __str__(self):
        if not self.surd:
            return str(self.rat)
        if self.surd == 1:
            root = "sqrt(%d)" % self.prime
        elif self.surd == -1:
            root = "-sqrt(%d)" % self.prime
        else:
            root = "%s*sqrt(%d)" % (self.surd, self.prime)
        if not self.rat:
            return root
        if root.startswith("-"):
            return "%s - %s" % (self.rat, root[1:])
        return "%s + %s" % (self.rat, root)


def ell_power(prime, exponent):
    """ prime^exponent for an integral or half-integral exponent """
    exponent = to_fraction(exponent)
    if exponent.denominator == 1:
        return SqrtScalar(Fraction(prime) ** int(exponent), 0, prime)
    if exponent.denominator != 2:
        raise ValueError("only half-integral powers live in Q(sqrt %d)" % prime)
    return SqrtScalar(0, Fraction(prime) ** int(exponent - Fraction(1, 2)), prime)


class ScalarDomain(object):
    """ the ground domain interface the sympy dense routines expect """
    is_Field = True
    is_Exact = True

    def __init__(self, zero, one):
        self.zero = zero
        self.one = one

    def exquo(self, a, b):
        return a / b

    quo = exquo

    def is_one(self, a):
        return a == self.one


@lru_cache(maxsize=None)
def sqrt_domain(prime):
    return ScalarDomain(SqrtScalar(0, 0, prime), SqrtScalar(1, 0, prime))


@lru_cache(maxsize=None)
def cyclo_domain(prime):
    return ScalarDomain(CycloScalar.base(prime, 0), CycloScalar.base(prime, 1))


@lru_cache(maxsize=None)
def cyclotomic_dup(prime, level):
    """ Phi_{prime^level} over SqrtScalar, leading coefficient first """
    coeffs = cyclotomic_poly(prime ** level, polys=True).all_coeffs()
    return [SqrtScalar(int(c), 0, prime) for c in coeffs]


def cyclotomic_degree(prime, level):
    if level == 0:
        return 1
    return prime ** (level - 1) * (prime - 1)


def _reduce_cyclotomic(prime, level, low_first):
    degree = cyclotomic_degree(prime, level)
    coeffs = [SqrtScalar.coerce(c, prime) for c in low_first]
    if len(coeffs) > degree:
        dup = dup_strip(list(reversed(coeffs)))
        dup = dup_rem(dup, cyclotomic_dup(prime, level), sqrt_domain(prime))
        coeffs = list(reversed(dup))
    zero = SqrtScalar(0, 0, prime)
    coeffs = coeffs + [zero] * (degree - len(coeffs))

    # store at the smallest conductor that contains the value
    while level >= 1:
        if level == 1:
            if any(coeffs[1:]):
                break
            coeffs = coeffs[:1]
        else:
            if any(c for i, c in enumerate(coeffs) if i % prime):
                break
            coeffs = coeffs[::prime]
        level -= 1
    return level, tuple(coeffs)


class CycloScalar(object):
    """ An element of Q(sqrt l)[x]/Phi_{l^level}(x), x standing for a primitive
        l^level-th root of unity. Coefficients are kept low degree first.

        For some l the ring is not a field (sqrt l may already lie in the
        cyclotomic field), so inversion can fail with NotInvertible.
    """
    __slots__ = ("prime", "level", "coeffs")

    def __init__(self, prime, level=0, coeffs=None):
        self.prime = prime
        self.level, self.coeffs = _reduce_cyclotomic(prime, level, coeffs or [0])

    @classmethod
    def base(cls, prime, value):
        return cls(prime, 0, [value])

    @classmethod
    def root_of_unity(cls, prime, level, exponent):
        if level == 0:
            return cls.base(prime, 1)
        return _root_of_unity(prime, level, exponent % prime ** level)

    @classmethod
    def coerce(cls, value, prime):
        if isinstance(value, CycloScalar):
            if value.prime != prime:
                raise ValueError("mixing primes %s and %s" % (value.prime, prime))
            return value
        return cls.base(prime, value)

    def _other(self, other):
        if isinstance(other, CycloScalar):
            if other.prime != self.prime:
                raise ValueError("mixing primes %s and %s" % (self.prime, other.prime))
            return other
        if isinstance(other, (SqrtScalar, int, Fraction)):
            return CycloScalar.base(self.prime, other)
        return None

    def lift(self, level):
        if level == self.level:
            return list(self.coeffs)
        if level < self.level:
            raise ValueError("cannot lift from level %d to %d" % (self.level, level))
        # x -> x^(l^(level - self.level)) stays below the degree of Phi_{l^level}
        step = self.prime ** (level - self.level) if self.level else 1
        spread = [SqrtScalar(0, 0, self.prime)] * cyclotomic_degree(self.prime, level)
        for i, c in enumerate(self.coeffs):
            spread[i * step] = c
        return spread

    def _aligned(self, other):
        level = max(self.level, other.level)
        return level, list(self.lift(level)), list(other.lift(level))

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        level, a, b = self._aligned(other)
        return CycloScalar(self.prime, level, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(self.prime, self.level, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if other.level == 0:
            c = other.coeffs[0]
            return CycloScalar(self.prime, self.level, [x * c for x in self.coeffs])
        if self.level == 0:
            c = self.coeffs[0]
            return CycloScalar(self.prime, other.level, [c * x for x in other.coeffs])
        level, a, b = self._aligned(other)
        product = dup_mul(dup_strip(a[::-1]), dup_strip(b[::-1]), sqrt_domain(self.prime))
        return CycloScalar(self.prime, level, product[::-1])

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.level == 0:
            return CycloScalar.base(self.prime, self.coeffs[0].inverse())
        domain = sqrt_domain(self.prime)
        try:
            inverse = dup_invert(dup_strip(list(self.coeffs[::-1])),
                                 cyclotomic_dup(self.prime, self.level), domain)
        except ZeroDivisorError:
            raise NotInvertible(str(self))
        return CycloScalar(self.prime, self.level, inverse[::-1])

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
        result = CycloScalar.base(self.prime, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self.level == other.level and self.coeffs == other.coeffs

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if self.level == 0:
            return hash(self.coeffs[0])
        return hash((self.prime, self.level, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_base(self):
        return self.level == 0

    def to_sqrt(self):
        if self.level:
            raise ValueError("%s does not lie in Q(sqrt %d)" % (self, self.prime))
        return self.coeffs[0]

    def __repr__(self):
        return "CycloScalar(%s)" % self

    def __str__(self):
        if self.level == 0:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            text = str(c)
            if " " in text:
                text = "(%s)" % text
            if i == 0:
                terms.append(text)
                continue
            root = "zeta_%d" % self.prime ** self.level
            if i > 1:
                root = "%s^%d" % (root, i)
            if text == "1":
                terms.append(root)
            elif text == "-1":
                terms.append("-" + root)
            else:
                terms.append("%s*%s" % (text, root))
        return " + ".join(terms).replace("+ -", "- ")


@lru_cache(maxsize=None)
def _root_of_unity(prime, level, exponent):
    coeffs = [0] * (exponent + 1)
    coeffs[exponent] = 1
    return CycloScalar(prime, level, coeffs)


def cyclo_sum(prime_power, exponents, prime=None):
    """ exact value of sum_i zeta_{prime_power}^{a_i} """
    exponents = list(exponents)
    if prime_power == 1:
        if prime is None:
            raise ValueError("conductor 1 needs an explicit prime")
        return CycloScalar.base(prime, len(exponents))
    factors = factorint(prime_power)
    if len(factors) != 1:
        raise ValueError("%d is not a prime power" % prime_power)
    (ell, level), = factors.items()
    counts = [0] * prime_power
    for a in exponents:
        counts[a % prime_power] += 1
    return CycloScalar(ell, level, counts)


Limit = namedtuple("Limit", "value order_a order_b")


def _shift_dup(dup, k, domain):
    if not dup or k == 0:
        return dup
    return dup + [domain.zero] * k


class RatFuncX(object):
    """ X^shift * num(X)/den(X) in X = l^{-s}, with num(0) != 0 and den(0) = 1.

        num and den are kept in the sympy dense form (leading coefficient first)
        over CycloScalar. The common factor is removed whenever all
        coefficients lie in Q(sqrt l).
    """
    __slots__ = ("prime", "shift", "num", "den")

    def __init__(self, prime, num=None, den=None, shift=0):
        self.prime = prime
        domain = cyclo_domain(prime)
        num = [CycloScalar.coerce(c, prime) for c in (num if num is not None else [1])]
        den = [CycloScalar.coerce(c, prime) for c in (den if den is not None else [1])]
        self.shift, self.num, self.den = self._normalize(
            shift, dup_strip(num[::-1]), dup_strip(den[::-1]), domain)

    @classmethod
    def _raw(cls, prime, shift, num, den):
        result = cls.__new__(cls)
        result.prime = prime
        result.shift, result.num, result.den = cls._normalize(
            shift, dup_strip(num), dup_strip(den), cyclo_domain(prime))
        return result

    @staticmethod
    def _normalize(shift, num, den, domain):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return 0, [], [domain.one]
        while not num[-1]:
            num = num[:-1]
            shift += 1
        while not den[-1]:
            den = den[:-1]
            shift -= 1
        if dup_degree(den) > 0 and dup_degree(num) > 0 and \
                all(c.is_base() for c in num + den):
            a, b = num, den
            while b:
                a, b = b, dup_rem(a, b, domain)
            common = dup_monic(a, domain)
            if dup_degree(common) > 0:
                num = dup_quo(num, common, domain)
                den = dup_quo(den, common, domain)
        lowest = den[-1]
        if lowest != domain.one:
            inverse = domain.one / lowest
            num = dup_mul_ground(num, inverse, domain)
            den = dup_mul_ground(den, inverse, domain)
        return shift, num, den

    @classmethod
    def constant(cls, prime, value):
        return cls(prime, [value])

    @classmethod
    def monomial(cls, prime, coeff, exponent):
        return cls(prime, [coeff], shift=exponent)

    @classmethod
    def variable(cls, prime):
        return cls.monomial(prime, 1, 1)

    @classmethod
    def polynomial(cls, prime, low_first):
        return cls(prime, list(low_first))

    def _other(self, other):
        if isinstance(other, RatFuncX):
            if other.prime != self.prime:
                raise ValueError("mixing primes %s and %s" % (self.prime, other.prime))
            return other
        if isinstance(other, (CycloScalar, SqrtScalar, int, Fraction)):
            return RatFuncX.constant(self.prime, other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        domain = cyclo_domain(self.prime)
        shift = min(self.shift, other.shift)
        left = _shift_dup(dup_mul(self.num, other.den, domain), self.shift - shift, domain)
        right = _shift_dup(dup_mul(other.num, self.den, domain), other.shift - shift, domain)
        return RatFuncX._raw(self.prime, shift, dup_add(left, right, domain),
                             dup_mul(self.den, other.den, domain))

    __radd__ = __add__

    def __neg__(self):
        return RatFuncX._raw(self.prime, self.shift, dup_neg(self.num, cyclo_domain(self.prime)),
                             self.den)

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        domain = cyclo_domain(self.prime)
        return RatFuncX._raw(self.prime, self.shift + other.shift,
                             dup_mul(self.num, other.num, domain),
                             dup_mul(self.den, other.den, domain))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of the zero function")
        return RatFuncX._raw(self.prime, -self.shift, self.den, self.num)

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
        result = RatFuncX.constant(self.prime, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return not self.num and not other.num
        domain = cyclo_domain(self.prime)
        return self.shift == other.shift and \
            dup_mul(self.num, other.den, domain) == dup_mul(other.num, self.den, domain)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __bool__(self):
        return bool(self.num)

    def numerator_coeffs(self):
        return list(self.num[::-1])

    def denominator_coeffs(self):
        return list(self.den[::-1])

    def is_polynomial(self):
        return len(self.den) == 1 and self.shift >= 0

    def coefficients(self):
        """ low-first coefficients of a polynomial """
        if not self.is_polynomial():
            raise ValueError("%s is not a polynomial" % self)
        zero = CycloScalar.base(self.prime, 0)
        return [zero] * self.shift + self.numerator_coeffs()

    def scale(self, factor):
        """ X -> factor*X """
        factor = CycloScalar.coerce(factor, self.prime)
        num = [c * factor ** i for i, c in enumerate(self.num[::-1])]
        den = [c * factor ** i for i, c in enumerate(self.den[::-1])]
        return RatFuncX(self.prime, num, den) * factor ** self.shift * \
            RatFuncX.monomial(self.prime, 1, self.shift)

    def _series(self, length):
        num = self.numerator_coeffs()
        den = self.denominator_coeffs()
        zero = CycloScalar.base(self.prime, 0)
        out = []
        for k in range(length):
            c = num[k] if k < len(num) else zero
            for i in range(1, min(k, len(den) - 1) + 1):
                c = c - den[i] * out[k - i]
            out.append(c)
        return out

    def series_expand(self, order):
        if self.shift < 0:
            raise PoleAtOrigin(str(self))
        zero = CycloScalar.base(self.prime, 0)
        if not self.num:
            return [zero] * (order + 1)
        body = self._series(max(0, order + 1 - self.shift))
        return ([zero] * self.shift + body)[:order + 1]

    def laurent_expand(self, order):
        """ (first exponent, coefficients up to X^order) """
        start = min(self.shift, 0)
        if not self.num:
            return start, [CycloScalar.base(self.prime, 0)] * (order + 1 - start)
        body = self._series(max(0, order + 1 - self.shift))
        zero = CycloScalar.base(self.prime, 0)
        coeffs = [zero] * (self.shift - start) + body
        return start, coeffs[:order + 1 - start]

    def _horner(self, dup, x0):
        value = CycloScalar.base(self.prime, 0)
        for c in dup:
            value = value * x0 + c
        return value

    def eval_at(self, x0):
        x0 = CycloScalar.coerce(x0, self.prime)
        if not self.num:
            return CycloScalar.base(self.prime, 0)
        den = self._horner(self.den, x0)
        if not den or (self.shift < 0 and not x0):
            raise PoleAtPoint("%s at X = %s" % (self, x0))
        return self._horner(self.num, x0) / den * x0 ** self.shift

    def order_at(self, x0):
        """ zero order (negative for poles) at x0, None for the zero function """
        if not self.num:
            return None
        x0 = CycloScalar.coerce(x0, self.prime)
        if not x0:
            return self.shift
        domain = cyclo_domain(self.prime)
        linear = [domain.one, -x0]

        def multiplicity(dup):
            count = 0
            while dup_degree(dup) > 0:
                quotient, remainder = dup_div(dup, linear, domain)
                if remainder:
                    break
                dup = quotient
                count += 1
            return count

        return multiplicity(self.num) - multiplicity(self.den)

    def __repr__(self):
        return "RatFuncX(%s)" % self

    def __str__(self):
        if not self.num:
            return "0"
        if len(self.den) == 1:
            return _format_poly(self.numerator_coeffs(), self.shift)
        num = _format_poly(self.numerator_coeffs(), self.shift)
        if " " in num:
            num = "(%s)" % num
        return "%s/(%s)" % (num, _format_poly(self.denominator_coeffs(), 0))


def _format_poly(low_first, shift):
    terms = []
    for i, c in enumerate(low_first):
        if not c:
            continue
        exponent = i + shift
        text = str(c)
        if exponent == 0:
            terms.append(text)
            continue
        power = "X" if exponent == 1 else "X^%d" % exponent
        if text == "1":
            terms.append(power)
        elif text == "-1":
            terms.append("-" + power)
        else:
            if " " in text:
                text = "(%s)" % text
            terms.append("%s*%s" % (text, power))
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def series_expand(f, order):
    return f.series_expand(order)


def eval_at(f, x0):
    return f.eval_at(x0)


def limit_product(a, b):
    """ value at X=1 of the reduced product a*b, with the orders of a and b at X=1 """
    product = a * b
    value = product.eval_at(1)
    logger.debug("limit of (%s)*(%s) at X=1: %s" % (a, b, value))
    return Limit(value, a.order_at(1), b.order_at(1))
