# -*- coding: utf-8 -*-
import logging
import math

from fractions import Fraction

from asaiflach.scalar_tower import CycloScalar, cyclo_sum, to_fraction
from asaiflach.local_field import rational_mod, rational_valuation, e_ell

logger = logging

FAMILIES = ("phi_t", "phi_1t", "phi_01", "phi_1t_plus")


class SchwartzFn(object):
    """ A Schwartz-Bruhat function on Q_l x Q_l, stored as coefficients on the
        cosets (a, b) + l^level Z_l^2 for a single level.

        The level is always the smallest one on whose cosets the function is
        constant, so two functions are equal iff level and coefficients agree.
    """

    def __init__(self, prime, terms=()):
        self.prime = prime
        terms = [(CycloScalar.coerce(c, prime), (to_fraction(a), to_fraction(b)), n)
                 for c, (a, b), n in terms]
        terms = [t for t in terms if t[0]]
        if not terms:
            self.level = 0
            self.cosets = {}
            return
        level = max(n for _, _, n in terms)
        cosets = {}
        for coeff, (a, b), n in terms:
            for key in _refined_keys(prime, a, b, n, level):
                cosets[key] = cosets.get(key, 0) + coeff
        self.level, self.cosets = _coarsen(prime, level,
                                           {k: c for k, c in cosets.items() if c})

    @classmethod
    def indicator(cls, prime, a, b, level):
        """ ch((a, b) + l^level Z_l^2) """
        return cls(prime, [(1, (a, b), level)])

    def terms(self):
        return [(c, key, self.level) for key, c in sorted(self.cosets.items())]

    def refine(self, level):
        """ the coset dictionary at a finer level """
        if level < self.level:
            raise ValueError("level %d is coarser than %d" % (level, self.level))
        cosets = {}
        for (a, b), coeff in self.cosets.items():
            for key in _refined_keys(self.prime, a, b, self.level, level):
                cosets[key] = coeff
        return cosets

    def evaluate(self, x, y):
        key = (rational_mod(x, self.prime, self.level), rational_mod(y, self.prime, self.level))
        return self.cosets.get(key, CycloScalar.base(self.prime, 0))

    __call__ = evaluate

    def support_valuation(self):
        """ smallest valuation of a coordinate of a point in the support, inf for 0 """
        if not self.cosets:
            return math.inf
        return min(min(rational_valuation(a, self.prime), rational_valuation(b, self.prime),
                       self.level)
                   for a, b in self.cosets)

    def _check(self, other):
        if not isinstance(other, SchwartzFn):
            return False
        if other.prime != self.prime:
            raise ValueError("mixing primes %s and %s" % (self.prime, other.prime))
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return SchwartzFn(self.prime, self.terms() + other.terms())

    def __neg__(self):
        return SchwartzFn(self.prime, [(-c, key, n) for c, key, n in self.terms()])

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, SchwartzFn):
            return NotImplemented
        return SchwartzFn(self.prime, [(c * scalar, key, n) for c, key, n in self.terms()])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not self._check(other):
            return NotImplemented
        if not self.cosets or not other.cosets:
            return not self.cosets and not other.cosets
        return self.level == other.level and self.cosets == other.cosets

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __bool__(self):
        return bool(self.cosets)

    def __repr__(self):
        return "SchwartzFn(%s)" % self

    def __str__(self):
        if not self.cosets:
            return "0"
        return " + ".join("%s*ch((%s, %s) + %d^%d)" % (c, a, b, self.prime, self.level)
                          for c, (a, b), _ in self.terms())

    def act(self, g):
        return act(g, self)

    def fourier(self):
        return fourier(self)


def _refined_keys(prime, a, b, level, finer):
    step = Fraction(prime) ** level
    count = prime ** (finer - level)
    return [(rational_mod(a + i * step, prime, finer), rational_mod(b + j * step, prime, finer))
            for i in range(count) for j in range(count)]


def _coarsen(prime, level, cosets):
    while cosets:
        parents = {}
        for (a, b), coeff in cosets.items():
            parent = (rational_mod(a, prime, level - 1), rational_mod(b, prime, level - 1))
            parents.setdefault(parent, []).append(coeff)
        block = prime * prime
        if any(len(coeffs) != block or any(c != coeffs[0] for c in coeffs)
               for coeffs in parents.values()):
            break
        cosets = {parent: coeffs[0] for parent, coeffs in parents.items()}
        level -= 1
    return level, cosets


def act(g, phi):
    """ (g.phi)(v) = phi(v*g) for row vectors v; act(g1, act(g2, phi)) = act(g1*g2, phi) """
    if g.field.degree != 1:
        raise ValueError("Schwartz functions live on Q_l^2")
    prime = phi.prime
    if not phi.cosets:
        return phi
    h = g.inverse()
    n = phi.level
    level = n + max(0, -g.min_valuation())
    span = max(0, level - n - h.min_valuation())
    step = Fraction(prime) ** n
    offsets = set()
    for i in range(prime ** span):
        for j in range(prime ** span):
            x, y = h.apply_row(i * step, j * step)
            offsets.add((rational_mod(x.x, prime, level), rational_mod(y.x, prime, level)))
    terms = []
    for (a, b), coeff in phi.cosets.items():
        x, y = h.apply_row(a, b)
        for dx, dy in offsets:
            terms.append((coeff, (x.x + dx, y.x + dy), level))
    logger.debug("act: %d cosets at level %d -> %d terms at level %d"
                 % (len(phi.cosets), n, len(terms), level))
    return SchwartzFn(prime, terms)


def fourier(phi):
    """ phi^(x, y) = int int e_l(x*v - y*u) phi(u, v) du dv, vol(Z_l) = 1 """
    prime = phi.prime
    n = phi.level
    grouped = {}
    for (a, b), coeff in phi.cosets.items():
        level = max(-n, -rational_valuation(a, prime), -rational_valuation(b, prime))
        count = prime ** (level + n)
        step = Fraction(prime) ** -n
        for i in range(count):
            for j in range(count):
                x, y = i * step, j * step
                k, conductor = e_ell(x * b - y * a, prime)
                grouped.setdefault(((x, y), level, coeff), []).append((k, conductor))
    volume = Fraction(prime) ** (-2 * n)
    terms = []
    for (key, level, coeff), phases in grouped.items():
        top = max(conductor for _, conductor in phases)
        exponents = [k * prime ** (top - conductor) for k, conductor in phases]
        terms.append((coeff * volume * cyclo_sum(prime ** top, exponents, prime), key, level))
    return SchwartzFn(prime, terms)


def standard_phi(family, t, prime):
    """ phi_t: ch(Z^2) for t = 0, else ch(l^t Z x Z^x); phi_1t: ch(l^t Z x (1 + l^t Z));
        phi_01: phi_t at t = 1; phi_1t_plus: ch(l^(t+1) Z x (1 + l^t Z))
    """
    if family == "phi_01":
        return standard_phi("phi_t", 1, prime)
    if family == "phi_t":
        if t < 0:
            raise ValueError("phi_t needs t >= 0")
        if t == 0:
            return SchwartzFn.indicator(prime, 0, 0, 0)
        units = [d for d in range(prime ** t) if d % prime]
        return SchwartzFn(prime, [(1, (0, d), t) for d in units])
    if family == "phi_1t":
        if t < 1:
            raise ValueError("phi_1t needs t >= 1")
        return SchwartzFn.indicator(prime, 0, 1, t)
    if family == "phi_1t_plus":
        if t < 1:
            raise ValueError("phi_1t_plus needs t >= 1")
        return SchwartzFn(prime, [(1, (0, 1 + prime ** t * j), t + 1) for j in range(prime)])
    raise ValueError("unknown Schwartz family %r" % (family, ))
