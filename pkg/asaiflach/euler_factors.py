# -*- coding: utf-8 -*-
import json
import logging

from collections import namedtuple
from fractions import Fraction
from math import gcd

import sympy
from sympy import isprime

from asaiflach.scalar_tower import RatFuncX, SqrtScalar, ell_power
from asaiflach.principal_series import PSParams, UnramChar
from asaiflach.zeta_engine import asai_lfactor

logger = logging

FORM_KEYS = ("weight", "t", "tprime", "level_norm", "primes", "j")
PRIME_KEYS = ("ell", "splitting", "a", "eps")
SPLITTINGS = ("split", "inert")

PrimeRecord = namedtuple("PrimeRecord", "ell splitting a eps")

EulerFactorOut = namedtuple("EulerFactorOut", "ell splitting P rows")


class InputError(Exception):
    """ a Hilbert form description that does not validate; value is
        (field path, message)
    """
    def __init__(self, value):
        self.value = value

    @property
    def path(self):
        return self.value[0]

    def __str__(self):
        return repr(self.value)


class HilbertFormInput(object):
    """ weights (k + 2, k' + 2), the twists t, t' with k + 2t = k' + 2t', the
        norm of the level and Hecke data at a few spherical primes
    """

    def __init__(self, k, kprime, t, tprime, level_norm, primes, j=(0, )):
        self.k = k
        self.kprime = kprime
        self.t = t
        self.tprime = tprime
        self.level_norm = level_norm
        self.primes = sorted(primes, key=lambda r: (r.ell, r.splitting))
        self.j = list(j)

    @property
    def w(self):
        return self.k + 2 + 2 * self.t

    def record(self, ell):
        for record in self.primes:
            if record.ell == ell:
                return record
        raise KeyError("no Hecke data at %d" % ell)

    def __repr__(self):
        return "HilbertFormInput(weight=(%d, %d), t=%d, t'=%d, N=%d, primes=%s)" % (
            self.k + 2, self.kprime + 2, self.t, self.tprime, self.level_norm,
            [r.ell for r in self.primes])


def _fail(path, message):
    raise InputError((path, message))


def _int_field(data, key, path, minimum=None):
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        _fail("%s.%s" % (path, key), "expected an integer, got %r" % (value, ))
    if minimum is not None and value < minimum:
        _fail("%s.%s" % (path, key), "expected at least %d, got %d" % (minimum, value))
    return value


def _rational(value, path):
    if not isinstance(value, str):
        _fail(path, "exact rationals are given as strings, got %r" % (value, ))
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        _fail(path, "not a rational: %r" % (value, ))


def _check_keys(data, allowed, path):
    if not isinstance(data, dict):
        _fail(path, "expected an object")
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        _fail("%s.%s" % (path, unknown[0]), "unknown field")
    missing = [key for key in allowed if key not in data]
    if missing:
        _fail("%s.%s" % (path, missing[0]), "missing field")


def _parse_prime(data, path, level_norm):
    _check_keys(data, PRIME_KEYS, path)
    ell = _int_field(data, "ell", path, 2)
    if not isprime(ell):
        _fail(path + ".ell", "%d is not a prime" % ell)
    if gcd(ell, level_norm) != 1:
        _fail(path + ".ell", "%d divides the level, only spherical primes are supported" % ell)
    splitting = data["splitting"]
    if splitting not in SPLITTINGS:
        _fail(path + ".splitting", "expected one of %s, got %r" % (", ".join(SPLITTINGS),
                                                                    splitting))
    expected = 2 if splitting == "split" else 1
    values = {}
    for key in ("a", "eps"):
        items = data[key]
        if not isinstance(items, list) or len(items) != expected:
            _fail("%s.%s" % (path, key), "expected %d value(s) for a %s prime"
                  % (expected, splitting))
        values[key] = [_rational(item, "%s.%s[%d]" % (path, key, i))
                       for i, item in enumerate(items)]
    for i, eps in enumerate(values["eps"]):
        if not eps:
            _fail("%s.eps[%d]" % (path, i), "nebentypus values are units")
    return PrimeRecord(ell, splitting, values["a"], values["eps"])


def parse_form_input(data):
    """ validate the decoded JSON description of a form, see README.md for the schema """
    _check_keys(data, FORM_KEYS, "$")
    weight = data["weight"]
    if not isinstance(weight, list) or len(weight) != 2 or \
            any(isinstance(x, bool) or not isinstance(x, int) or x < 2 for x in weight):
        _fail("$.weight", "expected two integers >= 2")
    k, kprime = weight[0] - 2, weight[1] - 2
    if (k - kprime) % 2:
        _fail("$.weight", "k and k' must have the same parity")
    t = _int_field(data, "t", "$")
    tprime = _int_field(data, "tprime", "$")
    if k + 2 * t != kprime + 2 * tprime:
        _fail("$.tprime", "k + 2t = k' + 2t' fails")
    level_norm = _int_field(data, "level_norm", "$", 1)
    primes = data["primes"]
    if not isinstance(primes, list):
        _fail("$.primes", "expected a list")
    records = [_parse_prime(record, "$.primes[%d]" % i, level_norm)
               for i, record in enumerate(primes)]
    j_values = data["j"]
    if not isinstance(j_values, list):
        _fail("$.j", "expected a list")
    for i, j in enumerate(j_values):
        if isinstance(j, bool) or not isinstance(j, int) or j < 0:
            _fail("$.j[%d]" % i, "expected a non-negative integer")
    return HilbertFormInput(k, kprime, t, tprime, level_norm, records, j_values)


def load_form_input(path):
    with open(path, "r") as handle:
        try:
            data = json.load(handle)
        except ValueError as e:
            _fail("$", "not valid JSON: %s" % e)
    return parse_form_input(data)


def satake_from_eigenvalues(record, w):
    """ unitary-normalised Satake data of the local component, as (trace, norm)
        pairs; split: (a l^-1/2, l^(w-2) eps) per prime above l, inert:
        (a l^-1, l^(2(w-2)) eps)
    """
    ell = record.ell
    if record.splitting == "split":
        pairs = [(ell_power(ell, Fraction(-1, 2)) * a,
                  SqrtScalar(Fraction(ell) ** (w - 2) * eps, 0, ell))
                 for a, eps in zip(record.a, record.eps)]
    else:
        pairs = [(SqrtScalar(record.a[0] / ell, 0, ell),
                  SqrtScalar(Fraction(ell) ** (2 * (w - 2)) * record.eps[0], 0, ell))]
    return PSParams.from_symmetric(ell, record.splitting, pairs)


def _hecke_polynomial(record, w):
    """ the Asai factor in Y from the Hecke polynomials 1 - a Y + q Y^2 """
    ell = record.ell
    y = RatFuncX.variable(ell)
    if record.splitting == "split":
        (p1, p2), (e1, e2) = record.a, record.eps
        q1 = Fraction(ell) ** (w - 1) * e1
        q2 = Fraction(ell) ** (w - 1) * e2
        return 1 - p1 * p2 * y \
            + (p1 * p1 * q2 + p2 * p2 * q1 - 2 * q1 * q2) * y ** 2 \
            - p1 * p2 * q1 * q2 * y ** 3 \
            + q1 * q1 * q2 * q2 * y ** 4
    q = Fraction(ell) ** (2 * (w - 1)) * record.eps[0]
    return (1 - record.a[0] * y + q * y ** 2) * (1 - q * y ** 2)


def asai_euler_factor(form, ell):
    """ P_l(X), a polynomial with constant term 1 """
    record = form.record(ell)
    poly = _hecke_polynomial(record, form.w)
    return poly.scale(Fraction(1, ell ** (form.t + form.tprime)))


def q_polynomial(P, j, ell):
    """ Q(X) = P(l^(-1-j) X) """
    if j < 0:
        raise ValueError("j must be non-negative")
    return P.scale(Fraction(1, ell ** (1 + j)))


def euler_table(form):
    """ P_l and the Q rows for every prime of the form, in prime order """
    out = []
    for record in form.primes:
        P = asai_euler_factor(form, record.ell)
        rows = [(j, q_polynomial(P, j, record.ell)) for j in form.j]
        logger.debug("Euler factor at %d (%s): %s" % (record.ell, record.splitting, P))
        out.append(EulerFactorOut(record.ell, record.splitting, P, rows))
    return out


def check_corpoli(form, ell, params=None):
    """ (passed, reciprocal L-factor, substituted P) for
        P(l^(-1+t+t') X) = L(as(sigma), s)^-1, with P expanded from the roots of
        the Hecke polynomials and the L-factor built from the Satake data
        (from the eigenvalues unless params is given)
    """
    record = form.record(ell)
    if params is None:
        params = satake_from_eigenvalues(record, form.w)
    reciprocal = asai_lfactor(params, UnramChar.trivial(ell)).value.inverse()
    P = RatFuncX.polynomial(ell, radical_oracle(record, form.w, form.t, form.tprime))
    substituted = P.scale(ell_power(ell, -1 + form.t + form.tprime))
    passed = reciprocal == substituted
    if not passed:
        logger.error("corpoli mismatch at %d: %s != %s" % (ell, reciprocal, substituted))
    return passed, reciprocal, substituted


def perturb_satake(params):
    """ the Satake data with the trace of the first pair moved by one """
    (trace, norm), rest = params.pairs[0], params.pairs[1:]
    return PSParams.from_symmetric(params.prime, params.case, [(trace + 1, norm)] + rest)


def radical_oracle(record, w, t=0, tprime=0):
    """ the Asai factor expanded from explicit roots of the Hecke polynomials
        over their splitting field; low-first Fraction coefficients
    """
    ell = record.ell
    X = sympy.Symbol("X")

    def roots(a, q):
        a, q = sympy.Rational(a.numerator, a.denominator), sympy.Rational(q.numerator,
                                                                          q.denominator)
        disc = sympy.sqrt(a * a - 4 * q)
        return (a + disc) / 2, (a - disc) / 2

    scale = sympy.Rational(1, ell ** (t + tprime))
    if record.splitting == "split":
        q1, q2 = (Fraction(ell) ** (w - 1) * e for e in record.eps)
        alpha1, beta1 = roots(record.a[0], q1)
        alpha2, beta2 = roots(record.a[1], q2)
        product = 1
        for x in (alpha1, beta1):
            for y in (alpha2, beta2):
                product *= 1 - x * y * scale * X
    else:
        q = Fraction(ell) ** (2 * (w - 1)) * record.eps[0]
        alpha, beta = roots(record.a[0], q)
        product = (1 - alpha * scale * X) * (1 - beta * scale * X) \
            * (1 - alpha * beta * scale ** 2 * X ** 2)
    poly = sympy.Poly(sympy.expand(product), X)
    coeffs = [sympy.nsimplify(sympy.radsimp(sympy.simplify(c)))
              for c in reversed(poly.all_coeffs())]
    return [Fraction(int(c.p), int(c.q)) for c in coeffs]


def polynomial_fractions(P):
    """ low-first Fraction coefficients of a rational polynomial """
    return [c.to_sqrt().to_fraction() for c in P.coefficients()]


def is_rational_polynomial(P):
    return all(c.is_base() and c.to_sqrt().is_rational() for c in P.coefficients())


def sample_record(ell, splitting, rng):
    count = 2 if splitting == "split" else 1
    a = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(count)]
    eps = [Fraction(rng.choice((1, -1))) for _ in range(count)]
    return PrimeRecord(ell, splitting, a, eps)


def sample_form(ell, splitting, weight, rng):
    """ a parallel weight form with a single random prime record """
    return HilbertFormInput(weight - 2, weight - 2, 0, 0, 1,
                            [sample_record(ell, splitting, rng)])
