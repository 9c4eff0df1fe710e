# -*- coding: utf-8 -*-
import logging

from collections import namedtuple
from fractions import Fraction

from asaiflach.scalar_tower import RatFuncX, SqrtScalar, CycloScalar, PoleAtOrigin, \
    ell_power, limit_product
from asaiflach.local_field import field_for, unit_reps, char_exponent, character_sum, \
    rational_valuation
from asaiflach.principal_series import UnramChar, PSParams, l_inverse, \
    whittaker_value, whittaker_U_action, SiegelSection, intertwine_siegel, \
    pairing_reduced, pairing_adjoint, _pair_phase

logger = logging

VECTOR_TAGS = ("spherical", "U", "borel")
ROUTES = ("reduced", "adjoint")

LFactor = namedtuple("LFactor", "kind value")

ZetaClosed = namedtuple("ZetaClosed", "params eta tag value")


class Borel(namedtuple("Borel", "va b vd")):
    """ (a, b; 0, d) with v(a) = va, v(d) = vd and a, d otherwise units """
    __slots__ = ()

    def __new__(cls, va, b=0, vd=0):
        return super(Borel, cls).__new__(cls, va, Fraction(b), vd)

    @property
    def k(self):
        return self.vd - self.va


class CentralMismatch(Exception):
    """ chi(l) psi(l) chi_sigma(l) != 1 """
    def __init__(self, value):
        self.value = value

    def __str__(self):
        return repr(self.value)


class DegenerateCharacters(Exception):
    """ chi/psi = |.|^-1, where the basis functional is not defined """
    def __init__(self, value):
        self.value = value

    def __str__(self):
        return repr(self.value)


def abelian_lfactor(mu, a, b=0):
    """ L(mu, a + b*s) """
    return LFactor("abelian", l_inverse(mu, a, b).inverse())


def asai_lfactor(params, eta):
    """ the local Asai L-factor of sigma (x) eta, or the standard one for case 'h' """
    prime = params.prime
    t = eta.at_ell() * RatFuncX.variable(prime)
    if params.case == "h":
        (p, q), = params.pairs
        return LFactor("standard", (1 - p * t + q * t * t).inverse())
    if params.case == "inert":
        # the abelian factor is read off the same pair: e2 = chi_sigma(l)
        (e1, e2), = params.pairs
        poly = (1 - e1 * t + e2 * t * t) * (1 - e2 * t * t)
        return LFactor("asai-inert", poly.inverse())
    (p1, q1), (p2, q2) = params.pairs
    poly = 1 - p1 * p2 * t \
        + (p1 * p1 * q2 + p2 * p2 * q1 - 2 * q1 * q2) * t ** 2 \
        - p1 * p2 * q1 * q2 * t ** 3 \
        + q1 * q1 * q2 * q2 * t ** 4
    return LFactor("split-product", poly.inverse())


def _check_asai_case(params):
    if params.case == "h":
        raise ValueError("zeta integrals need the inert or split case, not %r" % params.case)


def _as_borel(borel):
    if borel is None:
        return Borel(0, 0, 0)
    if isinstance(borel, Borel):
        return borel
    if len(borel) == 2:
        return Borel(borel[0], 0, borel[1])
    return Borel(*borel)


def spherical_zeta(params, eta):
    """ L(eta^2 chi_sigma, 2s)^-1 """
    prime = params.prime
    t = eta.at_ell() * RatFuncX.variable(prime)
    return 1 - params.central_value * t * t


def zeta_closed(params, eta, tag, borel=None):
    """ the normalised zeta integral Z(sigma, eta, f, s) = L(as(sigma x eta), s)^-1 *
        int |y|^(s-1) eta(y) W_f(diag(y, 1)) d*y, for f the spherical vector, its
        U(l) translate or a Borel translate of it
    """
    _check_asai_case(params)
    prime = params.prime
    spherical = spherical_zeta(params, eta)
    if tag == "spherical":
        value = spherical
    elif tag == "U":
        l_as_inverse = asai_lfactor(params, eta).value.inverse()
        shift = (eta.at_ell() * RatFuncX.variable(prime)).inverse()
        value = shift * prime * (spherical - l_as_inverse)
    elif tag == "borel":
        borel = _as_borel(borel)
        k = borel.k
        factor = RatFuncX.monomial(prime, ell_power(prime, k), k) \
            * params.central_value ** borel.vd * eta.value(k)
        value = factor * spherical
    else:
        raise ValueError("unknown vector tag %r" % (tag, ))
    logger.debug("zeta %s for %r, eta %r: %s" % (tag, params, eta, value))
    return ZetaClosed(params, eta, tag, value)


def _borel_phase(params, y, borel):
    """ the unit average of Psi_G(y*u*b) over the shell, y rational """
    if not borel.b:
        return CycloScalar.base(params.prime, 1)
    prime = params.prime
    z = Fraction(y) * borel.b
    depth = max(1, -rational_valuation(z, prime))
    field = params.field
    units = unit_reps(field_for(prime, 1), depth)
    if params.case == "split":
        phases = [_pair_phase(field, z * u.x, z * u.x) for u in units]
    else:
        phases = [char_exponent(field, z * u.x) for u in units]
    return character_sum(field, phases) / len(units)


def shell_coefficients(params, eta, tag, order, borel=None, coset_scale=None):
    """ coefficient of X^m in int |y|^(s-1) eta(y) W_f(diag(y, 1)) d*y, summing the
        shells v(y) = m for m = 0..order, with vol(Z_l^x) = 1
    """
    _check_asai_case(params)
    if eta.s_exponent:
        raise ValueError("shell sums need a twist without an X part, got %r" % (eta, ))
    prime = params.prime
    eta_l = eta.base_value
    coeffs = []
    if tag == "borel":
        borel = _as_borel(borel)
        if borel.k < 0:
            raise PoleAtOrigin("borel translate with v(d/a) = %d < 0" % borel.k)
    for m in range(order + 1):
        weight = SqrtScalar(Fraction(prime) ** m, 0, prime) * eta_l ** m
        if tag == "spherical":
            coeffs.append(CycloScalar.coerce(weight * whittaker_value(params, m), prime))
        elif tag == "U":
            coeffs.append(CycloScalar.coerce(
                weight * whittaker_U_action(params, m, coset_scale), prime))
        elif tag == "borel":
            # d is taken to be l^vd, so y*b/d has valuation m + v(b) - vd
            phase = _borel_phase(params, Fraction(prime) ** (m - borel.vd), borel)
            value = weight * params.central_value ** borel.vd \
                * whittaker_value(params, m - borel.k)
            coeffs.append(phase * value)
        else:
            raise ValueError("unknown vector tag %r" % (tag, ))
    return coeffs


def zeta_oracle(params, eta, tag, order, borel=None, coset_scale=None):
    """ shell sums times L(as(sigma x eta), s)^-1 as a truncated series """
    raw = shell_coefficients(params, eta, tag, order, borel, coset_scale)
    inverse = asai_lfactor(params, eta).value.inverse().series_expand(order)
    zero = CycloScalar.base(params.prime, 0)
    out = []
    for n in range(order + 1):
        total = zero
        for i in range(n + 1):
            total = total + raw[i] * inverse[n - i]
        out.append(total)
    return out


def change_of_variable(params, eta, order):
    """ the U(l) shells from the spherical ones through y -> l*y:
        raw_U[m] = l eta(l)^-1 raw_S[m + 1]; returns (shifted, direct)
    """
    prime = params.prime
    spherical = shell_coefficients(params, eta, "spherical", order + 1)
    direct = shell_coefficients(params, eta, "U", order)
    factor = eta.base_value.inverse() * prime
    shifted = [factor * spherical[m + 1] for m in range(order + 1)]
    return shifted, direct


def check_central(params, chi, psi):
    product = chi.base_value * psi.base_value * params.central_value
    if product != 1:
        raise CentralMismatch("chi(l) psi(l) chi_sigma(l) = %s for %r" % (product, params))


def z_functional(params, chi, psi, tag):
    """ z_{s, f}(1) = Z(sigma, psi, f, s + 1/2) """
    check_central(params, chi, psi)
    closed = zeta_closed(params, psi.with_exponent(0), tag)
    return closed.value.scale(ell_power(params.prime, Fraction(-1, 2)))


STANDARD_VECTORS = {
    "phi_0": ("phi_t", 0),
    "phi_1": ("phi_t", 1),
    "phi_01": ("phi_01", 1),
}


def frak_z_limit(chi, psi, params, family, tag, route="reduced"):
    """ lim_{s->0} L(psi/chi, 2s+1) <M f_s, z_s> as a Limit record; the adjoint
        route computes <f_s, M z_s> instead
    """
    prime = params.prime
    ratio = chi / psi
    if not ratio.is_ramified() and ratio.base_value == prime:
        raise DegenerateCharacters("chi/psi = |.|^-1 for %r, %r" % (chi, psi))
    if family not in STANDARD_VECTORS:
        raise ValueError("unknown Schwartz family %r" % (family, ))
    if route not in ROUTES:
        raise ValueError("unknown pairing route %r" % (route, ))
    name, t = STANDARD_VECTORS[family]
    z = z_functional(params, chi, psi, tag)
    section = SiegelSection(name, t, chi.with_exponent(1), psi.with_exponent(-1),
                            transformed=True)
    if route == "reduced":
        scalar, swapped = intertwine_siegel(section)
        pairing = scalar * pairing_reduced(swapped, z)
    else:
        pairing = pairing_adjoint(section, z)
    normaliser = l_inverse((psi / chi).with_exponent(0), 1, 2).inverse()
    return limit_product(normaliser, pairing)


def frak_z(chi, psi, params, family, tag, route="reduced"):
    """ the basis functional on F_phi (x) f for phi in the standard family and f
        spherical or U(l)-spherical
    """
    value = frak_z_limit(chi, psi, params, family, tag, route).value
    logger.debug("frak_z(%s, %s) via %s = %s" % (family, tag, route, value))
    return value


def norm_relation_characters(prime, k, h, tau, ramified=False):
    """ chi = |.|^(1/2+k+h) tau, psi = |.|^(-1/2+h) """
    tau = SqrtScalar.coerce(tau, prime)
    chi = UnramChar(prime, ell_power(prime, -(Fraction(1, 2) + k + h)) * tau,
                    unit_value=-1 if ramified else 1)
    psi = UnramChar.norm_power(prime, Fraction(-1, 2) + h)
    return chi, psi


def central_for(chi, psi):
    return (chi.base_value * psi.base_value).inverse()


def _sample_rational(rng, nonzero=False):
    while True:
        value = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        if value or not nonzero:
            return value


def sample_params(prime, case, central, rng):
    """ random Satake data with the given chi_sigma(l), the last norm solved for """
    central = SqrtScalar.coerce(central, prime)
    if case == "inert":
        return PSParams(prime, case, [(_sample_rational(rng), central)])
    if case == "split":
        q1 = SqrtScalar.coerce(_sample_rational(rng, nonzero=True), prime)
        return PSParams(prime, case, [(_sample_rational(rng), q1),
                                      (_sample_rational(rng), central / q1)])
    raise ValueError("unknown case %r" % (case, ))


def asai_inverse_at(params, h):
    """ L(as(sigma), h)^-1 """
    inverse = asai_lfactor(params, UnramChar.trivial(params.prime)).value.inverse()
    return inverse.eval_at(ell_power(params.prime, -h))


def norm_relation_sign(k, tau, ramified=False):
    """ -1 when L(psi/chi, 2s+1) has a pole at s = 0, which flips the sign the
        limit carries in front of L(as(sigma), h)^-1

        At k = 0, tau = 1 the value f(1) = L(psi/chi, 1)^-1 is zero, so the
        product of limits taken for (ii) is 0 * infinity and the limit has to be
        taken of the product instead.
    """
    if k == 0 and tau == 1 and not ramified:
        return -1
    return 1


def _drop(prime, k, tau):
    """ 1 - l^k / tau(l) """
    return 1 - SqrtScalar(Fraction(prime) ** k, 0, prime) / SqrtScalar.coerce(tau, prime)


def thmzita_identities(params, k, h, tau, ramified=False):
    """ (name, lhs, rhs) for the two norm relation identities at phi_1 """
    prime = params.prime
    chi, psi = norm_relation_characters(prime, k, h, tau, ramified)
    z0 = frak_z(chi, psi, params, "phi_0", "spherical")
    z1 = frak_z(chi, psi, params, "phi_1", "spherical")
    z1_u = frak_z(chi, psi, params, "phi_1", "U")
    drop = _drop(prime, k, tau)
    sign = norm_relation_sign(k, tau, ramified)
    l_as = asai_inverse_at(params, h)
    ratio_i = drop / (prime + 1)
    ratio_ii = ell_power(prime, 1 + h) / (prime + 1) * (drop - sign * l_as)
    return [
        ("phi_1.spherical", z1, ratio_i * z0),
        ("phi_1.U", z1_u, ratio_ii * z0),
        ("phi_0.spherical", z0, _expected_phi_0(chi, psi)),
    ]


def _expected_phi_0(chi, psi):
    """ L(chi/psi, 1)^-1, or 0 when F_phi_0 vanishes for ramified chi/psi """
    ratio = chi / psi
    if ratio.is_ramified():
        return CycloScalar.base(chi.prime, 0)
    return CycloScalar.coerce(
        1 - ratio.base_value * ell_power(chi.prime, -1), chi.prime)


def thecor_combination(params, k, h, tau, ramified=False, index=None):
    """ [H(Z):K_0(l)] ((1 + 1/(l-1)) frak_z(phi_1, f) - 1/(l-1) frak_z(phi_1, U f)) """
    prime = params.prime
    if index is None:
        index = prime + 1
    chi, psi = norm_relation_characters(prime, k, h, tau, ramified)
    a = frak_z(chi, psi, params, "phi_1", "spherical")
    b = frak_z(chi, psi, params, "phi_1", "U")
    return a * (index * (1 + Fraction(1, prime - 1))) - b * (index * Fraction(1, prime - 1))


def thecor_identity(params, k, h, tau, ramified=False, index=None):
    """ (lhs, rhs) of the combination against its value through the phi_1 identities

            lhs = thecor_combination(...)
            rhs = (l (1 - l^h) drop + sign l^(1+h) L(as(sigma), h)^-1) / (l-1) * frak_z(phi_0, f)

        with drop = 1 - l^k/tau(l). At h = 0 this is thecor_stated(...).
    """
    prime = params.prime
    chi, psi = norm_relation_characters(prime, k, h, tau, ramified)
    z0 = frak_z(chi, psi, params, "phi_0", "spherical")
    lhs = thecor_combination(params, k, h, tau, ramified, index)
    sign = norm_relation_sign(k, tau, ramified)
    coefficient = _drop(prime, k, tau) * Fraction(prime * (1 - prime ** h), prime - 1) \
        + asai_inverse_at(params, h) * Fraction(sign * prime ** (1 + h), prime - 1)
    return lhs, coefficient * z0


def thecor_stated(params, k, h, tau, ramified=False):
    """ sign * l/(l-1) * L(as(sigma), h)^-1 * frak_z(phi_0, f), the combination's
        value in its usual form; only right for h = 0
    """
    prime = params.prime
    chi, psi = norm_relation_characters(prime, k, h, tau, ramified)
    z0 = frak_z(chi, psi, params, "phi_0", "spherical")
    sign = norm_relation_sign(k, tau, ramified)
    return asai_inverse_at(params, h) * z0 * Fraction(sign * prime, prime - 1)


def thecor_gap(params, k, h, tau, ramified=False):
    """ thecor_identity's rhs minus thecor_stated:

            l (1 - l^h) / (l-1) * (drop - sign L(as(sigma), h)^-1) * frak_z(phi_0, f)
    """
    prime = params.prime
    chi, psi = norm_relation_characters(prime, k, h, tau, ramified)
    z0 = frak_z(chi, psi, params, "phi_0", "spherical")
    sign = norm_relation_sign(k, tau, ramified)
    difference = _drop(prime, k, tau) - asai_inverse_at(params, h) * sign
    return difference * Fraction(prime * (1 - prime ** h), prime - 1) * z0


def vanishing_characters(prime):
    """ chi = |.|^(1/2), psi = |.|^(-1/2): L(psi/chi, 2s+1)^-1 vanishes at s = 0 """
    return UnramChar.norm_power(prime, Fraction(1, 2)), \
        UnramChar.norm_power(prime, Fraction(-1, 2))


def twisted_asai_inverse(params, psi):
    """ L(as(sigma x psi), s + 1/2)^-1 """
    return asai_lfactor(params, psi).value.inverse() \
        .scale(ell_power(params.prime, Fraction(-1, 2)))


def vanish_abelian_params(prime, case, rng):
    """ a sample with chi_sigma = 1 where only the abelian factor vanishes at s = 0;
        in the inert case L(psi/chi, 2s+1)^-1 always divides the Asai one, so
        one zero at X = 1 is allowed there
    """
    chi, psi = vanishing_characters(prime)
    allowed = 1 if case == "inert" else 0
    while True:
        params = sample_params(prime, case, central_for(chi, psi), rng)
        if twisted_asai_inverse(params, psi).order_at(1) <= allowed:
            return params


def vanish_both_params(prime, case):
    """ Satake data where the twisted Asai factor and the abelian factor both vanish """
    if case == "split":
        return PSParams.from_roots(prime, case, [2, 3, Fraction(1, 2), Fraction(1, 3)])
    if case == "inert":
        return PSParams.from_roots(prime, case, [1, 1])
    raise ValueError("unknown case %r" % (case, ))


def z_at_one(params, chi, psi, tag):
    return z_functional(params, chi, psi, tag).eval_at(1)
