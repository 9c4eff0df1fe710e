# -*- coding: utf-8 -*-
import logging

from fractions import Fraction

from asaiflach.scalar_tower import RatFuncX, SqrtScalar, ell_power, to_fraction
from asaiflach.local_field import field_for, coset_reps, char_exponent, \
    character_sum, rational_valuation
from asaiflach.schwartz import standard_phi, fourier

logger = logging

CASES = ("h", "split", "inert")


class UnsupportedSection(Exception):
    """ the Siegel section is outside the family whose values are known """
    def __init__(self, value):
        self.value = value

    def __str__(self):
        return repr(self.value)


class UnramChar(object):
    """ z -> base_value^v(z) * X^(s_exponent*v(z)), the twist |.|^(s*s_exponent)
        being carried as a power of X = l^-s.

        unit_value != 1 marks a ramified character; only its value at l is
        modelled.
    """
    __slots__ = ("prime", "base_value", "s_exponent", "unit_value")

    def __init__(self, prime, base_value=1, s_exponent=0, unit_value=1):
        self.prime = prime
        self.base_value = SqrtScalar.coerce(base_value, prime)
        self.s_exponent = s_exponent
        self.unit_value = unit_value

    @classmethod
    def trivial(cls, prime):
        return cls(prime)

    @classmethod
    def norm_power(cls, prime, exponent):
        """ |.|^exponent for a half-integral exponent """
        return cls(prime, ell_power(prime, -to_fraction(exponent)))

    def is_ramified(self):
        return self.unit_value != 1

    def value(self, v):
        return RatFuncX.monomial(self.prime, self.base_value ** v, self.s_exponent * v)

    def at_ell(self):
        return self.value(1)

    def with_exponent(self, exponent):
        return UnramChar(self.prime, self.base_value, exponent, self.unit_value)

    def __mul__(self, other):
        if not isinstance(other, UnramChar):
            return NotImplemented
        return UnramChar(self.prime, self.base_value * other.base_value,
                         self.s_exponent + other.s_exponent,
                         self.unit_value * other.unit_value)

    def inverse(self):
        return UnramChar(self.prime, self.base_value.inverse(), -self.s_exponent,
                         Fraction(1) / self.unit_value)

    def __truediv__(self, other):
        if not isinstance(other, UnramChar):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, exponent):
        return UnramChar(self.prime, self.base_value ** exponent, self.s_exponent * exponent,
                         Fraction(self.unit_value) ** exponent)

    def __eq__(self, other):
        if not isinstance(other, UnramChar):
            return NotImplemented
        return (self.prime, self.base_value, self.s_exponent, self.unit_value) == \
            (other.prime, other.base_value, other.s_exponent, other.unit_value)

    def __hash__(self):
        return hash((self.prime, self.base_value, self.s_exponent, self.unit_value))

    def __repr__(self):
        text = "UnramChar(%d, %s" % (self.prime, self.base_value)
        if self.s_exponent:
            text += ", s_exponent=%s" % self.s_exponent
        if self.is_ramified():
            text += ", unit_value=%s" % self.unit_value
        return text + ")"


def l_inverse(mu, a, b=0):
    """ L(mu, a + b*s)^-1 = 1 - mu(l) l^-a X^b, or 1 for ramified mu """
    if mu.is_ramified():
        return RatFuncX.constant(mu.prime, 1)
    return 1 - mu.at_ell() * RatFuncX.monomial(mu.prime, ell_power(mu.prime, -to_fraction(a)), b)


class PSParams(object):
    """ Satake data of an unramified principal series.

        case 'h' is GL2(Q_l) with one (trace, norm) pair, 'inert' is GL2(E)
        for E/Q_l unramified quadratic with one pair, 'split' is
        GL2(Q_l) x GL2(Q_l) with two pairs. Individual roots are optional.
    """

    def __init__(self, prime, case, pairs, roots=None):
        if case not in CASES:
            raise ValueError("unknown case %r" % (case, ))
        expected = 2 if case == "split" else 1
        if len(pairs) != expected:
            raise ValueError("case %s needs %d Satake pairs" % (case, expected))
        self.prime = prime
        self.case = case
        self.pairs = [(SqrtScalar.coerce(tr, prime), SqrtScalar.coerce(nm, prime))
                      for tr, nm in pairs]
        if any(not nm for _, nm in self.pairs):
            raise ValueError("Satake parameters must be non-zero")
        self.roots = None
        if roots is not None:
            self.roots = [SqrtScalar.coerce(r, prime) for r in roots]

    @classmethod
    def from_roots(cls, prime, case, roots):
        roots = [SqrtScalar.coerce(r, prime) for r in roots]
        pairs = [(roots[i] + roots[i + 1], roots[i] * roots[i + 1])
                 for i in range(0, len(roots), 2)]
        return cls(prime, case, pairs, roots)

    @classmethod
    def from_symmetric(cls, prime, case, pairs):
        return cls(prime, case, pairs)

    @property
    def field(self):
        return field_for(self.prime, 2 if self.case == "inert" else 1)

    @property
    def q(self):
        return self.field.q

    @property
    def central_value(self):
        value = SqrtScalar(1, 0, self.prime)
        for _, nm in self.pairs:
            value = value * nm
        return value

    def root_pairs(self):
        if self.roots is None:
            return None
        return [tuple(self.roots[i:i + 2]) for i in range(0, len(self.roots), 2)]

    def __repr__(self):
        if self.roots is not None:
            return "PSParams(%d, %s, roots=[%s])" % (
                self.prime, self.case, ", ".join(str(r) for r in self.roots))
        return "PSParams(%d, %s, pairs=[%s])" % (
            self.prime, self.case, ", ".join("(%s, %s)" % p for p in self.pairs))


def complete_symmetric(trace, norm, m):
    """ h_m(alpha, beta) from alpha + beta and alpha*beta """
    previous, current = SqrtScalar(0, 0, trace.prime), SqrtScalar(1, 0, trace.prime)
    for _ in range(m):
        previous, current = current, trace * current - norm * previous
    return current


def _closed_h(alpha, beta, m):
    if alpha == beta:
        return (m + 1) * alpha ** m
    return (alpha ** (m + 1) - beta ** (m + 1)) / (alpha - beta)


def _normalization(params, m):
    """ q^(-m/2) per GL2 factor """
    if params.case == "h":
        return ell_power(params.prime, Fraction(-m, 2))
    return ell_power(params.prime, -m)


def whittaker_recursive(params, m):
    if m < 0:
        return SqrtScalar(0, 0, params.prime)
    value = _normalization(params, m)
    for trace, norm in params.pairs:
        value = value * complete_symmetric(trace, norm, m)
    return value


def whittaker_value(params, m):
    """ W(diag(y, 1)) of the normalised spherical Whittaker function, m = v(y) """
    if m < 0:
        return SqrtScalar(0, 0, params.prime)
    pairs = params.root_pairs()
    if pairs is None:
        return whittaker_recursive(params, m)
    value = _normalization(params, m)
    for alpha, beta in pairs:
        value = value * _closed_h(alpha, beta, m)
    return value


def whittaker_U_action(params, m, coset_scale=None):
    """ (U(l)W)(diag(y, 1)): 0 below the integers, else (number of cosets)*W(m+1) """
    if m < 0:
        return SqrtScalar(0, 0, params.prime)
    if coset_scale is None:
        coset_scale = params.prime if params.case == "h" else params.prime ** 2
    return coset_scale * whittaker_value(params, m + 1)


def whittaker_U_oracle(params, m):
    """ sum over the cosets (l, u; 0, 1) of Psi(y*u) W(diag(l*y, 1)), y = l^m """
    field = params.field
    y = Fraction(params.prime) ** m
    reps = coset_reps(field, 1)
    if params.case == "split":
        phases = [_pair_phase(field, y * u1, y * u2) for u1 in reps for u2 in reps]
    else:
        phases = [char_exponent(field, y * u) for u in reps]
    total = character_sum(field, phases)
    logger.debug("U(l) oracle %r m=%d: phase sum %s" % (params, m, total))
    return total * whittaker_value(params, m + 1)


def _pair_phase(field, z1, z2):
    """ Psi(z1)*Psi(-z2) as one exponent pair """
    k1, n1 = char_exponent(field, z1)
    k2, n2 = char_exponent(field, z2, -1)
    top = max(n1, n2)
    prime = field.prime
    return (k1 * prime ** (top - n1) + k2 * prime ** (top - n2)) % prime ** top, top


STANDARD_FAMILIES = ("phi_t", "phi_01")


def _family_level(family, t):
    if family == "phi_01":
        return 1
    if family == "phi_t":
        return t
    raise UnsupportedSection("no Siegel values for %s" % family)


def volume_k0(prime, t):
    """ vol(K_0(l^t)) = [GL2(Z_l) : K_0(l^t)]^-1 """
    if t == 0:
        return Fraction(1)
    return Fraction(1, prime ** (t - 1) * (prime + 1))


def siegel_value(family, t, chi, psi, point=None):
    """ f_{phi, chi, psi}(point) for phi in the phi_t family; point is a Mat2
        over Q_l or None for the identity.
    """
    t = _family_level(family, t)
    prime = chi.prime
    if (chi / psi).is_ramified():
        return RatFuncX(prime, [0])
    if t == 0:
        at_one = RatFuncX.constant(prime, 1)
    else:
        at_one = l_inverse(chi / psi, 1)
    if point is None:
        return at_one
    c, d = point.c, point.d
    vc, vd = c.valuation(), d.valuation()
    if t >= 1 and vc - vd < t:
        return RatFuncX(prime, [0])
    d_borel = d if vc >= vd else c
    v_det = point.det().valuation()
    v_d = d_borel.valuation()
    modulus = ell_power(prime, -Fraction(v_det - 2 * v_d, 2))
    return chi.value(v_det - v_d) * psi.value(v_d) * modulus * at_one


class SiegelSection(object):
    """ f_{phi, chi, psi}, or f_{phi^, chi, psi} when transformed is set """
    __slots__ = ("family", "t", "chi", "psi", "transformed")

    def __init__(self, family, t, chi, psi, transformed=False):
        self.family = family
        self.t = t
        self.chi = chi
        self.psi = psi
        self.transformed = transformed

    def value(self, point=None):
        if self.transformed:
            raise UnsupportedSection("values of f for a Fourier transformed %s" % self.family)
        return siegel_value(self.family, self.t, self.chi, self.psi, point)

    def __repr__(self):
        hat = "^" if self.transformed else ""
        return "SiegelSection(%s%s(%d), %r, %r)" % (self.family, hat, self.t, self.chi, self.psi)


def intertwine_siegel(section):
    """ M(f_{phi, chi_s, psi_s}) = L(chi/psi, 1 - 2s)^-1 f_{phi^, psi_s, chi_s} """
    ratio = (section.chi / section.psi).with_exponent(0)
    scalar = l_inverse(ratio, 1, -2)
    swapped = SiegelSection(section.family, section.t, section.psi, section.chi,
                            not section.transformed)
    return scalar, swapped


def pairing_reduced(section, z):
    """ <f, z> for z constant on GL2(Z_l): f(1) vol(K_0(l^t)) z """
    if section.transformed:
        raise UnsupportedSection("pairing needs the values of %r" % (section, ))
    t = _family_level(section.family, section.t)
    return section.value() * volume_k0(section.chi.prime, t) * z


def godement_average(phi, chi, psi):
    """ the integral of f_{phi, chi, psi} over GL2(Z_l).

        On GL2(Z_l) the section is L(mu, 1)^-1 int phi((0, a) k) mu(a) |a| d*a
        with mu = chi/psi, and (0, a) k sweeps the shell l^v(a) Prim uniformly,
        Prim being the primitive vectors of Z_l^2.
    """
    prime = phi.prime
    ratio = chi / psi
    if ratio.is_ramified() or not phi:
        return RatFuncX(prime, [0])
    n = phi.level
    masses = {}
    for (a, b), coeff in phi.cosets.items():
        v = min(rational_valuation(a, prime), rational_valuation(b, prime))
        if v < n:
            masses[v] = masses.get(v, 0) + coeff
    shell = 1 - Fraction(1, prime ** 2)
    total = RatFuncX(prime, [0])
    for v, mass in sorted(masses.items()):
        average = mass * (Fraction(prime) ** (2 * v - 2 * n) / shell)
        total = total + ratio.value(v) * Fraction(prime) ** -v * average
    # phi is constant on l^n Z_l^2, so the shells from n on add up to L(mu, 1)
    tail = ratio.value(n) * Fraction(prime) ** -n * phi.evaluate(0, 0)
    return l_inverse(ratio, 1) * total + tail


def intertwine_spherical(ratio):
    """ M f° = c f° on the spherical line of I(mu_1, mu_2), ratio = mu_1/mu_2;
        c is the Gindikin-Karpelevich constant L(mu, 0)/L(mu, 1) without the
        L(mu, 0) that M on Siegel sections leaves out
    """
    return l_inverse(ratio, 1)


def pairing_adjoint(section, z):
    """ <f, M z> for z spherical in I(psi^-1, chi^-1) with z(1) = z, the
        values of f coming from its Schwartz function
    """
    t = _family_level(section.family, section.t)
    prime = section.chi.prime
    phi = standard_phi(section.family, t, prime)
    if section.transformed:
        phi = fourier(phi)
    scalar = intertwine_spherical(section.chi / section.psi)
    return scalar * godement_average(phi, section.chi, section.psi) * z
