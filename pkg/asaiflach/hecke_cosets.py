# -*- coding: utf-8 -*-
import logging
import random

from fractions import Fraction

from asaiflach.scalar_tower import SqrtScalar
from asaiflach.local_field import Mat2, FieldElt, field_for, coset_reps
from asaiflach.schwartz import act, standard_phi

logger = logging

TAGS = ("full_integral", "K_mn", "K_H0", "K_H1", "K_ell1", "K_G0")


class BadSubgroup(Exception):
    """ the compact open subgroup does not support the requested decomposition """
    def __init__(self, value):
        self.value = value

    def __str__(self):
        return repr(self.value)


def field_of(case, prime):
    return field_for(prime, 2 if case == "inert" else 1)


class GroupElt(object):
    """ an element of GL2(Q_l) ('h'), GL2(E) ('inert') or GL2(Q_l) x GL2(Q_l) ('split') """
    __slots__ = ("case", "mats")

    def __init__(self, case, mats):
        self.case = case
        self.mats = tuple(mats)
        if len(self.mats) != (2 if case == "split" else 1):
            raise ValueError("wrong number of components for case %s" % case)
        if any(not m.det() for m in self.mats):
            raise ValueError("singular group element")

    @classmethod
    def identity(cls, case, prime):
        field = field_of(case, prime)
        return cls(case, [Mat2.identity(field)] * (2 if case == "split" else 1))

    @property
    def prime(self):
        return self.mats[0].field.prime

    def __mul__(self, other):
        if not isinstance(other, GroupElt):
            return NotImplemented
        return GroupElt(self.case, [a * b for a, b in zip(self.mats, other.mats)])

    def inverse(self):
        return GroupElt(self.case, [m.inverse() for m in self.mats])

    def __eq__(self, other):
        if not isinstance(other, GroupElt):
            return NotImplemented
        return self.case == other.case and self.mats == other.mats

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.case, self.mats))

    def __repr__(self):
        return "GroupElt(%s, %s)" % (self.case, ", ".join(str(m) for m in self.mats))


def _lift(field, mat):
    return Mat2(field, *(FieldElt(field, e.to_fraction()) for e in mat.entries()))


def iota(h, case):
    """ the embedding of GL2(Q_l) into G """
    field = field_of(case, h.field.prime)
    lifted = _lift(field, h)
    if case == "split":
        return GroupElt(case, [lifted, lifted])
    return GroupElt(case, [lifted])


def rational(prime, a, b, c, d):
    return Mat2(field_for(prime, 1), a, b, c, d)


class CompactOpen(object):
    """ congruence subgroups of the integral points, described per component:

        full_integral   the integral points
        K_mn            c = 0, d = 1 mod l^n and det = a mod l^m, n >= max(m, 1)
        K_H0, K_H1      c = 0 (and d = 1 for K_H1) mod l^t
        K_ell1          det = 1 mod l
        K_G0            c = 0 mod l
    """
    __slots__ = ("tag", "case", "prime", "m", "n", "a", "t")

    def __init__(self, tag, case, prime, m=0, n=0, a=1, t=0):
        if tag not in TAGS:
            raise ValueError("unknown subgroup %r" % (tag, ))
        if tag == "K_mn" and n < max(m, 1):
            raise ValueError("K_mn needs n >= max(m, 1)")
        self.tag = tag
        self.case = case
        self.prime = prime
        self.m, self.n, self.a, self.t = m, n, Fraction(a), t

    @property
    def field(self):
        return field_of(self.case, self.prime)

    def congruences(self):
        """ (level of c = 0, level of d = 1, level of det = target, det target) """
        if self.tag == "K_mn":
            return self.n, self.n, self.m, self.a
        if self.tag == "K_H0":
            return self.t, 0, 0, None
        if self.tag == "K_H1":
            return self.t, self.t, 0, None
        if self.tag == "K_ell1":
            return 0, 0, 1, Fraction(1)
        if self.tag == "K_G0":
            return 1, 0, 0, None
        return 0, 0, 0, None

    def level(self):
        return max(self.congruences()[:3])

    def _component_member(self, mat):
        if not mat.is_integral() or not mat.det().is_unit():
            return False
        c_level, d_level, det_level, target = self.congruences()
        if mat.c.valuation() < c_level:
            return False
        if (mat.d - 1).valuation() < d_level:
            return False
        if det_level and (mat.det() - target).valuation() < det_level:
            return False
        return True

    def member(self, g):
        return all(self._component_member(m) for m in g.mats)

    def _sample_component(self, rng, depth):
        field = self.field
        prime = self.prime
        modulus = prime ** depth
        c_level, d_level, det_level, target = self.congruences()

        def entry(level=0):
            return FieldElt(field, *(rng.randrange(modulus) * prime ** level
                                     for _ in range(field.degree)))

        def unit():
            while True:
                u = entry()
                if u.is_unit():
                    return u

        b = entry()
        c = entry(c_level)
        d = 1 + entry(d_level) if d_level else unit()
        if det_level:
            det = target + entry(det_level)
        else:
            det = unit()
        return Mat2(field, (det + b * c) / d, b, c, d)

    def sample(self, rng, depth=None):
        """ a random element; d is always a unit """
        depth = depth or self.level() + 2
        count = 2 if self.case == "split" else 1
        return GroupElt(self.case, [self._sample_component(rng, depth) for _ in range(count)])

    def __eq__(self, other):
        if not isinstance(other, CompactOpen):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.tag, self.case, self.prime, self.m, self.n, self.a, self.t)

    def __repr__(self):
        if self.tag == "K_mn":
            return "K_%d,%d^(%s)[%s, l=%d]" % (self.m, self.n, self.a, self.case, self.prime)
        if self.tag in ("K_H0", "K_H1"):
            return "%s(%d^%d)[%s]" % (self.tag, self.prime, self.t, self.case)
        return "%s[%s, l=%d]" % (self.tag, self.case, self.prime)


def member(g, K):
    return K.member(g)


def coset_equal(g1, g2, K):
    """ g1 K == g2 K """
    return K.member(g1.inverse() * g2)


def _check_u_ell(K):
    if K.tag == "K_mn" or (K.tag == "K_H1" and K.t >= 1):
        return
    raise BadSubgroup("%r is not inside the matrices = (*, *; 0, 1) mod l" % (K, ))


def u_ell_decompose(K):
    """ left coset representatives of K diag(l, 1) K """
    _check_u_ell(K)
    field = K.field
    prime = K.prime
    units = coset_reps(field, 1)
    if K.case == "split":
        return [GroupElt("split", [Mat2(field, prime, u, 0, 1), Mat2(field, prime, v, 0, 1)])
                for u in units for v in units]
    return [GroupElt(K.case, [Mat2(field, prime, u, 0, 1)]) for u in units]


def u_prime_reps(K):
    """ left coset representatives of K diag(l^-1, 1) K """
    _check_u_ell(K)
    field = K.field
    prime = K.prime
    n = K.n if K.tag == "K_mn" else K.t
    shift = Fraction(prime) ** (n - 1)
    lowers = [Mat2(field, Fraction(1, prime), 0, shift * j, 1) for j in coset_reps(field, 1)]
    if K.case == "split":
        return [GroupElt("split", [x, y]) for x in lowers for y in lowers]
    return [GroupElt(K.case, [x]) for x in lowers]


def eta(m, a, case, prime):
    """ (id, (1, a/l^m; 0, 1)) when l splits, (1, delta*a/l^m; 0, 1) when inert """
    a = Fraction(a)
    if a.numerator % prime == 0 or a.denominator % prime == 0:
        raise ValueError("%s is not a unit" % a)
    return _eta_shape(m, a, case, prime)


def _eta_shape(m, a, case, prime):
    """ the matrix of eta_m^(a) for any a, units or not """
    field = field_of(case, prime)
    shift = Fraction(a) / prime ** m
    if case == "split":
        return GroupElt(case, [Mat2.identity(field), Mat2.unipotent(field, shift)])
    if case == "inert":
        return GroupElt(case, [Mat2.unipotent(field, field.delta * shift)])
    raise ValueError("eta is defined for the split and inert cases only")


class HeckeElement(object):
    """ sum of c*ch(g K) """

    def __init__(self, terms=()):
        self.terms = [(SqrtScalar.coerce(c), g, K) for c, g, K in terms]

    @classmethod
    def coset(cls, g, K, coeff=1):
        return cls([(coeff, g, K)])

    @classmethod
    def double_coset(cls, K, reps):
        return cls([(1, r, K) for r in reps])

    def canonical(self):
        merged = []
        for c, g, K in self.terms:
            for i, (c2, g2, K2) in enumerate(merged):
                if K2 == K and coset_equal(g2, g, K):
                    merged[i] = (c2 + c, g2, K2)
                    break
            else:
                merged.append((c, g, K))
        return HeckeElement([t for t in merged if t[0]])

    def evaluate(self, g):
        total = SqrtScalar(0)
        for c, rep, K in self.terms:
            if K.member(rep.inverse() * g):
                total = total + c
        return total

    def __add__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return HeckeElement(self.terms + other.terms)

    def __neg__(self):
        return HeckeElement([(-c, g, K) for c, g, K in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return HeckeElement([(c * factor, g, K) for c, g, K in self.terms])

    def translate_left(self, h):
        """ (h.F)(x) = F(h^-1 x) """
        return HeckeElement([(c, h * g, K) for c, g, K in self.terms])

    def convolve_double_coset(self, reps):
        """ F * sum_j ch(r_j K) with vol(K) = 1, for F right K-invariant """
        return HeckeElement([(c, g * r, K) for c, g, K in self.terms for r in reps])

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return not (self - other).canonical().terms

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __len__(self):
        return len(self.canonical().terms)

    def __repr__(self):
        return "HeckeElement(%s)" % " + ".join("%s*ch(%r %r)" % t for t in self.terms)


def _gl2_order(q, level):
    if level == 0:
        return 1
    return q ** (4 * (level - 1)) * (q * q - 1) * (q * q - q)


def _component_count(K, level):
    """ number of residues mod l^level of one component of K """
    field = K.field
    prime, q = K.prime, field.q
    if level == 0:
        return 1
    c_level, d_level, det_level, _ = K.congruences()
    residues = coset_reps(field, level)
    cs = [c for c in residues if c.valuation() >= c_level]
    ds = [d for d in residues if (d - 1).valuation() >= d_level]
    primitive = sum(1 for c in cs for d in ds if c.is_unit() or d.is_unit())
    # (a, b) -> a*d - b*c is onto O/l^level with fibres of size q^level
    if det_level:
        dets = q ** (level - det_level)
    else:
        dets = q ** (level - 1) * (q - 1)
    logger.debug("%r: %d primitive bottom rows mod %d^%d" % (K, primitive, prime, level))
    return primitive * q ** level * dets


def volume(K):
    """ vol(K) with vol of the integral points equal to 1 """
    level = K.level()
    per_component = Fraction(_component_count(K, level), _gl2_order(K.field.q, level))
    if K.case == "split":
        return per_component * per_component
    return per_component


def index(K1, K2):
    """ [K1 : K2] for K2 inside K1 """
    return volume(K1) / volume(K2)


def _diag_window(case, prime, low=-1, high=2):
    field = field_of(case, prime)
    diags = [Mat2.diag(field, Fraction(prime) ** i, Fraction(prime) ** j)
             for i in range(low, high + 1) for j in range(low, high + 1)]
    if case == "split":
        target = Mat2.diag(field, prime, 1)
        return [GroupElt(case, [d, d]) for d in diags] + \
            [GroupElt(case, [target, d]) for d in diags if d != target]
    return [GroupElt(case, [d]) for d in diags]


def _u_ell_element(case, prime):
    field = field_of(case, prime)
    target = Mat2.diag(field, prime, 1)
    return GroupElt(case, [target] * (2 if case == "split" else 1))


def double_coset_grid(K, reps, center, rng, samples=2):
    """ count the cosets r K containing k1 b k2 over a diagonal window of b;
        the count must be 1 exactly when b = center
    """
    failures = []
    for b in _diag_window(K.case, K.prime):
        expected = 1 if b == center else 0
        for _ in range(samples):
            g = K.sample(rng) * b * K.sample(rng)
            count = sum(1 for r in reps if coset_equal(r, g, K))
            if count != expected:
                failures.append((b, g, count, expected))
    return failures


def _u_prime_grid(K, rng, samples=2):
    u_reps = u_ell_decompose(K)
    u_prime = u_prime_reps(K)
    failures = []
    for b in _diag_window(K.case, K.prime):
        for _ in range(samples):
            g = K.sample(rng) * b * K.sample(rng)
            left = sum(1 for r in u_prime if coset_equal(r, g, K))
            right = sum(1 for r in u_reps if coset_equal(r, g.inverse(), K))
            if left != right:
                failures.append((g, left, right))
    return failures


def _perturbed(reps):
    return [GroupElt(r.case, [Mat2(m.field, m.a, m.b + 1, m.c, m.d) for m in r.mats])
            for r in reps]


def _record(results, name, passed, witness=""):
    if not passed:
        logger.error("theprop check %s failed: %s" % (name, witness))
    results.append((name, bool(passed), witness))


def check_theprop_cosets(prime, case, m, n, mutate=False, rng=None):
    """ every matrix and coset identity used to move ch(eta_m K_mn) * U(l) to
        sums over ch(eta_{m+1}^(1 + l^m v) K_mn); a list of (name, passed, witness)
    """
    rng = rng or random.Random(0)
    results = []
    K = CompactOpen("K_mn", case, prime, m=m, n=n)
    field = K.field
    reps = u_ell_decompose(K)
    if mutate:
        reps = _perturbed(reps)
    center = _u_ell_element(case, prime)
    diag_l = rational(prime, prime, 0, 0, 1)

    # (a) the decomposition of K diag(l, 1) K
    distinct = all(not coset_equal(reps[i], reps[j], K)
                   for i in range(len(reps)) for j in range(i))
    _record(results, "u_ell.count", len(reps) == field.q ** (2 if case == "split" else 1),
            "%d representatives" % len(reps))
    _record(results, "u_ell.distinct", distinct)
    landing = []
    for _ in range(8):
        g = K.sample(rng) * center * K.sample(rng)
        hits = sum(1 for r in reps if coset_equal(r, g, K))
        if hits != 1:
            landing.append((g, hits))
    _record(results, "u_ell.cover", not landing, repr(landing[:1]))
    grid = double_coset_grid(K, reps, center, rng)
    _record(results, "u_ell.grid", not grid, repr(grid[:1]))

    # (b) the factorisations of eta_m (l, u; 0, 1)
    eta_m = eta(m, 1, case, prime)
    broken = []
    rewritten = []
    units = coset_reps(field, 1)
    if case == "split":
        pairs = [(u, v) for u in units for v in units]
        for rep, (u, v) in zip(reps, pairs):
            left = eta_m * rep
            literal = GroupElt(case, [Mat2.unipotent(field, u), Mat2.identity(field)]) * \
                GroupElt(case, [Mat2.diag(field, prime, 1),
                                Mat2(field, prime, v + Fraction(1, prime ** m), 0, 1)])
            w = v.to_fraction() - u.to_fraction()
            n_u = rational(prime, 1, u.to_fraction(), 0, 1)
            moved = iota(n_u, case) * iota(diag_l, case) * \
                _eta_shape(m + 1, 1 + prime ** m * w, case, prime)
            if left != literal or left != moved:
                broken.append((u, v, left))
            rewritten.append((n_u, moved, w))
    else:
        for rep, u in zip(reps, units):
            i, j = u.x, u.y
            left = eta_m * rep
            n_i = rational(prime, 1, i, 0, 1)
            literal = iota(n_i, case) * GroupElt(
                case, [Mat2(field, prime, field.delta * (j + Fraction(1, prime ** m)), 0, 1)])
            moved = iota(n_i, case) * iota(diag_l, case) * \
                _eta_shape(m + 1, 1 + prime ** m * j, case, prime)
            if left != literal or left != moved:
                broken.append((i, j, left))
            rewritten.append((n_i, moved, j))
    _record(results, "factorization", not broken, repr(broken[:1]))

    phi_n = standard_phi("phi_1t", n, prime)
    stable = all(act(n_u, phi_n) == phi_n for n_u, _, _ in rewritten)
    _record(results, "unipotent_stabilizes_phi_1n", stable)

    shrunk = act(rational(prime, Fraction(1, prime), 0, 0, 1), phi_n)
    _record(results, "diag_inverse_phi_1n", shrunk == standard_phi("phi_1t_plus", n, prime),
            str(shrunk))
    phi_next = standard_phi("phi_1t", n + 1, prime)
    total = None
    sigmas = [rational(prime, 1, 0, 0, 1 + prime ** n * k) for k in range(prime)]
    for sigma in sigmas:
        term = act(sigma, phi_next)
        total = term if total is None else total + term
    _record(results, "phi_1t_plus_as_sum", total == standard_phi("phi_1t_plus", n, prime))

    ratio = index(CompactOpen("K_H1", "h", prime, t=n), CompactOpen("K_H1", "h", prime, t=n + 1))
    _record(results, "index_K_H1", ratio == prime * prime, str(ratio))

    fixed = []
    for v in range(prime):
        xi = _eta_shape(m + 1, 1 + prime ** m * v, case, prime)
        for sigma in sigmas:
            s = iota(sigma, case)
            if not coset_equal(s * xi, xi, K):
                fixed.append((v, sigma))
    _record(results, "sigma_fixes_xi", not fixed, repr(fixed[:1]))

    convolved = HeckeElement.coset(eta_m, K).convolve_double_coset(reps)
    expected = HeckeElement([(1, moved, K) for _, moved, _ in rewritten])
    _record(results, "hecke_rewrite", convolved == expected)

    # (c) the collapse for m = 0
    if m == 0:
        collapsed = [v for v in range(prime) if K.member(_eta_shape(1, 1 + v, case, prime))]
        _record(results, "collapse_m0", collapsed == [prime - 1], repr(collapsed))

    # (d) conjugation by diag(a, 1)
    conj_broken = []
    eta_next = eta(m + 1, 1, case, prime)
    for v in range(prime):
        a = 1 + prime ** m * v
        if a % prime == 0:
            continue
        d_a = iota(rational(prime, a, 0, 0, 1), case)
        d_inv = iota(rational(prime, Fraction(1, a), 0, 0, 1), case)
        eta_a = eta(m + 1, a, case, prime)
        if d_a * eta_next * d_inv != eta_a or not K.member(d_inv) or \
                not coset_equal(d_a * eta_next, eta_a, K):
            conj_broken.append(a)
        if act(rational(prime, a, 0, 0, 1), phi_n) != phi_n:
            conj_broken.append(("phi", a))
    _record(results, "conjugation", not conj_broken, repr(conj_broken))

    # U'(l)(g) = U(l)(g^-1)
    transposed = _u_prime_grid(K, rng)
    _record(results, "u_prime_transpose", not transposed, repr(transposed[:1]))

    # a perturbed representative must be caught
    wrong = _perturbed(reps[:1])[0]
    caught = coset_equal(wrong, reps[0], K) is False and eta_m * wrong != eta_m * reps[0]
    _record(results, "negative_control", caught)
    return results


