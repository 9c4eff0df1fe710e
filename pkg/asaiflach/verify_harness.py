# -*- coding: utf-8 -*-
import json
import random
import logging

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from asaiflach.scalar_tower import RatFuncX, PoleAtPoint
from asaiflach.local_field import Mat2, field_for
from asaiflach.schwartz import SchwartzFn, standard_phi, act, fourier
from asaiflach.principal_series import PSParams, UnramChar, whittaker_value, \
    whittaker_recursive, whittaker_U_action, whittaker_U_oracle, volume_k0
from asaiflach.hecke_cosets import CompactOpen, check_theprop_cosets, index
from asaiflach.zeta_engine import Borel, zeta_closed, zeta_oracle, change_of_variable, \
    frak_z, frak_z_limit, thmzita_identities, thecor_identity, thecor_stated, thecor_gap, \
    norm_relation_characters, central_for, sample_params, vanishing_characters, \
    vanish_abelian_params, vanish_both_params, z_at_one
from asaiflach.euler_factors import check_corpoli, asai_euler_factor, q_polynomial, \
    radical_oracle, polynomial_fractions, is_rational_polynomial, sample_form, \
    satake_from_eigenvalues, perturb_satake, PrimeRecord, HilbertFormInput

logger = logging

PASS = "pass"
FAIL = "fail"

SUITES = ("whittaker", "zeta_oracle", "thmzita", "thecor", "theprop", "schwartz",
          "corpoli", "vanishing")

MUTATIONS = ("whittaker-normalization", "volume", "coset-representative")


class CheckReport(object):
    """ the outcome of one named check for one parameter tuple """
    __slots__ = ("check_id", "params", "status", "witness", "seed")

    def __init__(self, check_id, params, status, witness="", seed=0):
        self.check_id = check_id
        self.params = dict(params)
        self.status = status
        self.witness = witness
        self.seed = seed

    @property
    def passed(self):
        return self.status == PASS

    def sort_key(self):
        return (self.check_id, json.dumps(self.params, sort_keys=True))

    def to_json(self):
        return {
            "check_id": self.check_id,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, data):
        return cls(data["check_id"], data["params"], data["status"], data["witness"],
                   data["seed"])

    def __eq__(self, other):
        if not isinstance(other, CheckReport):
            return NotImplemented
        return self.to_json() == other.to_json()

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __repr__(self):
        return "CheckReport(%s %s %s)" % (self.check_id, self.params, self.status)


Task = namedtuple("Task", "suite params run")


def _compare(name, lhs, rhs):
    if lhs == rhs:
        return (name, True, "")
    return (name, False, "%s != %s" % (lhs, rhs))


def _rng(seed, suite, params):
    return random.Random("%s:%s:%s" % (seed, suite, json.dumps(params, sort_keys=True)))


def _random_roots(prime, count, rng):
    """ distinct non-zero rational Satake roots """
    roots = []
    while len(roots) < count:
        root = Fraction(rng.randint(-7, 7), rng.randint(1, 3))
        if root and root not in roots:
            roots.append(root)
    return roots


def _random_params(prime, case, rng):
    return PSParams.from_roots(prime, case, _random_roots(prime, 4 if case == "split" else 2,
                                                          rng))


# whittaker

def _whittaker_task(prime, case, sample, m_range, mutations):
    def run(rng):
        params = _random_params(prime, case, rng)
        coset_scale = None
        if "whittaker-normalization" in mutations:
            coset_scale = prime ** 3
        results = [_compare("unit_value", whittaker_value(params, 0), 1)]
        for m in m_range:
            results.append(_compare("closed_vs_recursive.m%d" % m,
                                    whittaker_value(params, m),
                                    whittaker_recursive(params, m)))
            results.append(_compare("U_action.m%d" % m,
                                    whittaker_U_action(params, m, coset_scale),
                                    whittaker_U_oracle(params, m)))
        return results
    return Task("whittaker", {"ell": prime, "case": case, "sample": sample}, run)


def suite_whittaker(config, mutations=()):
    return [_whittaker_task(prime, case, sample, config.whittaker_range, mutations)
            for prime in config.primes for case in config.cases
            for sample in range(config.getint("verify", "samples"))]


# zeta_oracle

def _twists(prime):
    return [("trivial", UnramChar.trivial(prime)),
            ("norm_half", UnramChar.norm_power(prime, Fraction(1, 2))),
            ("sign", UnramChar(prime, -1))]


def _zeta_task(prime, case, sample, order, mutations):
    def run(rng):
        params = _random_params(prime, case, rng)
        coset_scale = None
        if "whittaker-normalization" in mutations:
            coset_scale = prime ** 3
        results = []
        for name, eta in _twists(prime):
            for tag in ("spherical", "U"):
                closed = zeta_closed(params, eta, tag).value.series_expand(order)
                oracle = zeta_oracle(params, eta, tag, order, coset_scale=coset_scale)
                results.append(_compare("%s.%s" % (tag, name), closed, oracle))
            borel = Borel(0, Fraction(1, prime), 1)
            closed = zeta_closed(params, eta, "borel", borel)
            factor = closed.value / zeta_closed(params, eta, "spherical").value
            expected = (eta.value(1) * params.central_value * prime) \
                * RatFuncX.variable(prime)
            results.append(_compare("borel_covariance.%s" % name, factor, expected))
            results.append(_compare("borel.%s" % name, closed.value.series_expand(order),
                                    zeta_oracle(params, eta, "borel", order, borel)))
            shifted, direct = change_of_variable(params, eta, order)
            results.append(_compare("change_of_variable.%s" % name, shifted, direct))
        return results
    return Task("zeta_oracle", {"ell": prime, "case": case, "sample": sample}, run)


def suite_zeta_oracle(config, mutations=()):
    order = config.getint("verify", "series_order")
    return [_zeta_task(prime, case, sample, order, mutations)
            for prime in config.primes for case in config.cases
            for sample in range(config.getint("verify", "samples"))]


# thmzita and thecor

def _norm_relation_grid(config):
    for prime in config.primes:
        for case in config.cases:
            for k in config.k_values:
                for h in config.h_values:
                    for tau in config.tau_values:
                        yield prime, case, k, h, tau, False
            yield prime, case, 1, 0, 1, True


def _grid_params(prime, case, k, h, tau, ramified):
    return {"ell": prime, "case": case, "k": k, "h": h, "tau": tau, "ramified": ramified}


def _thmzita_task(prime, case, k, h, tau, ramified):
    def run(rng):
        chi, psi = norm_relation_characters(prime, k, h, tau, ramified)
        params = sample_params(prime, case, central_for(chi, psi), rng)
        results = [_compare(name, lhs, rhs) for name, lhs, rhs in
                   thmzita_identities(params, k, h, tau, ramified)]
        for family, tag in (("phi_0", "spherical"), ("phi_1", "spherical"), ("phi_1", "U")):
            results.append(_compare(
                "route.%s.%s" % (family, tag),
                frak_z(chi, psi, params, family, tag, "reduced"),
                frak_z(chi, psi, params, family, tag, "adjoint")))
        return results
    return Task("thmzita", _grid_params(prime, case, k, h, tau, ramified), run)


def suite_thmzita(config, mutations=()):
    return [_thmzita_task(*point) for point in _norm_relation_grid(config)]


def _index_k0(prime):
    full = CompactOpen("full_integral", "h", prime)
    return index(full, CompactOpen("K_H0", "h", prime, t=1))


def _thecor_task(prime, case, k, h, tau, ramified, mutations):
    def run(rng):
        chi, psi = norm_relation_characters(prime, k, h, tau, ramified)
        params = sample_params(prime, case, central_for(chi, psi), rng)
        k0_index = prime if "volume" in mutations else _index_k0(prime)
        lhs, rhs = thecor_identity(params, k, h, tau, ramified, k0_index)
        results = [_compare("combination", lhs, rhs)]
        stated = thecor_stated(params, k, h, tau, ramified)
        if h == 0:
            results.append(_compare("stated_form", lhs, stated))
        else:
            gap = thecor_gap(params, k, h, tau, ramified)
            if gap:
                logger.warning("thecor %s: the usual form misses the combination by %s"
                               % (_grid_params(prime, case, k, h, tau, ramified), gap))
            results.append(_compare("stated_form_gap", lhs - stated, gap))
        return results
    return Task("thecor", _grid_params(prime, case, k, h, tau, ramified), run)


def phi_01_decomposition(prime):
    """ phi_01 as the sum of diag(1, d) phi_11 over (Z/l)^x """
    field = field_for(prime, 1)
    total = SchwartzFn(prime)
    for d in range(1, prime):
        total = total + act(Mat2.diag(field, 1, d), standard_phi("phi_1t", 1, prime))
    return total


def _thecor_facts_task(prime, mutations):
    def run(rng):
        k0_index = prime if "volume" in mutations else _index_k0(prime)
        return [
            _compare("index_K0", k0_index, prime + 1),
            _compare("volume_K0", 1 / volume_k0(prime, 1), k0_index),
            _compare("phi_01_decomposition", phi_01_decomposition(prime),
                     standard_phi("phi_01", 1, prime)),
        ]
    return Task("thecor", {"ell": prime}, run)


def suite_thecor(config, mutations=()):
    tasks = [_thecor_task(*(point + (mutations, ))) for point in _norm_relation_grid(config)]
    tasks += [_thecor_facts_task(prime, mutations) for prime in config.primes]
    return tasks


# theprop

def _theprop_task(prime, case, m, n, mutations):
    def run(rng):
        return check_theprop_cosets(prime, case, m, n,
                                    mutate="coset-representative" in mutations, rng=rng)
    return Task("theprop", {"ell": prime, "case": case, "m": m, "n": n}, run)


def suite_theprop(config, mutations=()):
    max_n = config.getint("theprop", "max_n")
    return [_theprop_task(prime, case, m, n, mutations)
            for prime in config.prime_list("theprop")
            for case in config.cases
            for n in range(1, max_n + 1) for m in range(n)]


# schwartz

def phi_1t_decomposition(prime, t, T):
    """ phi_1t as the sum of phi_1T over K_H1(l^t)/K_H1(l^T) representatives """
    field = field_for(prime, 1)
    fine = standard_phi("phi_1t", T, prime)
    total = SchwartzFn(prime)
    step = prime ** t
    for i in range(prime ** (T - t)):
        for j in range(prime ** (T - t)):
            d = Fraction(1, 1 + step * j)
            total = total + act(Mat2(field, 1, 0, -step * i * d, d), fine)
    return total


def _random_schwartz(prime, rng):
    terms = []
    for _ in range(rng.randint(1, 3)):
        level = rng.randint(0, 1)
        a = Fraction(rng.randrange(prime ** 2), prime ** rng.randint(0, 1))
        b = Fraction(rng.randrange(prime ** 2), prime ** rng.randint(0, 1))
        terms.append((rng.randint(-3, 3) or 1, (a, b), level))
    return SchwartzFn(prime, terms)


def _schwartz_task(prime, max_t, corpus):
    def run(rng):
        field = field_for(prime, 1)
        results = [
            _compare("fourier.phi_0", fourier(standard_phi("phi_t", 0, prime)),
                     standard_phi("phi_t", 0, prime)),
            _compare("fourier.lattice",
                     fourier(SchwartzFn.indicator(prime, 0, 0, 1)),
                     SchwartzFn.indicator(prime, 0, 0, -1) * Fraction(1, prime ** 2)),
            _compare("phi_01_decomposition", phi_01_decomposition(prime),
                     standard_phi("phi_01", 1, prime)),
        ]
        for t in range(1, max_t + 1):
            for T in range(t + 1, max_t + 1):
                results.append(_compare("phi_1t_decomposition.t%d.T%d" % (t, T),
                                        phi_1t_decomposition(prime, t, T),
                                        standard_phi("phi_1t", t, prime)))
        for t in range(0, max_t + 1):
            phi = standard_phi("phi_t", t, prime)
            g = CompactOpen("K_H0", "h", prime, t=t).sample(rng).mats[0]
            results.append(_compare("stabilizer.phi_t.t%d" % t, act(g, phi), phi))
            if t >= 1:
                phi = standard_phi("phi_1t", t, prime)
                g = CompactOpen("K_H1", "h", prime, t=t).sample(rng).mats[0]
                results.append(_compare("stabilizer.phi_1t.t%d" % t, act(g, phi), phi))
        for i in range(corpus):
            phi = _random_schwartz(prime, rng)
            other = _random_schwartz(prime, rng)
            g1 = CompactOpen("full_integral", "h", prime).sample(rng).mats[0]
            g2 = Mat2.diag(field, prime, 1) * \
                CompactOpen("full_integral", "h", prime).sample(rng).mats[0]
            results.append(_compare("fourier_involution.%d" % i, fourier(fourier(phi)), phi))
            results.append(_compare("fourier_linear.%d" % i, fourier(phi + other),
                                    fourier(phi) + fourier(other)))
            results.append(_compare("action_composition.%d" % i, act(g1, act(g2, phi)),
                                    act(g1 * g2, phi)))
        return results
    return Task("schwartz", {"ell": prime}, run)


def suite_schwartz(config, mutations=()):
    return [_schwartz_task(prime, config.getint("schwartz", "max_t"),
                           config.getint("schwartz", "fourier_corpus"))
            for prime in config.prime_list("schwartz")]


# corpoli

def _corpoli_task(prime, splitting, weight, samples):
    def run(rng):
        results = []
        for sample in range(samples):
            form = sample_form(prime, splitting, weight, rng)
            passed, reciprocal, substituted = check_corpoli(form, prime)
            results.append(("reciprocal.%d" % sample, passed,
                            "" if passed else "%s != %s" % (reciprocal, substituted)))
            P = asai_euler_factor(form, prime)
            record = form.record(prime)
            results.append(_compare("radical_oracle.%d" % sample, polynomial_fractions(P),
                                    radical_oracle(record, form.w, form.t, form.tprime)))
            results.append(("rational.%d" % sample, is_rational_polynomial(P), str(P)))
            results.append(_compare("q_composition.%d" % sample,
                                    q_polynomial(q_polynomial(P, 0, prime), 0, prime),
                                    P.scale(Fraction(1, prime ** 2))))
            corrupted = PrimeRecord(
                prime, splitting, record.a, [2 * e for e in record.eps])
            bad = HilbertFormInput(form.k, form.kprime, form.t, form.tprime,
                                   form.level_norm, [corrupted])
            results.append(("negative_control.%d" % sample,
                            asai_euler_factor(bad, prime) != P, str(P)))
            perturbed = perturb_satake(satake_from_eigenvalues(record, form.w))
            results.append(("perturbed_satake.%d" % sample,
                            not check_corpoli(form, prime, perturbed)[0], str(perturbed)))
        return results
    return Task("corpoli", {"ell": prime, "case": splitting, "weight": weight}, run)


def suite_corpoli(config, mutations=()):
    samples = config.getint("corpoli", "samples")
    return [_corpoli_task(prime, splitting, weight, samples)
            for prime in config.prime_list("corpoli")
            for splitting in config.cases
            for weight in config.weights]


# vanishing

def _vanishing_task(prime, case):
    def run(rng):
        chi, psi = vanishing_characters(prime)
        results = []
        params = vanish_abelian_params(prime, case, rng)
        for family, tag in (("phi_0", "spherical"), ("phi_1", "spherical"), ("phi_1", "U")):
            limit = frak_z_limit(chi, psi, params, family, tag)
            results.append(("limit_exists.%s.%s" % (family, tag), True, str(limit.value)))
            results.append(_compare("route.%s.%s" % (family, tag), limit.value,
                                    frak_z_limit(chi, psi, params, family, tag,
                                                 "adjoint").value))
        try:
            frak_z_limit(chi, psi, params, "phi_0", "U")
            pole = False
        except PoleAtPoint:
            pole = True
        # only the split Asai factor leaves the pole of L(psi/chi, 2s+1) uncancelled
        results.append(("pole.phi_0.U", pole == (case == "split"), str(params)))
        both = vanish_both_params(prime, case)
        for tag in ("spherical", "U"):
            results.append(_compare("z_vanishes.%s" % tag, z_at_one(both, chi, psi, tag), 0))
        return results
    return Task("vanishing", {"ell": prime, "case": case}, run)


def suite_vanishing(config, mutations=()):
    return [_vanishing_task(prime, case) for prime in config.primes for case in config.cases]


SUITE_BUILDERS = {
    "whittaker": suite_whittaker,
    "zeta_oracle": suite_zeta_oracle,
    "thmzita": suite_thmzita,
    "thecor": suite_thecor,
    "theprop": suite_theprop,
    "schwartz": suite_schwartz,
    "corpoli": suite_corpoli,
    "vanishing": suite_vanishing,
}


def execute(task, seed):
    """ runs one task; an exception becomes a single failing report """
    rng = _rng(seed, task.suite, task.params)
    try:
        results = task.run(rng)
    except Exception as e:
        logger.error("%s %s raised %s" % (task.suite, task.params, e))
        return [CheckReport("%s.error" % task.suite, task.params, FAIL,
                            "%s: %s" % (type(e).__name__, e), seed)]
    reports = []
    for name, passed, witness in results:
        if not passed:
            logger.error("%s.%s failed for %s: %s" % (task.suite, name, task.params, witness))
        reports.append(CheckReport("%s.%s" % (task.suite, name), task.params,
                                   PASS if passed else FAIL,
                                   "" if passed else witness, seed))
    logger.debug("%s %s: %d checks" % (task.suite, task.params, len(reports)))
    return reports


def run_suites(config, suites=SUITES, seed=0, mutations=(), workers=None):
    """ builds the tasks of every requested suite and runs them concurrently;
        the reports come back sorted by check id and parameters
    """
    unknown = [m for m in mutations if m not in MUTATIONS]
    if unknown:
        raise ValueError("unknown mutation %r" % unknown[0])
    tasks = []
    for suite in suites:
        if suite not in SUITE_BUILDERS:
            raise ValueError("unknown suite %r" % (suite, ))
        suite_tasks = SUITE_BUILDERS[suite](config, tuple(mutations))
        logger.info("suite %s: %d parameter tuples" % (suite, len(suite_tasks)))
        tasks += suite_tasks
    workers = workers or config.getint("verify", "workers")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        batches = list(executor.map(lambda task: execute(task, seed), tasks))
    reports = [report for batch in batches for report in batch]
    reports.sort(key=CheckReport.sort_key)
    failed = sum(1 for r in reports if not r.passed)
    logger.info("%d checks, %d failed" % (len(reports), failed))
    return reports


def summarize(reports):
    """ per-suite (passed, failed) counts """
    summary = {}
    for report in reports:
        suite = report.check_id.split(".", 1)[0]
        passed, failed = summary.get(suite, (0, 0))
        if report.passed:
            passed += 1
        else:
            failed += 1
        summary[suite] = (passed, failed)
    return summary
