# -*- coding: utf-8 -*-
import os, sys
import shutil
import tempfile
import logging

from fractions import Fraction

import pytest

logging.basicConfig(level=10)
logger = logging.getLogger(__name__)

parentdir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parentdir)

from _common_test import X, SAMPLE_FORM, sample_form_data, seeded

from asaiflach.scalar_tower import RatFuncX
from asaiflach.euler_factors import InputError, PrimeRecord, HilbertFormInput, \
    parse_form_input, load_form_input, satake_from_eigenvalues, asai_euler_factor, \
    q_polynomial, euler_table, check_corpoli, radical_oracle, polynomial_fractions, \
    is_rational_polynomial, sample_form, perturb_satake


def form_with(record, weight=2, t=0, tprime=0):
    return HilbertFormInput(weight - 2, weight - 2, t, tprime, 1, [record])


class TestParsing(object):

    def setup_method(self):
        self.tmpdir = tempfile.mkdtemp()

    def teardown_method(self):
        shutil.rmtree(self.tmpdir)

    def assert_path(self, data, path):
        with pytest.raises(InputError) as e:
            parse_form_input(data)
        assert e.value.path == path

    def test_sample_file(self):
        form = load_form_input(SAMPLE_FORM)

        assert form.k == 0
        assert form.w == 2
        assert form.j == [0, 1]
        assert form.record(2) == PrimeRecord(2, "split", [0, 0], [1, 1])

        with pytest.raises(KeyError):
            form.record(3)

    def test_primes_sorted(self):
        primes = [{"ell": 5, "splitting": "inert", "a": ["1"], "eps": ["1"]},
                  {"ell": 3, "splitting": "split", "a": ["1", "2"], "eps": ["-1", "1"]}]
        form = parse_form_input(sample_form_data(primes=primes))

        assert [r.ell for r in form.primes] == [3, 5]
        assert form.record(5).a == [Fraction(1)]

    def test_not_json(self):
        path = os.path.join(self.tmpdir, "broken.json")
        with open(path, "w") as fh:
            fh.write("{ weight: ")

        with pytest.raises(InputError) as e:
            load_form_input(path)
        assert e.value.path == "$"

    def test_missing_field(self):
        data = sample_form_data()
        del data["j"]

        self.assert_path(data, "$.j")

    def test_unknown_field(self):
        self.assert_path(sample_form_data(level=1), "$.level")

    def test_weight(self):
        self.assert_path(sample_form_data(weight=[2]), "$.weight")
        self.assert_path(sample_form_data(weight=[1, 3]), "$.weight")
        self.assert_path(sample_form_data(weight=[2, 3]), "$.weight")

    def test_twist_balance(self):
        self.assert_path(sample_form_data(weight=[4, 2], t=0, tprime=0), "$.tprime")

        form = parse_form_input(sample_form_data(weight=[4, 2], t=0, tprime=1))
        assert form.w == 4

    def test_not_prime(self):
        primes = [{"ell": 4, "splitting": "split", "a": ["0", "0"], "eps": ["1", "1"]}]

        self.assert_path(sample_form_data(primes=primes), "$.primes[0].ell")

    def test_divides_level(self):
        self.assert_path(sample_form_data(level_norm=6), "$.primes[0].ell")

    def test_splitting(self):
        primes = [{"ell": 2, "splitting": "ramified", "a": ["0"], "eps": ["1"]}]

        self.assert_path(sample_form_data(primes=primes), "$.primes[0].splitting")

    def test_value_count(self):
        primes = [{"ell": 2, "splitting": "inert", "a": ["0", "0"], "eps": ["1"]}]

        self.assert_path(sample_form_data(primes=primes), "$.primes[0].a")

    def test_rationals_are_strings(self):
        primes = [{"ell": 2, "splitting": "split", "a": [0, "1/2"], "eps": ["1", "1"]}]
        self.assert_path(sample_form_data(primes=primes), "$.primes[0].a[0]")

        primes = [{"ell": 2, "splitting": "split", "a": ["0", "1/x"], "eps": ["1", "1"]}]
        self.assert_path(sample_form_data(primes=primes), "$.primes[0].a[1]")

    def test_eps_unit(self):
        primes = [{"ell": 2, "splitting": "split", "a": ["0", "0"], "eps": ["1", "0"]}]

        self.assert_path(sample_form_data(primes=primes), "$.primes[0].eps[1]")

    def test_j_values(self):
        self.assert_path(sample_form_data(j=[0, -1]), "$.j[1]")
        self.assert_path(sample_form_data(j="0"), "$.j")

    def test_str(self):
        assert str(InputError(("$.j", "expected a list"))) == "('$.j', 'expected a list')"


class TestEulerFactor(object):

    def test_split_sample(self):
        form = load_form_input(SAMPLE_FORM)
        P = asai_euler_factor(form, 2)

        assert P == (1 - 4 * X(2) ** 2) ** 2
        assert polynomial_fractions(P) == [1, 0, -8, 0, 16]
        assert is_rational_polynomial(P)

    def test_inert(self):
        record = PrimeRecord(3, "inert", [Fraction(0)], [Fraction(1)])
        P = asai_euler_factor(form_with(record), 3)

        assert P == 1 - 81 * X(3) ** 4

    def test_split_leading_terms(self):
        record = PrimeRecord(2, "split", [Fraction(1), Fraction(2)], [Fraction(1), Fraction(1)])
        coefficients = polynomial_fractions(asai_euler_factor(form_with(record), 2))

        assert coefficients[0] == 1
        assert coefficients[1] == -2
        assert coefficients[4] == 16
        assert coefficients == radical_oracle(record, 2)

    def test_twist_scaling(self):
        record = PrimeRecord(3, "inert", [Fraction(2)], [Fraction(1)])
        # both have w = 4
        plain = asai_euler_factor(form_with(record, weight=4), 3)
        twisted = asai_euler_factor(form_with(record, weight=2, t=1, tprime=1), 3)

        assert twisted == plain.scale(Fraction(1, 9))

    def test_q_polynomial(self):
        P = 1 - 4 * X(2) ** 2

        assert q_polynomial(P, 0, 2) == 1 - X(2) ** 2
        assert q_polynomial(P, 1, 2) == 1 - Fraction(1, 4) * X(2) ** 2
        assert q_polynomial(RatFuncX.constant(2, 1), 3, 2) == 1

        with pytest.raises(ValueError):
            q_polynomial(P, -1, 2)

    def test_table(self):
        table = euler_table(load_form_input(SAMPLE_FORM))

        assert len(table) == 1
        row = table[0]
        assert (row.ell, row.splitting) == (2, "split")
        assert [j for j, _ in row.rows] == [0, 1]
        assert row.rows[0][1] == (1 - X(2) ** 2) ** 2


class TestCorpoli(object):

    def test_sample(self):
        passed, reciprocal, substituted = check_corpoli(load_form_input(SAMPLE_FORM), 2)

        assert passed
        assert reciprocal == (1 - X(2) ** 2) ** 2

    def test_substituted_from_roots(self):
        passed, reciprocal, substituted = check_corpoli(load_form_input(SAMPLE_FORM), 2)

        assert substituted == (1 - X(2) ** 2) ** 2

    @pytest.mark.parametrize("prime, splitting, weight", [
        (2, "split", 2), (3, "split", 3), (3, "inert", 2), (5, "inert", 3),
    ])
    def test_perturbed_satake(self, prime, splitting, weight):
        form = sample_form(prime, splitting, weight, seeded(prime))
        params = satake_from_eigenvalues(form.record(prime), form.w)
        passed, reciprocal, substituted = check_corpoli(form, prime, perturb_satake(params))

        assert not passed
        assert reciprocal != substituted
        assert check_corpoli(form, prime, params)[0]

    def test_perturbed_sample(self):
        form = load_form_input(SAMPLE_FORM)
        params = perturb_satake(satake_from_eigenvalues(form.record(2), form.w))

        assert params.pairs == [(1, 1), (0, 1)]
        assert not check_corpoli(form, 2, params)[0]

    def test_inert(self):
        record = PrimeRecord(3, "inert", [Fraction(0)], [Fraction(1)])

        assert check_corpoli(form_with(record), 3)[0]

    def test_satake_split(self):
        record = PrimeRecord(2, "split", [Fraction(0), Fraction(0)], [Fraction(1), Fraction(1)])
        params = satake_from_eigenvalues(record, 2)

        assert params.pairs == [(0, 1), (0, 1)]

    @pytest.mark.parametrize("prime, splitting, weight", [
        (2, "split", 2), (3, "split", 3), (5, "split", 4),
        (2, "inert", 2), (3, "inert", 3), (5, "inert", 4),
    ])
    def test_random_forms(self, prime, splitting, weight):
        rng = seeded(weight)
        for _ in range(3):
            form = sample_form(prime, splitting, weight, rng)
            record = form.record(prime)

            assert check_corpoli(form, prime)[0]
            P = asai_euler_factor(form, prime)
            assert polynomial_fractions(P) == radical_oracle(record, form.w)

    def test_corrupted_eps(self):
        record = PrimeRecord(2, "split", [Fraction(1), Fraction(2)], [Fraction(1), Fraction(1)])
        bad = PrimeRecord(2, "split", record.a, [Fraction(2), Fraction(2)])

        assert asai_euler_factor(form_with(bad), 2) != asai_euler_factor(form_with(record), 2)
