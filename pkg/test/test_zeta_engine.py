# -*- coding: utf-8 -*-
import os, sys
import logging

from fractions import Fraction

import pytest

logging.basicConfig(level=10)
logger = logging.getLogger(__name__)

parentdir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parentdir)

from _common_test import X, inert_params, split_params, seeded

from asaiflach.scalar_tower import PoleAtOrigin, PoleAtPoint
from asaiflach.principal_series import PSParams, UnramChar, l_inverse
from asaiflach.zeta_engine import Borel, CentralMismatch, DegenerateCharacters, \
    abelian_lfactor, asai_lfactor, zeta_closed, shell_coefficients, zeta_oracle, \
    change_of_variable, check_central, z_functional, frak_z, frak_z_limit, \
    norm_relation_characters, norm_relation_sign, central_for, sample_params, \
    thmzita_identities, thecor_identity, thecor_combination, thecor_stated, thecor_gap, \
    asai_inverse_at, vanishing_characters, \
    vanish_abelian_params, vanish_both_params, twisted_asai_inverse, z_at_one

TWISTS = [UnramChar.trivial, lambda prime: UnramChar(prime, -1),
          lambda prime: UnramChar.norm_power(prime, Fraction(1, 2))]

ORACLE_PARAMS = [
    inert_params(3, 1, 2),
    inert_params(2, Fraction(1, 2), -3),
    split_params(2, [1, 2, -1, 3]),
    split_params(3, [Fraction(1, 3), 2, 5, -1]),
]


class TestLFactors(object):

    def test_inert(self):
        factor = asai_lfactor(inert_params(3, 1, 1), UnramChar.trivial(3))

        assert factor.kind == "asai-inert"
        assert factor.value == 1 / ((1 - X(3)) ** 2 * (1 - X(3) ** 2))

    def test_split(self):
        factor = asai_lfactor(split_params(3, [1, 1, 1, 1]), UnramChar.trivial(3))

        assert factor.kind == "split-product"
        assert factor.value == 1 / (1 - X(3)) ** 4

    def test_split_product_of_pairs(self):
        params = split_params(5, [2, 3, 5, 7])
        x = X(5)
        expected = 1 / ((1 - 10 * x) * (1 - 14 * x) * (1 - 15 * x) * (1 - 21 * x))

        assert asai_lfactor(params, UnramChar.trivial(5)).value == expected

    def test_standard(self):
        factor = asai_lfactor(PSParams.from_roots(3, "h", [1, 2]), UnramChar.trivial(3))

        assert factor.kind == "standard"
        assert factor.value == 1 / (1 - 3 * X(3) + 2 * X(3) ** 2)

    def test_twist(self):
        params = inert_params(3, 1, 2)
        plain = asai_lfactor(params, UnramChar.trivial(3)).value

        assert asai_lfactor(params, UnramChar(3, -1)).value == plain.scale(-1)

    def test_abelian(self):
        assert abelian_lfactor(UnramChar(3, 2), 1).value == 3

    def test_abelian_ramified(self):
        assert abelian_lfactor(UnramChar(3, 2, unit_value=-1), 1).value == 1


class TestZetaClosed(object):

    def setup_method(self):
        self.params = inert_params(3, 1, 1)
        self.eta = UnramChar.trivial(3)

    def test_spherical(self):
        closed = zeta_closed(self.params, self.eta, "spherical")

        assert closed.value == 1 - X(3) ** 2
        assert str(closed.value) == "1 - X^2"

    def test_U(self):
        closed = zeta_closed(self.params, self.eta, "U")

        assert closed.value == 3 * (1 - X(3) ** 2) * (2 - X(3))

    def test_borel_unit(self):
        closed = zeta_closed(self.params, self.eta, "borel", Borel(0, 0, 0))

        assert closed.value == 1 - X(3) ** 2
        assert zeta_closed(self.params, self.eta, "borel", (0, 0)).value == closed.value

    def test_borel_covariance(self):
        params = split_params(2, [1, 2, -1, 3])
        eta = UnramChar(2, -1)
        borel = zeta_closed(params, eta, "borel", Borel(0, Fraction(1, 2), 1)).value
        spherical = zeta_closed(params, eta, "spherical").value

        assert borel / spherical == -1 * params.central_value * 2 * X(2)

    def test_errors(self):
        with pytest.raises(ValueError):
            zeta_closed(PSParams.from_roots(3, "h", [1, 2]), self.eta, "spherical")

        with pytest.raises(ValueError):
            zeta_closed(self.params, self.eta, "whittaker")


class TestZetaOracle(object):

    @pytest.mark.parametrize("params", ORACLE_PARAMS)
    def test_spherical_and_U(self, params):
        for twist in TWISTS:
            eta = twist(params.prime)
            for tag in ("spherical", "U"):
                closed = zeta_closed(params, eta, tag).value.series_expand(10)
                assert closed == zeta_oracle(params, eta, tag, 10)

    @pytest.mark.parametrize("params", ORACLE_PARAMS)
    def test_borel(self, params):
        prime = params.prime
        eta = UnramChar(prime, -1)
        for borel in (Borel(0, 0, 2), Borel(1, Fraction(1, prime), 1), Borel(-1, 1, 0)):
            closed = zeta_closed(params, eta, "borel", borel).value.series_expand(8)
            assert closed == zeta_oracle(params, eta, "borel", 8, borel)

    def test_wrong_normalization(self):
        params = split_params(2, [1, 2, -1, 3])
        eta = UnramChar.trivial(2)

        closed = zeta_closed(params, eta, "U").value.series_expand(6)
        assert closed != zeta_oracle(params, eta, "U", 6, coset_scale=8)

    def test_change_of_variable(self):
        for params in ORACLE_PARAMS:
            shifted, direct = change_of_variable(params, UnramChar(params.prime, 2), 8)
            assert shifted == direct

    def test_shell_errors(self):
        params = inert_params(3, 1, 2)

        with pytest.raises(ValueError):
            shell_coefficients(params, UnramChar(3, 1, 1), "spherical", 4)

        with pytest.raises(PoleAtOrigin):
            shell_coefficients(params, UnramChar.trivial(3), "borel", 4, Borel(1, 0, 0))

    def test_order_zero(self):
        params = inert_params(3, 1, 1)

        assert zeta_oracle(params, UnramChar.trivial(3), "spherical", 0) == [1]


class TestFunctionals(object):

    def setup_method(self):
        self.chi, self.psi = norm_relation_characters(3, 1, 0, 1)
        self.params = sample_params(3, "inert", central_for(self.chi, self.psi), seeded(0))

    def test_sample_central(self):
        assert self.params.central_value == 3
        check_central(self.params, self.chi, self.psi)

    def test_central_mismatch(self):
        with pytest.raises(CentralMismatch):
            check_central(inert_params(3, 1, 1), self.chi, self.psi)

    def test_z_spherical(self):
        z = z_functional(self.params, self.chi, self.psi, "spherical")

        assert z == l_inverse(self.psi / self.chi, 1, 2)

    def test_phi_0(self):
        ratio = (self.chi / self.psi).base_value

        assert frak_z(self.chi, self.psi, self.params, "phi_0", "spherical") == \
            1 - ratio * Fraction(1, 3)

    def test_routes(self):
        for family in ("phi_0", "phi_1", "phi_01"):
            for tag in ("spherical", "U"):
                assert frak_z(self.chi, self.psi, self.params, family, tag, "reduced") == \
                    frak_z(self.chi, self.psi, self.params, family, tag, "adjoint")

    @pytest.mark.parametrize("prime, case, k, h, tau", [
        (2, "split", 0, 1, -1),
        (3, "inert", 0, 0, 1),
        (3, "split", 2, 0, -1),
    ])
    def test_routes_norm_relation(self, prime, case, k, h, tau):
        chi, psi = norm_relation_characters(prime, k, h, tau)
        params = sample_params(prime, case, central_for(chi, psi), seeded(k))
        for family in ("phi_0", "phi_1", "phi_01"):
            for tag in ("spherical", "U"):
                assert frak_z_limit(chi, psi, params, family, tag).value == \
                    frak_z_limit(chi, psi, params, family, tag, "adjoint").value

    def test_degenerate(self):
        with pytest.raises(DegenerateCharacters):
            frak_z(UnramChar(3, 3), UnramChar.trivial(3), self.params, "phi_0", "spherical")

    def test_unknown(self):
        with pytest.raises(ValueError):
            frak_z(self.chi, self.psi, self.params, "phi_2", "spherical")

        with pytest.raises(ValueError):
            frak_z(self.chi, self.psi, self.params, "phi_0", "spherical", "direct")


class TestNormRelations(object):

    @pytest.mark.parametrize("prime, case, k, h, tau, ramified", [
        (3, "inert", 1, 0, 1, False),
        (2, "split", 0, 1, -1, False),
        (3, "split", 2, 1, 1, False),
        (2, "inert", 0, 0, 1, False),
        (5, "split", 0, 0, 1, False),
        (3, "inert", 1, 0, 1, True),
    ])
    def test_identities(self, prime, case, k, h, tau, ramified):
        chi, psi = norm_relation_characters(prime, k, h, tau, ramified)
        params = sample_params(prime, case, central_for(chi, psi), seeded(k + h))
        for name, lhs, rhs in thmzita_identities(params, k, h, tau, ramified):
            assert lhs == rhs, name

        lhs, rhs = thecor_identity(params, k, h, tau, ramified)
        assert lhs == rhs

    def test_drop_vanishes(self):
        chi, psi = norm_relation_characters(3, 0, 0, 1)
        params = sample_params(3, "inert", central_for(chi, psi), seeded(2))
        identities = dict((name, (lhs, rhs)) for name, lhs, rhs in
                          thmzita_identities(params, 0, 0, 1))

        assert identities["phi_1.spherical"] == (0, 0)

    def test_ramified_phi_0(self):
        chi, psi = norm_relation_characters(3, 1, 0, 1, ramified=True)
        params = sample_params(3, "split", central_for(chi, psi), seeded(0))

        assert frak_z(chi, psi, params, "phi_0", "spherical") == 0
        assert thecor_identity(params, 1, 0, 1, True) == (0, 0)

    def test_wrong_volume(self):
        params = PSParams(3, "inert", [(0, 3)])

        assert asai_inverse_at(params, 0) == -8
        lhs, rhs = thecor_identity(params, 1, 0, 1)
        assert lhs == rhs
        lhs, rhs = thecor_identity(params, 1, 0, 1, index=3)
        assert lhs != rhs

    @pytest.mark.parametrize("case", ["split", "inert"])
    @pytest.mark.parametrize("h", [0, 1])
    def test_combination_without_twist(self, case, h):
        chi, psi = norm_relation_characters(3, 0, h, -1)
        params = sample_params(3, case, central_for(chi, psi), seeded(0))
        lhs, rhs = thecor_identity(params, 0, h, -1)
        stated = thecor_stated(params, 0, h, -1)

        assert lhs == thecor_combination(params, 0, h, -1)
        assert lhs == rhs
        assert (lhs == stated) == (h == 0)
        assert lhs - stated == thecor_gap(params, 0, h, -1)

    def test_combination_by_hand(self):
        # l = 3, k = 0, tau = -1, h = 1: drop = 2, sign = 1
        chi, psi = norm_relation_characters(3, 0, 1, -1)
        params = PSParams(3, "inert", [(0, central_for(chi, psi))])
        z0 = frak_z(chi, psi, params, "phi_0", "spherical")
        l_as = asai_inverse_at(params, 1)
        lhs, rhs = thecor_identity(params, 0, 1, -1)

        assert lhs == rhs
        assert rhs == (l_as * Fraction(9, 2) - 6) * z0
        assert thecor_stated(params, 0, 1, -1) == l_as * Fraction(3, 2) * z0

    def test_sign(self):
        assert norm_relation_sign(0, 1) == -1
        assert norm_relation_sign(0, -1) == 1
        assert norm_relation_sign(1, 1) == 1
        assert norm_relation_sign(0, 1, ramified=True) == 1

    @pytest.mark.parametrize("prime", [2, 3, 5])
    def test_sign_at_vanishing_value(self, prime):
        chi, psi = norm_relation_characters(prime, 0, 0, 1)
        flipped = l_inverse((psi / chi).with_exponent(0), 1)
        pole = l_inverse(psi / chi, 1, 2)

        assert norm_relation_sign(0, 1) == -1
        assert not flipped
        assert pole.eval_at(1) == 0

        chi, psi = norm_relation_characters(prime, 0, 0, -1)
        assert norm_relation_sign(0, -1) == 1
        assert l_inverse((psi / chi).with_exponent(0), 1)


class TestVanishing(object):

    @pytest.mark.parametrize("prime, case", [(2, "split"), (3, "inert"), (5, "split"),
                                             (2, "inert")])
    def test_both_vanish(self, prime, case):
        chi, psi = vanishing_characters(prime)
        params = vanish_both_params(prime, case)

        assert z_at_one(params, chi, psi, "spherical") == 0
        assert z_at_one(params, chi, psi, "U") == 0

    @pytest.mark.parametrize("prime, case", [(3, "split"), (3, "inert")])
    def test_abelian_only(self, prime, case):
        chi, psi = vanishing_characters(prime)
        params = vanish_abelian_params(prime, case, seeded(5))
        allowed = 1 if case == "inert" else 0

        assert twisted_asai_inverse(params, psi).order_at(1) <= allowed
        for family, tag in (("phi_0", "spherical"), ("phi_1", "spherical"), ("phi_1", "U")):
            limit = frak_z_limit(chi, psi, params, family, tag)
            assert limit.order_a == -1

    @pytest.mark.parametrize("prime, case", [(3, "split"), (3, "inert"), (2, "inert")])
    def test_abelian_only_routes(self, prime, case):
        chi, psi = vanishing_characters(prime)
        params = vanish_abelian_params(prime, case, seeded(5))
        for family, tag in (("phi_0", "spherical"), ("phi_1", "spherical"), ("phi_1", "U")):
            assert frak_z_limit(chi, psi, params, family, tag).value == \
                frak_z_limit(chi, psi, params, family, tag, "adjoint").value

    def test_split_pole(self):
        chi, psi = vanishing_characters(3)
        params = vanish_abelian_params(3, "split", seeded(5))

        with pytest.raises(PoleAtPoint):
            frak_z_limit(chi, psi, params, "phi_0", "U")
