# -*- coding: utf-8 -*-
import os, sys
import logging

from fractions import Fraction

import pytest

logging.basicConfig(level=10)
logger = logging.getLogger(__name__)

parentdir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parentdir)

from _common_test import X, inert_params, split_params

from asaiflach.scalar_tower import RatFuncX, SqrtScalar, ell_power
from asaiflach.local_field import Mat2, field_for
from asaiflach.principal_series import PSParams, UnramChar, UnsupportedSection, \
    SiegelSection, l_inverse, complete_symmetric, whittaker_value, whittaker_recursive, \
    whittaker_U_action, whittaker_U_oracle, volume_k0, siegel_value, intertwine_siegel, \
    pairing_reduced, godement_average, intertwine_spherical, pairing_adjoint
from asaiflach.schwartz import standard_phi, fourier


class TestUnramChar(object):

    def test_values(self):
        chi = UnramChar(3, 2, s_exponent=1)

        assert chi.at_ell() == 2 * X(3)
        assert chi.value(-1) == RatFuncX.monomial(3, Fraction(1, 2), -1)
        assert (chi * chi.inverse()) == UnramChar.trivial(3)

    def test_norm_power(self):
        assert UnramChar.norm_power(5, 1).base_value == Fraction(1, 5)
        assert UnramChar.norm_power(5, Fraction(1, 2)).base_value ** 2 == Fraction(1, 5)

    def test_ramified(self):
        chi = UnramChar(3, 1, unit_value=-1)

        assert chi.is_ramified()
        assert not (chi * chi).is_ramified()
        assert l_inverse(chi, 1) == 1

    def test_l_inverse(self):
        chi = UnramChar(3, 2)

        assert l_inverse(chi, 1) == 1 - Fraction(2, 3) * RatFuncX.constant(3, 1)
        assert l_inverse(chi, 0, 1) == 1 - 2 * X(3)


class TestPSParams(object):

    def test_from_roots(self):
        params = split_params(3, [1, 2, 3, 5])

        assert params.pairs == [(3, 2), (8, 15)]
        assert params.central_value == 30
        assert params.root_pairs() == [(1, 2), (3, 5)]

    def test_field(self):
        assert inert_params(3, 1, 1).q == 9
        assert split_params(3, [1, 1, 1, 1]).q == 3

    def test_rejects(self):
        with pytest.raises(ValueError):
            PSParams(3, "ramified", [(1, 1)])

        with pytest.raises(ValueError):
            PSParams(3, "split", [(1, 1)])

        with pytest.raises(ValueError):
            PSParams(3, "inert", [(1, 0)])


class TestWhittaker(object):

    def test_below_support(self):
        params = inert_params(3, 1, 2)

        assert whittaker_value(params, -1) == 0
        assert whittaker_value(params, 0) == 1
        assert whittaker_U_action(params, -2) == 0

    def test_closed_form(self):
        params = PSParams.from_roots(5, "h", [2, 3])

        assert whittaker_value(params, 2) == Fraction(19, 5)
        assert whittaker_recursive(params, 2) == Fraction(19, 5)

    def test_equal_roots(self):
        params = PSParams.from_roots(3, "h", [1, 1])

        assert whittaker_value(params, 3) == 4 * ell_power(3, Fraction(-3, 2))

    def test_recursive_without_roots(self):
        params = PSParams.from_symmetric(3, "inert", [(0, -9)])

        assert params.roots is None
        assert whittaker_value(params, 2) == Fraction(9, 9)
        assert complete_symmetric(SqrtScalar(0, 0, 3), SqrtScalar(-9, 0, 3), 3) == 0

    def test_U_action(self):
        params = inert_params(3, 1, 2)

        assert whittaker_U_action(params, 0) == 9
        assert whittaker_U_oracle(params, 0) == 9

    @pytest.mark.parametrize("params", [
        inert_params(2, 1, -3),
        inert_params(3, Fraction(1, 2), 2),
        split_params(2, [1, 2, -1, 3]),
        split_params(3, [Fraction(1, 3), 2, 5, -2]),
    ])
    def test_U_oracle(self, params):
        for m in range(-2, 4):
            assert whittaker_U_action(params, m) == whittaker_U_oracle(params, m)

    def test_U_wrong_scale(self):
        params = split_params(2, [1, 2, -1, 3])

        assert whittaker_U_action(params, 0, coset_scale=8) != whittaker_U_oracle(params, 0)


class TestSiegel(object):

    def setup_method(self):
        self.chi = UnramChar(3, 2)
        self.psi = UnramChar.trivial(3)

    def test_phi_0_at_one(self):
        assert siegel_value("phi_t", 0, self.chi, self.psi) == 1

    def test_phi_2_at_one(self):
        assert siegel_value("phi_t", 2, self.chi, self.psi) == Fraction(1, 3)

    def test_outside_support(self):
        point = Mat2(field_for(3), 1, 0, 1, 1)

        assert siegel_value("phi_t", 1, self.chi, self.psi, point) == 0

    def test_ramified_quotient(self):
        chi = UnramChar(3, 2, unit_value=-1)

        assert siegel_value("phi_t", 0, chi, self.psi) == 0

    def test_unsupported(self):
        with pytest.raises(UnsupportedSection):
            siegel_value("phi_1t", 1, self.chi, self.psi)

        with pytest.raises(UnsupportedSection):
            SiegelSection("phi_t", 1, self.chi, self.psi, transformed=True).value()

    def test_intertwine(self):
        section = SiegelSection("phi_t", 1, self.chi.with_exponent(1),
                                self.psi.with_exponent(-1), transformed=True)
        scalar, swapped = intertwine_siegel(section)

        assert scalar == 1 - Fraction(2, 3) * X(3) ** -2
        assert not swapped.transformed
        assert swapped.chi == section.psi
        assert swapped.psi == section.chi


class TestPairing(object):

    def test_volume(self):
        assert volume_k0(3, 0) == 1
        assert volume_k0(3, 1) == Fraction(1, 4)
        assert volume_k0(2, 2) == Fraction(1, 6)

    @pytest.mark.parametrize("t", [0, 1, 2])
    def test_average_untransformed(self, t):
        chi, psi = UnramChar(3, 2, 1), UnramChar(3, -1, -1)
        section = SiegelSection("phi_t", t, chi, psi)

        assert godement_average(standard_phi("phi_t", t, 3), chi, psi) == \
            pairing_reduced(section, 1)

    @pytest.mark.parametrize("t", [0, 1, 2])
    def test_average_transformed(self, t):
        # the K-average of f_{phi^, chi, psi} is the one of f_{phi, psi, chi}
        chi, psi = UnramChar(3, 2, 1), UnramChar(3, -1, -1)
        phi = standard_phi("phi_t", t, 3)

        assert godement_average(fourier(phi), chi, psi) == \
            siegel_value("phi_t", t, psi, chi) * volume_k0(3, t)

    def test_average_ramified(self):
        chi = UnramChar(3, 2, unit_value=-1)

        assert godement_average(standard_phi("phi_t", 0, 3), chi, UnramChar(3, 1)) == 0

    def test_adjoint(self):
        chi, psi = UnramChar(3, 2, 1), UnramChar(3, -1, -1)
        z = 1 - X(3)
        section = SiegelSection("phi_t", 0, chi, psi, transformed=True)

        assert intertwine_spherical(chi / psi) == 1 + Fraction(2, 3) * X(3) ** 2
        assert pairing_adjoint(section, z) == (1 + Fraction(2, 3) * X(3) ** 2) * z

    def test_adjoint_family(self):
        section = SiegelSection("phi_1t", 1, UnramChar(3, 2), UnramChar(3, 1), transformed=True)

        with pytest.raises(UnsupportedSection):
            pairing_adjoint(section, 1)

    def test_transformed(self):
        section = SiegelSection("phi_t", 1, UnramChar(3, 2), UnramChar(3, 1), transformed=True)

        with pytest.raises(UnsupportedSection):
            pairing_reduced(section, 1)
