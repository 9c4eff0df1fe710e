# -*- coding: utf-8 -*-
import os, sys
import logging

from fractions import Fraction

import pytest

logging.basicConfig(level=10)
logger = logging.getLogger(__name__)

parentdir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parentdir)

from _common_test import seeded

from asaiflach.local_field import Mat2
from asaiflach.hecke_cosets import GroupElt, CompactOpen, HeckeElement, BadSubgroup, \
    field_of, iota, rational, member, coset_equal, eta, u_ell_decompose, u_prime_reps, \
    volume, index, check_theprop_cosets, _eta_shape


def diag_l(case, prime):
    field = field_of(case, prime)
    return GroupElt(case, [Mat2.diag(field, prime, 1)] * (2 if case == "split" else 1))


class TestMembership(object):

    def test_diag_not_integral(self):
        assert not member(diag_l("inert", 3), CompactOpen("full_integral", "inert", 3))

    def test_eta_0(self):
        assert member(eta(0, 1, "split", 3), CompactOpen("full_integral", "split", 3))

    def test_eta_collapse(self):
        K = CompactOpen("K_mn", "split", 3, m=0, n=1)

        assert not member(eta(1, 1, "split", 3), K)
        assert member(iota(rational(3, 1, 0, 0, 1), "split"), K)
        # 1 + v = l for v = -1 mod l
        assert member(_eta_shape(1, 3, "split", 3), K)

    def test_eta_needs_unit(self):
        with pytest.raises(ValueError):
            eta(1, 3, "inert", 3)

        with pytest.raises(ValueError):
            eta(1, 1, "h", 3)

    def test_k_mn_bounds(self):
        with pytest.raises(ValueError):
            CompactOpen("K_mn", "split", 3, m=2, n=1)

        with pytest.raises(ValueError):
            CompactOpen("K_nope", "split", 3)

    @pytest.mark.parametrize("tag, kw", [
        ("K_mn", {"m": 1, "n": 2}),
        ("K_H0", {"t": 2}),
        ("K_H1", {"t": 1}),
        ("K_ell1", {}),
        ("K_G0", {}),
    ])
    def test_samples_are_members(self, tag, kw):
        rng = seeded(3)
        for case in ("split", "inert"):
            K = CompactOpen(tag, case, 2, **kw)
            for _ in range(5):
                g = K.sample(rng)
                assert member(g, K)
                assert all(m.d.is_unit() for m in g.mats)

    def test_singular(self):
        field = field_of("inert", 3)

        with pytest.raises(ValueError):
            GroupElt("inert", [Mat2(field, 1, 1, 1, 1)])


class TestDecomposition(object):

    def test_inert_two(self):
        K = CompactOpen("K_mn", "inert", 2, m=0, n=1)
        reps = u_ell_decompose(K)

        assert len(reps) == 4
        assert all(not coset_equal(reps[i], reps[j], K)
                   for i in range(len(reps)) for j in range(i))

    def test_split_three(self):
        K = CompactOpen("K_mn", "split", 3, m=0, n=1)

        assert len(u_ell_decompose(K)) == 9
        assert len(u_prime_reps(K)) == 9

    def test_bad_subgroup(self):
        with pytest.raises(BadSubgroup):
            u_ell_decompose(CompactOpen("full_integral", "inert", 3))

        with pytest.raises(BadSubgroup):
            u_prime_reps(CompactOpen("K_H1", "split", 3, t=0))


class TestVolume(object):

    def test_k0(self):
        full = CompactOpen("full_integral", "h", 3)

        assert volume(CompactOpen("K_H0", "h", 3, t=1)) == Fraction(1, 4)
        assert volume(CompactOpen("K_H0", "h", 2, t=2)) == Fraction(1, 6)
        assert index(full, CompactOpen("K_H0", "h", 3, t=1)) == 4

    def test_k1_index(self):
        ratio = index(CompactOpen("K_H1", "h", 3, t=1), CompactOpen("K_H1", "h", 3, t=2))

        assert ratio == 9

    def test_split_squares(self):
        h = volume(CompactOpen("K_G0", "h", 3))

        assert volume(CompactOpen("K_G0", "split", 3)) == h * h


class TestHeckeElement(object):

    def setup_method(self):
        self.K = CompactOpen("K_mn", "inert", 3, m=0, n=1)
        self.g = diag_l("inert", 3)

    def test_canonical_merges(self):
        k = self.K.sample(seeded(1))
        F = HeckeElement.coset(self.g, self.K) + HeckeElement.coset(self.g * k, self.K, 2)

        assert len(F) == 1
        assert F.canonical().terms[0][0] == 3

    def test_evaluate(self):
        F = HeckeElement.coset(self.g, self.K)

        assert F.evaluate(self.g) == 1
        assert F.evaluate(GroupElt.identity("inert", 3)) == 0

    def test_cancellation(self):
        F = HeckeElement.coset(self.g, self.K)

        assert F - F == HeckeElement()
        assert F.scale(2) == F + F

    def test_double_coset(self):
        reps = u_ell_decompose(self.K)
        F = HeckeElement.double_coset(self.K, reps)

        assert len(F) == len(reps)
        assert all(F.evaluate(r) == 1 for r in reps)

    def test_translate(self):
        F = HeckeElement.coset(GroupElt.identity("inert", 3), self.K)

        assert F.translate_left(self.g) == HeckeElement.coset(self.g, self.K)


class TestThepropCosets(object):

    def test_inert_two(self):
        results = check_theprop_cosets(2, "inert", 1, 2, rng=seeded(0))

        assert results
        assert [name for name, passed, _ in results if not passed] == []

    def test_split_three(self):
        results = check_theprop_cosets(3, "split", 0, 1, rng=seeded(0))
        names = [name for name, _, _ in results]

        assert "collapse_m0" in names
        assert [name for name, passed, _ in results if not passed] == []

    def test_perturbed_representative(self):
        results = check_theprop_cosets(2, "split", 0, 1, mutate=True, rng=seeded(0))

        assert [name for name, passed, _ in results if not passed]
