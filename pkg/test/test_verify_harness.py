# -*- coding: utf-8 -*-
import os, sys
import logging

import pytest

logging.basicConfig(level=10)
logger = logging.getLogger(__name__)

parentdir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parentdir)

from _common_test import seeded

from asaiflach.verify_config import VerifyConfig
from asaiflach.verify_harness import CheckReport, Task, PASS, FAIL, SUITES, SUITE_BUILDERS, \
    execute, run_suites, summarize, phi_01_decomposition, phi_1t_decomposition
from asaiflach.schwartz import standard_phi


def failing(reports):
    return [r.check_id for r in reports if not r.passed]


class HarnessBase(object):

    def setup_method(self):
        # a single prime and case keeps the suites small
        self.config = VerifyConfig(os.path.join(parentdir, "test/test_values.conf"))

    def teardown_method(self):
        self.config = None


class TestCheckReport(object):

    def test_json(self):
        report = CheckReport("thmzita.phi_1.U", {"ell": 3, "case": "inert"}, FAIL, "1 != 2", 7)

        assert CheckReport.from_json(report.to_json()) == report
        assert not report.passed
        assert report.to_json()["seed"] == 7

    def test_sort_key(self):
        a = CheckReport("a.x", {"ell": 3}, PASS)
        b = CheckReport("a.x", {"ell": 2}, PASS)
        c = CheckReport("a.w", {"ell": 5}, PASS)

        assert sorted([a, b, c], key=CheckReport.sort_key) == [c, b, a]

    def test_summarize(self):
        reports = [CheckReport("a.x", {}, PASS), CheckReport("a.y", {}, FAIL),
                   CheckReport("b.x", {}, PASS)]

        assert summarize(reports) == {"a": (1, 1), "b": (1, 0)}


class TestExecute(object):

    def test_results(self):
        task = Task("demo", {"ell": 2}, lambda rng: [("ok", True, ""), ("bad", False, "why")])
        reports = execute(task, 3)

        assert [r.check_id for r in reports] == ["demo.ok", "demo.bad"]
        assert [r.status for r in reports] == [PASS, FAIL]
        assert reports[0].witness == ""
        assert reports[1].witness == "why"
        assert all(r.seed == 3 for r in reports)

    def test_exception(self):
        def run(rng):
            raise ZeroDivisionError("boom")

        reports = execute(Task("demo", {"ell": 2}, run), 0)

        assert len(reports) == 1
        assert reports[0].check_id == "demo.error"
        assert not reports[0].passed
        assert "ZeroDivisionError" in reports[0].witness

    def test_seeded(self):
        task = Task("demo", {"ell": 2}, lambda rng: [("draw", False, str(rng.random()))])

        assert execute(task, 5)[0].witness == execute(task, 5)[0].witness
        assert execute(task, 5)[0].witness != execute(task, 6)[0].witness


class TestSuites(HarnessBase):

    def test_builders(self):
        assert sorted(SUITE_BUILDERS) == sorted(SUITES)

    @pytest.mark.parametrize("suite", SUITES)
    def test_suite_passes(self, suite):
        reports = run_suites(self.config, [suite], seed=0)

        assert reports
        assert failing(reports) == []

    def test_sorted_and_deterministic(self):
        first = run_suites(self.config, ["whittaker", "vanishing"], seed=11, workers=1)
        second = run_suites(self.config, ["vanishing", "whittaker"], seed=11, workers=3)

        assert first == second
        assert [r.sort_key() for r in first] == sorted(r.sort_key() for r in first)

    def test_thecor_past_h0(self):
        self.config.set("thmzita", "h_values", "0,1")
        reports = run_suites(self.config, ["thecor"], seed=0)
        names = [r.check_id for r in reports]

        assert failing(reports) == []
        assert "thecor.stated_form" in names
        assert "thecor.stated_form_gap" in names

    def test_unknown(self):
        with pytest.raises(ValueError):
            run_suites(self.config, ["nope"])

        with pytest.raises(ValueError):
            run_suites(self.config, ["whittaker"], mutations=["nope"])


class TestMutations(HarnessBase):

    def test_whittaker_normalization(self):
        reports = run_suites(self.config, ["whittaker", "zeta_oracle"], seed=0,
                             mutations=["whittaker-normalization"])
        failed = failing(reports)

        assert any(name.startswith("whittaker.U_action") for name in failed)
        assert any(name.startswith("zeta_oracle.U.") for name in failed)

    def test_volume(self):
        failed = failing(run_suites(self.config, ["thecor"], seed=0, mutations=["volume"]))

        assert "thecor.index_K0" in failed
        assert "thecor.volume_K0" in failed

    def test_coset_representative(self):
        failed = failing(run_suites(self.config, ["theprop"], seed=0,
                                    mutations=["coset-representative"]))

        assert "theprop.factorization" in failed


class TestDecompositions(object):

    @pytest.mark.parametrize("prime", [2, 3, 5])
    def test_phi_01(self, prime):
        assert phi_01_decomposition(prime) == standard_phi("phi_01", 1, prime)

    def test_phi_1t(self):
        assert phi_1t_decomposition(2, 1, 2) == standard_phi("phi_1t", 1, 2)
        assert phi_1t_decomposition(3, 1, 2) == standard_phi("phi_1t", 1, 3)
