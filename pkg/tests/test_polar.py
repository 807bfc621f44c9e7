"""Tests del polar monótono, la pre-maximalidad y el oráculo de extensión."""

import pytest

from conftest import GRID_TOL, TOL, pp
from fitzkit.core.graph_sampler import covering_sample, sample_graph
from fitzkit.core.operator_spec import FiniteGraph
from fitzkit.core.pair_space import Box, monotone_product
from fitzkit.fitz.family_checker import grid_points
from fitzkit.fitz.fitzpatrick import phi_of
from fitzkit.optim.multistart import MultistartConfig
from fitzkit.polar.polar_manager import (
    PolarManager,
    oracle_matches_membership,
    phi_ge_pi_check,
    polar_contains,
    polar_monotone_decide,
    unique_extension_oracle,
)
from fitzkit.core.operator_spec import is_monotone_set
from fitzkit.utils.errors import InputError, RefusalError


class TestPolarContains:
    def test_two_point_examples(self, two_point):
        assert polar_contains(two_point, pp(0.0, 1.0))
        assert polar_contains(two_point, pp(1.0, 0.0))
        assert not polar_contains(two_point, pp(2.0, 0.0))

    def test_members_are_in_polar(self, two_point):
        assert all(polar_contains(two_point, p) for p in two_point)

    def test_antitone_in_base_set(self, two_point, window_1d):
        smaller = FiniteGraph((pp(0.0, 0.0),))
        for z in grid_points(window_1d):
            if polar_contains(two_point, z):
                assert polar_contains(smaller, z)

    def test_direct_and_phi_paths_agree(self, two_point, window_1d):
        direct, via_phi = PolarManager.polar_margins(two_point, window_1d.grid())
        assert ((direct >= 0) == (via_phi >= -TOL)).all()

    def test_dimension_mismatch(self, two_point):
        with pytest.raises(InputError):
            polar_contains(two_point, pp([0.0, 1.0], [0.0, 1.0]))


class TestPolarDecide:
    def test_two_point_certificate(self, two_point, window_1d, small_budget):
        decision = polar_monotone_decide(two_point, window_1d, small_budget)
        assert decision.verdict == "NotMonotone"
        cert = decision.certificate
        assert cert.product <= -1.0 + 1e-12
        assert monotone_product(cert.p, cert.q) == cert.product
        assert polar_contains(two_point, cert.p)
        assert polar_contains(two_point, cert.q)

    def test_small_window_certificate(self, two_point, small_budget):
        decision = polar_monotone_decide(two_point, Box.cube(2, 0.0, 1.0, 2), small_budget)
        assert decision.certificate.p == pp(0.0, 1.0)
        assert decision.certificate.q == pp(1.0, 0.0)
        assert decision.certificate.product == pytest.approx(-1.0)

    def test_sampled_half_line_is_not_monotone(self, identity, small_budget):
        a = sample_graph(identity, Box([0.0], [3.0], (7,)))
        decision = polar_monotone_decide(a, Box.cube(2, -5.0, 5.0, 11), small_budget)
        assert not decision.monotone
        assert decision.certificate.product < 0

    def test_dense_identity_line_gives_bounded_pass(self, identity, small_budget):
        a = sample_graph(identity, Box([-3.0], [3.0], (121,)))
        decision = polar_monotone_decide(a, Box.cube(2, -3.0, 3.0, 41), small_budget)
        assert decision.verdict == "Monotone"
        report = decision.to_check_report("identity_line")
        assert report.status == "bounded-pass"
        oracle = unique_extension_oracle(a, decision)
        assert is_monotone_set(oracle.sample(Box.cube(2, -3.0, 3.0, 41)))[0]

    def test_non_monotone_base_is_refused(self, small_budget):
        a = FiniteGraph((pp(0.0, 1.0), pp(1.0, 0.0)))
        with pytest.raises(RefusalError):
            polar_monotone_decide(a, Box.cube(2, -1.0, 1.0, 3), small_budget)

    def test_report_carries_certificate(self, two_point, window_1d, small_budget):
        report = polar_monotone_decide(two_point, window_1d, small_budget).to_check_report("two_point", 7)
        assert report.status == "fail"
        assert report.seed == 7
        assert report.witnesses[0]["kind"] == "polar_certificate"


class TestPremax:
    def test_identity_passes(self, identity, window_1d, small_budget):
        report = phi_ge_pi_check(identity, window_1d, GRID_TOL, small_budget)
        assert report.status == "pass"
        assert report.details["b_equals_l_on_grid"]

    def test_abs_passes(self, abs_subdiff, window_1d, small_budget):
        assert phi_ge_pi_check(abs_subdiff, window_1d, GRID_TOL, small_budget).status == "pass"

    def test_half_line_fails(self, half_line, window_1d, small_budget):
        report = phi_ge_pi_check(half_line, window_1d, GRID_TOL, small_budget)
        assert report.status == "fail"
        assert report.details["min_gap"] <= -4.0 + 1e-9
        assert not report.details["b_equals_l_on_grid"]
        points = [w["point"] for w in report.witnesses if w["kind"] == "b_not_l"]
        assert points

    def test_finite_graph_rejected(self, two_point, window_1d):
        with pytest.raises(InputError):
            phi_ge_pi_check(two_point, window_1d, GRID_TOL)


class TestExtensionOracle:
    def test_refused_without_precondition(self, two_point, window_1d, small_budget):
        decision = polar_monotone_decide(two_point, window_1d, small_budget)
        with pytest.raises(RefusalError):
            unique_extension_oracle(two_point, decision)

    def test_refused_for_half_line(self, half_line, window_1d, small_budget):
        with pytest.raises(RefusalError):
            unique_extension_oracle(half_line, window=window_1d, budget=small_budget)

    def test_maximal_operator_matches_membership(self, identity, window_1d, small_budget):
        evidence = phi_ge_pi_check(identity, window_1d, GRID_TOL, small_budget)
        oracle = unique_extension_oracle(identity, evidence)
        assert oracle_matches_membership(oracle, identity, window_1d, TOL)

    def test_needs_evidence_or_window(self, identity):
        with pytest.raises(RefusalError):
            unique_extension_oracle(identity)


class TestCondAS:
    def test_identity(self, identity, window_1d):
        report = PolarManager.cond_as_check(identity, window_1d, GRID_TOL)
        assert report.status == "pass"
        assert report.details["path_agreement"] <= 1e-8

    def test_abs(self, abs_subdiff, window_1d):
        assert PolarManager.cond_as_check(abs_subdiff, window_1d, GRID_TOL).status == "pass"

    def test_rotation(self, rotation_pi4, window_2d):
        assert PolarManager.cond_as_check(rotation_pi4, window_2d, GRID_TOL).status == "pass"

    def test_family_member(self, identity, window_1d):
        h = phi_of(covering_sample(identity, window_1d))
        report = PolarManager.cond_as_check(identity, window_1d, GRID_TOL, members=[h])
        assert report.status == "pass"
        assert report.details["member_min_gaps"][0] >= -GRID_TOL


def test_budget_is_deterministic(two_point, window_1d):
    budget = MultistartConfig(starts=2, seed=3, max_iterations=100)
    a = polar_monotone_decide(two_point, window_1d, budget)
    b = polar_monotone_decide(two_point, window_1d, budget)
    assert a.certificate.p == b.certificate.p
    assert a.certificate.q == b.certificate.q
