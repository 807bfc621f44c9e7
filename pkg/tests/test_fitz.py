"""Tests de φ, S, la identidad φ = 𝒥 S y los chequeos de familia."""

import math

import numpy as np
import pytest

from conftest import LP_TOL, TOL, pp
from fitzkit.convexfn.representations import MaxAffine, evaluate
from fitzkit.core.graph_sampler import covering_sample, sample_graph
from fitzkit.core.operator_spec import FiniteGraph
from fitzkit.core.pair_space import Box, PairPoint, duality
from fitzkit.fitz.family_checker import (
    FamilyChecker,
    b_contains,
    bs_identity_check,
    family_order_check,
    graph_characterization_check,
    grid_points,
    in_family_check,
    l_contains,
)
from fitzkit.fitz.fitzpatrick import exact_phi, phi_of, s_of, upper_envelope
from fitzkit.utils.errors import InputError


def brute_phi(g: FiniteGraph, z: PairPoint) -> float:
    return max(float(np.dot(z.x, p.xs) + np.dot(p.x, z.xs) - duality(p)) for p in g)


def random_graph(rng, n: int, m: int) -> FiniteGraph:
    return FiniteGraph.from_arrays(rng.uniform(-2, 2, size=(m, n)), rng.uniform(-2, 2, size=(m, n)))


class TestPhi:
    def test_two_point_example(self, two_point):
        assert evaluate(phi_of(two_point), pp(1.0, 0.0)) == pytest.approx(0.0)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(2026)
        for trial in range(25):
            n = 1 + trial % 2
            g = random_graph(rng, n, int(rng.integers(1, 21)))
            phi = phi_of(g)
            for row in rng.uniform(-3, 3, size=(100, 2 * n)):
                z = PairPoint.from_flat(row)
                assert abs(evaluate(phi, z) - brute_phi(g, z)) <= 1e-12 * (1 + abs(brute_phi(g, z)))

    def test_singleton_at_origin_is_zero(self):
        phi = phi_of(FiniteGraph((pp(0.0, 0.0),)))
        assert evaluate(phi, pp(3.0, -2.0)) == 0.0

    def test_equals_pi_on_graph(self, abs_subdiff, window_1d):
        g = sample_graph(abs_subdiff, window_1d)
        phi = phi_of(g)
        for p in g:
            assert evaluate(phi, p) == pytest.approx(duality(p), abs=TOL)

    def test_dense_identity_sample(self, identity):
        g = sample_graph(identity, Box([-3.0], [3.0], (61,)))
        assert evaluate(phi_of(g), pp(1.0, 1.0)) == pytest.approx(1.0, abs=1e-6)

    def test_empty_graph_rejected(self):
        with pytest.raises(InputError):
            phi_of(None)


class TestS:
    def test_two_point_examples(self, two_point):
        s = s_of(two_point)
        assert evaluate(s, pp(0.5, 0.5)) == pytest.approx(0.5, abs=TOL)
        assert evaluate(s, pp(0.0, 0.0)) == pytest.approx(0.0, abs=TOL)
        assert evaluate(s, pp(2.0, 2.0)) == math.inf

    def test_sandwich(self, corpus):
        for op in corpus:
            if op.dim != 1:
                continue
            window = Box.cube(2, -2.0, 2.0, 5)
            g = covering_sample(op.spec, window)
            phi, s = phi_of(g), s_of(g)
            for z in grid_points(window):
                assert evaluate(phi, z) <= evaluate(s, z) + LP_TOL


class TestRelations:
    @pytest.mark.parametrize("z, in_b, in_l", [
        (pp(1.0, 1.0), True, True),
        (pp(1.0, 0.0), True, True),
        (pp(2.0, 2.0), True, False),
        (pp(-1.0, 2.0), False, False),
    ])
    def test_b_and_l_of_two_point_phi(self, two_point, z, in_b, in_l):
        phi = phi_of(two_point)
        assert b_contains(phi, z) == in_b
        assert l_contains(phi, z) == in_l

    def test_s_outside_hull_is_not_in_b(self, two_point):
        assert not b_contains(s_of(two_point), pp(2.0, 2.0))

    def test_l_rejects_infinite_values(self, two_point):
        assert not l_contains(s_of(two_point), pp(3.0, 3.0), tol=1.0)


class TestBSIdentity:
    def test_two_point(self, two_point, window_1d):
        report = bs_identity_check(two_point, grid_points(window_1d), LP_TOL)
        assert report.status == "pass"
        assert report.details["testpoints"] == 81

    def test_singleton(self, window_1d):
        g = FiniteGraph((pp(0.5, -1.0),))
        assert bs_identity_check(g, grid_points(window_1d), LP_TOL).status == "pass"

    def test_sampled_abs(self, abs_subdiff, window_1d):
        g = covering_sample(abs_subdiff, window_1d)
        assert bs_identity_check(g, grid_points(window_1d), LP_TOL).status == "pass"

    @pytest.mark.parametrize("seed", range(25))
    def test_random_graphs(self, seed):
        rng = np.random.default_rng(seed)
        n = 1 + seed % 2
        g = random_graph(rng, n, int(rng.integers(1, 21)))
        points = grid_points(Box.cube(2 * n, -2.0, 2.0, 9 if n == 1 else 3))
        report = bs_identity_check(g, points, LP_TOL)
        assert report.status == "pass", report.witnesses


class TestFamily:
    def test_phi_of_identity_sample_is_in_family(self, identity, window_1d):
        h = phi_of(covering_sample(identity, window_1d))
        report = in_family_check(h, identity, window_1d, LP_TOL)
        assert report.verdict == "pass"

    def test_zero_function_is_not_in_family(self, identity, window_1d):
        report = in_family_check(MaxAffine([[0.0, 0.0]], [0.0]), identity, window_1d, LP_TOL)
        assert report.verdict == "fail"
        assert report.lower_gap < 0
        assert report.witnesses

    def test_s_of_abs_sample_is_in_family(self, abs_subdiff, window_1d):
        h = s_of(covering_sample(abs_subdiff, window_1d))
        assert in_family_check(h, abs_subdiff, window_1d, LP_TOL).verdict == "pass"

    def test_exact_phi_is_in_family(self, abs_subdiff, window_1d):
        report = in_family_check(exact_phi(abs_subdiff), abs_subdiff, window_1d, LP_TOL)
        assert report.verdict == "pass"

    def test_order_check(self, two_point, window_1d):
        phi, s = phi_of(two_point), s_of(two_point)

        def midpoint(z):
            return (evaluate(phi, z) + evaluate(s, z)) / 2

        points = grid_points(window_1d)
        assert family_order_check(two_point, [phi, s, midpoint], points, LP_TOL).status == "pass"
        zero = MaxAffine([[0.0, 0.0]], [0.0])
        report = family_order_check(two_point, [zero], points, LP_TOL)
        assert report.status == "fail"
        assert report.witnesses[0]["kind"] == "family_order"

    def test_graph_characterization(self, identity, window_1d):
        report = graph_characterization_check(exact_phi(identity), identity, window_1d, TOL)
        assert report.status == "pass"

    def test_j_family_on_sampled_phi(self, identity, window_1d):
        h = phi_of(covering_sample(identity, window_1d))
        report = FamilyChecker.j_family_check(h, identity, window_1d, LP_TOL, sampled=True)
        assert report.status == "pass"
        assert report.details["asserted"] is False


class TestExactPhi:
    def test_identity(self, identity):
        phi = exact_phi(identity)
        assert phi(pp(1.0, 3.0)) == pytest.approx(4.0)
        assert phi(pp(2.0, 2.0)) == pytest.approx(4.0)

    def test_abs(self, abs_subdiff):
        phi = exact_phi(abs_subdiff)
        assert phi(pp(-2.0, 0.5)) == pytest.approx(2.0)
        assert phi(pp(1.0, 1.5)) == math.inf

    def test_half_line(self, half_line):
        phi = exact_phi(half_line)
        assert phi(pp(-1.0, -1.0)) == pytest.approx(0.0)
        assert phi(pp(2.0, 2.0)) == pytest.approx(4.0)

    def test_skew_is_infinite_off_range(self):
        from fitzkit.core.operator_spec import Affine

        phi = exact_phi(Affine([[0.0, -1.0], [1.0, 0.0]], [0.0, 0.0]))
        # q = Mᵀx + x* = 0 en el grafo
        assert phi(PairPoint([1.0, 0.0], [0.0, 1.0])) == pytest.approx(0.0)
        assert phi(PairPoint([1.0, 0.0], [0.0, 0.0])) == math.inf

    def test_inverse_swaps(self, normal_cone, relu_subdiff):
        inner = exact_phi(relu_subdiff)
        phi = exact_phi(normal_cone)
        z = pp(0.3, -0.7)
        assert phi(z) == inner(z.swapped())

    def test_upper_envelope_drops_dominated(self):
        pieces = upper_envelope(np.array([-1.0, 0.0, 1.0]), np.array([0.0, -5.0, 0.0]))
        assert pieces == [(-1.0, 0.0), (1.0, 0.0)]
