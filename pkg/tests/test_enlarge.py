"""Tests del agrandamiento T^ε y de la búsqueda BR restringida."""

import numpy as np
import pytest

from conftest import LP_TOL, pp
from fitzkit.core.graph_sampler import membership, sample_graph
from fitzkit.core.operator_spec import Affine
from fitzkit.core.pair_space import Box, PairPoint, monotone_product
from fitzkit.enlarge.br_search import BRQuery, BRSearch, BRStrategy, br_search
from fitzkit.enlarge.enlargement import Enlargement, t0_check, te_contains, te_gap, te_slice
from fitzkit.enlarge.resolvent import resolvent_step
from fitzkit.utils.errors import InputError, RefusalError


class TestEnlargement:
    def test_abs_examples(self, abs_subdiff, window_1d):
        assert te_contains(abs_subdiff, 1.0, pp(1.0, 0.0), window_1d)
        assert not te_contains(abs_subdiff, 0.5, pp(1.0, 0.0), window_1d)
        gap = te_gap(abs_subdiff, pp(1.0, 0.0), window_1d)
        assert gap.exact
        assert gap.value == pytest.approx(-1.0)

    def test_graph_points_are_in_t0(self, abs_subdiff, window_1d):
        for p in sample_graph(abs_subdiff, window_1d):
            assert te_contains(abs_subdiff, 0.0, p, window_1d)

    def test_slice_at_kink(self, abs_subdiff, window_1d):
        values = [float(v[0]) for v in te_slice(abs_subdiff, 0.0, [0.0], window_1d)]
        assert values == [-1.0, -0.5, 0.0, 0.5, 1.0]

    def test_slices_are_nested(self, abs_subdiff, window_1d):
        sizes = [len(te_slice(abs_subdiff, eps, [1.0], window_1d)) for eps in (0.0, 0.5, 1.0, 2.0)]
        assert sizes == sorted(sizes)

    def test_negative_eps_rejected(self, abs_subdiff, window_1d):
        with pytest.raises(InputError):
            te_contains(abs_subdiff, -0.1, pp(0.0, 0.0), window_1d)

    def test_sampled_path_is_flagged(self, l1_norm):
        gap = te_gap(l1_norm, PairPoint([1.0, 1.0], [1.0, 1.0]), Box.cube(4, -2.0, 2.0, 5))
        assert not gap.exact
        assert gap.value == pytest.approx(0.0, abs=1e-9)

    def test_half_line_extension_point(self, half_line, window_1d):
        z = pp(-1.0, -1.0)
        assert te_contains(half_line, 0.0, z, window_1d)
        assert not membership(half_line, z)


class TestT0:
    def test_maximal_operators(self, identity, abs_subdiff, window_1d):
        assert t0_check(identity, window_1d, LP_TOL).status == "pass"
        assert t0_check(abs_subdiff, window_1d, LP_TOL).status == "pass"

    def test_half_line_fails(self, half_line, window_1d):
        report = Enlargement.t0_check(half_line, window_1d, LP_TOL, "half_line_identity")
        assert report.status == "fail"
        assert report.details["mismatches"] > 0
        assert report.witnesses[0]["kind"] == "extension_point"

    def test_l1_norm_without_closed_form(self, l1_norm, window_2d):
        report = t0_check(l1_norm, window_2d, LP_TOL)
        assert report.status == "pass"
        assert report.details["exact"] is False


class TestResolvent:
    @pytest.mark.parametrize("z, expected", [
        (PairPoint([0.0, 0.0], [1.5, 0.0]), PairPoint([0.5, 0.0], [1.0, 0.0])),
        (PairPoint([2.0, 0.0], [2.0, -2.0]), PairPoint([3.0, -1.0], [1.0, -1.0])),
        (PairPoint([0.5, 0.5], [0.0, 0.0]), PairPoint([0.0, 0.0], [0.5, 0.5])),
    ])
    def test_l1_norm(self, l1_norm, z, expected):
        j = resolvent_step(l1_norm, z)
        assert np.allclose(j.x, expected.x) and np.allclose(j.xs, expected.xs)
        assert membership(l1_norm, j)

    def test_separates_off_window_points(self, l1_norm):
        z = PairPoint([0.0, 0.0], [2.0, 2.0])
        j = resolvent_step(l1_norm, z)
        assert monotone_product(z, j) == pytest.approx(-2.0)
        assert te_gap(l1_norm, z, Box.cube(4, -0.5, 0.5, 3)).value < 0

    def test_inverse_swaps_roles(self, normal_cone):
        j = resolvent_step(normal_cone, pp(2.0, 1.0))
        assert j.x.tolist() == pytest.approx([1.0]) and j.xs.tolist() == pytest.approx([2.0])

    def test_affine(self, identity):
        j = resolvent_step(identity, pp(1.0, -1.0))
        assert j.x.tolist() == pytest.approx([0.0]) and j.xs.tolist() == pytest.approx([0.0])

    def test_step_size(self, abs_subdiff):
        j = resolvent_step(abs_subdiff, pp(0.0, 3.0), alpha=2.0)
        assert j.x.tolist() == pytest.approx([1.0]) and j.xs.tolist() == pytest.approx([1.0])

    def test_finite_graph_has_no_step(self, two_point):
        assert resolvent_step(two_point, pp(3.0, 0.0)) is None


class TestBRQuery:
    def test_requires_larger_eps_tilde(self):
        with pytest.raises(InputError):
            BRQuery([0.0], [0.0], 1.0, 1.0, 1.0)

    def test_requires_positive_lambda(self):
        with pytest.raises(InputError):
            BRQuery([0.0], [0.0], 0.0, 1.0, 0.0)


class TestBRSearch:
    def test_abs_example(self, abs_subdiff):
        result = br_search(abs_subdiff, BRQuery([1.0], [0.0], 1.0, 1.1, 1.0))
        assert result.strategy is BRStrategy.PROX
        assert result.found.x == pytest.approx([0.5])
        assert result.found.xs == pytest.approx([1.0])
        assert result.primal_residual == pytest.approx(0.5)
        assert result.dual_residual == pytest.approx(1.0)
        assert result.satisfied

    def test_point_on_graph(self, identity):
        result = br_search(identity, BRQuery([1.0], [1.0], 0.0, 0.1, 1.0))
        assert result.found == pp(1.0, 1.0)
        assert result.primal_residual == 0.0
        assert result.dual_residual == 0.0

    def test_identity_near_boundary(self, identity):
        q = BRQuery([0.0], [0.1], 0.0025, 0.005, 0.05)
        result = br_search(identity, q)
        assert result.found.x == pytest.approx(result.found.xs)
        assert result.primal_residual <= 0.05
        assert result.dual_residual <= 2 * 0.0025 / 0.05 + 1e-12

    def test_refusal_outside_enlargement(self, abs_subdiff):
        with pytest.raises(RefusalError):
            br_search(abs_subdiff, BRQuery([1.0], [0.0], 0.5, 1.1, 1.0))

    def test_dimension_mismatch(self, identity):
        with pytest.raises(InputError):
            br_search(identity, BRQuery([1.0, 0.0], [1.0, 0.0], 0.0, 1.0, 1.0))

    def test_found_point_is_member(self, relu_subdiff):
        q = BRQuery([0.5], [0.2], 0.5, 1.2, 0.7)
        result = br_search(relu_subdiff, q)
        assert membership(relu_subdiff, result.found)


class TestProxGuarantee:
    @pytest.mark.parametrize("name", ["abs", "relu", "identity", "scaled"])
    def test_seeded_queries(self, name, abs_subdiff, relu_subdiff, identity, window_1d):
        spec, xs_range = {
            "abs": (abs_subdiff, (-1.0, 1.0)),
            "relu": (relu_subdiff, (0.0, 1.0)),
            "identity": (identity, (-2.0, 2.0)),
            "scaled": (Affine([[2.0]], [0.0]), (-2.0, 2.0)),
        }[name]
        rng = np.random.default_rng(17)
        for _ in range(25):
            z = pp(rng.uniform(-2.0, 2.0), rng.uniform(*xs_range))
            eps = max(0.0, -te_gap(spec, z, window_1d).value) + 0.01
            lam = float(rng.uniform(0.5, 2.0))
            q = BRQuery(z.x, z.xs, eps, 2 * eps + 0.01, lam)
            result = BRSearch.prox(spec, q)
            assert result is not None
            assert result.primal_residual <= lam * (1 + 1e-9)
            assert result.dual_residual <= 2 * eps / lam * (1 + 1e-9)
            assert result.satisfied
            assert membership(spec, result.found)
