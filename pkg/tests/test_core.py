"""Tests de puntos par, ventanas, operadores y muestreo de grafos."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import pp
from fitzkit.core.graph_sampler import covering_sample, membership, pair_window, sample_graph
from fitzkit.core.operator_spec import (
    Affine,
    FiniteGraph,
    Inverse,
    Restricted,
    SubdiffPolyhedral,
    invert_graph,
    is_monotone_set,
)
from fitzkit.core.pair_space import Box, PairPoint, duality, monotone_product, mu_related
from fitzkit.utils.errors import InputError


class TestPairSpace:
    def test_duality(self):
        assert duality(PairPoint([1.0, 2.0], [3.0, -1.0])) == pytest.approx(1.0)

    def test_monotone_product_and_relation(self):
        p, q = pp(0.0, 1.0), pp(1.0, 0.0)
        assert monotone_product(p, q) == pytest.approx(-1.0)
        assert not mu_related(p, q)
        assert mu_related(pp(0.0, 0.0), pp(1.0, 1.0))

    def test_from_flat_requires_even_length(self):
        with pytest.raises(InputError):
            PairPoint.from_flat([1.0, 2.0, 3.0])

    def test_mismatched_blocks_raise(self):
        with pytest.raises(InputError):
            PairPoint([1.0], [1.0, 2.0])

    def test_swapped(self):
        assert pp(1.0, 2.0).swapped() == pp(2.0, 1.0)


coords = st.lists(st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False), min_size=2, max_size=2)
pairs = st.builds(PairPoint, coords, coords)


class TestProperties:
    @given(pairs, pairs)
    @settings(max_examples=200, deadline=None)
    def test_mu_related_is_symmetric(self, p, q):
        assert mu_related(p, q) == mu_related(q, p)
        assert monotone_product(p, q) == monotone_product(q, p)

    @given(st.lists(pairs, min_size=1, max_size=6))
    @settings(max_examples=100, deadline=None)
    def test_invert_graph_preserves_duality(self, points):
        g = FiniteGraph(tuple(points))
        inverted = invert_graph(g)
        assert [duality(p) for p in inverted.points] == [duality(p) for p in g.points]
        assert is_monotone_set(inverted)[0] == is_monotone_set(g)[0]


class TestBox:
    def test_grid_is_lexicographic(self):
        box = Box.cube(2, 0.0, 1.0, 2)
        assert box.grid().tolist() == [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]]

    def test_steps(self, window_1d):
        assert window_1d.steps == pytest.approx([0.5, 0.5])

    def test_rejects_degenerate_bounds(self):
        with pytest.raises(InputError):
            Box([1.0], [1.0], (3,))

    def test_rejects_low_resolution(self):
        with pytest.raises(InputError):
            Box([0.0], [1.0], (1,))

    def test_dict_round_trip(self):
        box = Box([0.0, -1.0], [1.0, 2.0], (3, 4))
        assert Box.from_dict(box.to_dict()) == box

    def test_halves_and_swap(self):
        box = Box([0.0, -1.0], [1.0, 2.0], (3, 4))
        assert box.primal() == Box([0.0], [1.0], (3,))
        assert box.dual() == Box([-1.0], [2.0], (4,))
        assert box.swapped() == Box([-1.0, 0.0], [2.0, 1.0], (4, 3))

    def test_pair_window_duplicates_primal(self):
        assert pair_window(1, Box([0.0], [1.0], (3,))) == Box([0.0, 0.0], [1.0, 1.0], (3, 3))


class TestOperators:
    def test_affine_shape_check(self):
        with pytest.raises(InputError):
            Affine(np.eye(2), np.zeros(3))

    def test_psd(self):
        assert Affine([[0.0, -1.0], [1.0, 0.0]], [0.0, 0.0]).is_psd()
        assert not Affine([[-1.0]], [0.0]).is_psd()

    def test_subdiff_requires_pieces(self):
        with pytest.raises(InputError):
            SubdiffPolyhedral.from_pieces([])

    def test_empty_graph_rejected(self):
        with pytest.raises(InputError):
            FiniteGraph(())

    def test_restricted_window_dimension(self, identity):
        with pytest.raises(InputError):
            Restricted(identity, Box.cube(3, 0.0, 1.0, 2))

    def test_is_monotone_set(self, two_point):
        assert is_monotone_set(two_point) == (True, None)
        ok, pair = is_monotone_set(FiniteGraph((pp(0.0, 1.0), pp(1.0, 0.0))))
        assert not ok
        assert pair == (pp(0.0, 1.0), pp(1.0, 0.0))

    def test_invert_is_involution(self):
        g = FiniteGraph((pp(0.0, 2.0), pp(1.0, 3.0)))
        assert invert_graph(invert_graph(g)) == g
        assert invert_graph(g).points[0] == pp(2.0, 0.0)


class TestSampling:
    def test_identity_sample(self, identity):
        g = sample_graph(identity, Box([-1.0], [1.0], (5,)))
        x, xs = g.arrays()
        assert len(g) == 5
        assert np.array_equal(x, xs)

    def test_abs_sample_fills_kink(self, abs_subdiff, window_1d):
        g = sample_graph(abs_subdiff, window_1d)
        at_zero = sorted(float(p.xs[0]) for p in g if p.x[0] == 0.0)
        assert at_zero == [-1.0, 0.0, 1.0]

    def test_sample_is_sorted_and_unique(self, abs_subdiff, window_1d):
        g = sample_graph(abs_subdiff, window_1d)
        keys = [tuple(p.flat().tolist()) for p in g]
        assert keys == sorted(set(keys))

    def test_sample_points_are_members(self, abs_subdiff, relu_subdiff, normal_cone, window_1d):
        for spec in (abs_subdiff, relu_subdiff, normal_cone):
            g = sample_graph(spec, window_1d)
            assert all(membership(spec, p, 1e-12) for p in g)

    def test_sample_is_deterministic(self, abs_subdiff, window_1d):
        assert sample_graph(abs_subdiff, window_1d) == sample_graph(abs_subdiff, window_1d)

    def test_restricted_filters_primal(self, half_line):
        g = sample_graph(half_line, Box([-2.0], [2.0], (9,)))
        assert all(p.x[0] >= 0.0 for p in g)
        assert len(g) == 5

    def test_empty_intersection_raises(self, identity):
        far = Restricted(identity, Box([5.0], [6.0], (2,)))
        with pytest.raises(InputError):
            sample_graph(far, Box([-1.0], [1.0], (5,)))

    def test_dual_half_filters_values(self):
        steep = Affine([[3.0]], [0.0])
        g = sample_graph(steep, Box.cube(2, -1.0, 1.0, 3))
        assert [p.flat().tolist() for p in g] == [[0.0, 0.0]]

    def test_covering_sample_ignores_dual_half(self):
        steep = Affine([[3.0]], [0.0])
        g = covering_sample(steep, Box.cube(2, -1.0, 1.0, 3))
        assert len(g) == 3

    def test_inverse_sample_swaps(self, relu_subdiff, normal_cone, window_1d):
        direct = {p.swapped() for p in sample_graph(relu_subdiff, window_1d)}
        assert set(sample_graph(normal_cone, window_1d)) == direct


class TestMembership:
    def test_affine(self, identity):
        assert membership(identity, pp(1.0, 1.0))
        assert not membership(identity, pp(1.0, 1.1))

    def test_subdiff(self, abs_subdiff):
        assert membership(abs_subdiff, pp(0.0, 0.3))
        assert membership(abs_subdiff, pp(2.0, 1.0))
        assert not membership(abs_subdiff, pp(2.0, 0.0))
        assert not membership(abs_subdiff, pp(0.0, 1.5))

    def test_finite_graph_uses_max_norm(self, two_point):
        assert membership(two_point, pp(1.0, 1.0 + 1e-10))
        assert not membership(two_point, pp(0.5, 0.5))

    def test_inverse(self, normal_cone):
        # cono normal de [0, 1]
        assert membership(normal_cone, pp(0.5, 0.0))
        assert membership(normal_cone, pp(0.0, -3.0))
        assert membership(normal_cone, pp(1.0, 2.0))
        assert not membership(normal_cone, pp(0.5, 1.0))

    def test_dimension_mismatch(self, identity):
        with pytest.raises(InputError):
            membership(identity, PairPoint([1.0, 2.0], [1.0, 2.0]))
