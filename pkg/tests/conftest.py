import json
from pathlib import Path

import numpy as np
import pytest

from fitzkit.core.operator_spec import Affine, FiniteGraph, Inverse, Restricted, SubdiffPolyhedral
from fitzkit.core.pair_space import Box, PairPoint
from fitzkit.optim.multistart import MultistartConfig
from fitzkit.zoo.operator_builder import load_corpus

DATA_DIR = Path(__file__).resolve().parent.parent / "fitzkit" / "data"

# ── Tolerancias de comparación ─────────────────────────────────────
TOL = 1e-9
LP_TOL = 1e-8
GRID_TOL = 1e-6


def pp(x, xs) -> PairPoint:
    return PairPoint(np.atleast_1d(x), np.atleast_1d(xs))


@pytest.fixture
def identity():
    return Affine(np.eye(1), np.zeros(1))


@pytest.fixture
def abs_subdiff():
    return SubdiffPolyhedral.from_pieces([([1.0], 0.0), ([-1.0], 0.0)])


@pytest.fixture
def relu_subdiff():
    return SubdiffPolyhedral.from_pieces([([0.0], 0.0), ([1.0], 0.0)])


@pytest.fixture
def l1_norm():
    """∂‖·‖₁ en R²."""
    return SubdiffPolyhedral.from_pieces([
        ([1.0, 1.0], 0.0), ([1.0, -1.0], 0.0), ([-1.0, 1.0], 0.0), ([-1.0, -1.0], 0.0),
    ])


@pytest.fixture
def normal_cone(relu_subdiff):
    return Inverse(relu_subdiff)


@pytest.fixture
def half_line(identity):
    return Restricted(identity, Box([0.0], [10.0], (11,)))


@pytest.fixture
def two_point():
    return FiniteGraph((pp(0.0, 0.0), pp(1.0, 1.0)))


@pytest.fixture
def rotation_pi4():
    c = np.cos(np.pi / 4)
    return Affine(np.array([[c, -c], [c, c]]), np.zeros(2))


@pytest.fixture
def window_1d():
    """[−2, 2]² con 9 nodos por eje."""
    return Box.cube(2, -2.0, 2.0, 9)


@pytest.fixture
def window_2d():
    return Box.cube(4, -2.0, 2.0, 5)


@pytest.fixture
def small_budget():
    return MultistartConfig(starts=2, seed=0, max_iterations=200)


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(DATA_DIR / "corpus.json")


@pytest.fixture(scope="session")
def golden():
    return json.loads((DATA_DIR / "golden.json").read_text(encoding="utf-8"))


@pytest.fixture
def write_operator(tmp_path):
    """Escribe un OperatorSpec JSON en tmp_path y devuelve la ruta."""

    def _write(name: str, data: dict) -> Path:
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return _write
