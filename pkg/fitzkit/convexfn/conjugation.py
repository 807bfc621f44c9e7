# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Conjugación de Fenchel, clausura convexa desde datos puntuales y la
transformada 𝒥 h(x, x*) = h*(x*, x).

Las formas poliédricas se conjugan exactamente una en la otra:
    MaxAffine{(a_i, c_i)}  ↦  HullFunc{(a_i, −c_i)}
    HullFunc{(z_i, v_i)}   ↦  MaxAffine{(z_i, −v_i)}
GridFunc usa la transformada de Legendre discreta exhaustiva.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from fitzkit.convexfn.representations import ConvexFuncRep, GridFunc, HullFunc, MaxAffine
from fitzkit.core.pair_space import Box, PairPoint
from fitzkit.utils.errors import InputError

logger = logging.getLogger(__name__)

_CHUNK = 2048


def slope_window(f: GridFunc) -> Box:
    """
    Ventana dual por defecto: rango de pendientes por diferencias finitas
    (mín/máx por eje sobre los valores finitos).
    """
    lower, upper = [], []
    for axis, step in enumerate(f.box.steps):
        with np.errstate(invalid="ignore"):
            slopes = np.diff(f.values, axis=axis) / step
        finite = slopes[np.isfinite(slopes)]
        if finite.size == 0:
            raise InputError("GridFunc sin pendientes finitas: no hay ventana dual")
        lo, hi = float(finite.min()), float(finite.max())
        if hi <= lo:
            pad = max(1e-3, 1e-3 * abs(lo))
            lo, hi = lo - pad, hi + pad
        lower.append(lo)
        upper.append(hi)
    return Box(np.array(lower), np.array(upper), f.box.resolution)


def _grid_conjugate(f: GridFunc, dual_box: Optional[Box]) -> GridFunc:
    dual_box = dual_box or slope_window(f)
    if dual_box.dim != f.dim:
        raise InputError("La ventana dual no coincide con la dimensión de la GridFunc")
    logger.info("conjugada en grilla: ventana dual %s", dual_box)

    nodes = f.box.grid()
    vals = f.values.ravel()
    finite = np.isfinite(vals)
    nodes, vals = nodes[finite], vals[finite]
    dual_nodes = dual_box.grid()
    out = np.empty(len(dual_nodes))
    for start in range(0, len(dual_nodes), _CHUNK):
        w = dual_nodes[start:start + _CHUNK]
        out[start:start + _CHUNK] = (w @ nodes.T - vals).max(axis=1)
    return GridFunc(dual_box, out.reshape(dual_box.resolution))


def conjugate(f: ConvexFuncRep, dual_box: Optional[Box] = None) -> ConvexFuncRep:
    """
    Conjugada de Fenchel f*(w) = sup_z ⟨w, z⟩ − f(z).

    Args:
        dual_box: solo para GridFunc; por defecto el rango de pendientes.
    """
    if isinstance(f, MaxAffine):
        return HullFunc(f.coefficients, -f.constants)
    if isinstance(f, HullFunc):
        return MaxAffine(f.generators, -f.values)
    if isinstance(f, GridFunc):
        return _grid_conjugate(f, dual_box)
    raise InputError(f"Representación desconocida: {type(f).__name__}")


def clconv_from_points(data: Sequence[Tuple[PairPoint, float]]) -> HullFunc:
    """
    Clausura convexa de la función que vale v_i en z_i y +inf en el resto.
    """
    if not data:
        raise InputError("clconv_from_points requiere al menos un punto")
    generators = np.array([z.flat() if isinstance(z, PairPoint) else np.asarray(z, dtype=float)
                           for z, _ in data])
    values = np.array([float(v) for _, v in data])
    return HullFunc(generators, values)


def _swap_columns(arr: np.ndarray) -> np.ndarray:
    k = arr.shape[1]
    if k % 2:
        raise InputError("𝒥 solo está definida en el espacio de pares (dimensión par)")
    n = k // 2
    return np.hstack([arr[:, n:], arr[:, :n]])


def swap_blocks(f: ConvexFuncRep) -> ConvexFuncRep:
    """g(x, x*) = f(x*, x) sobre la misma representación."""
    if isinstance(f, MaxAffine):
        return MaxAffine(_swap_columns(f.coefficients), f.constants)
    if isinstance(f, HullFunc):
        return HullFunc(_swap_columns(f.generators), f.values)
    if isinstance(f, GridFunc):
        if f.dim % 2:
            raise InputError("𝒥 solo está definida en el espacio de pares (dimensión par)")
        n = f.dim // 2
        order = list(range(n, 2 * n)) + list(range(n))
        return GridFunc(f.box.swapped(), np.transpose(f.values, order))
    raise InputError(f"Representación desconocida: {type(f).__name__}")


def j_transform(f: ConvexFuncRep) -> ConvexFuncRep:
    """𝒥 f(x, x*) = f*(x*, x): conjugada seguida del intercambio de bloques."""
    return swap_blocks(conjugate(f))
