# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""Volcado CSV de una función evaluada en la grilla de una ventana de pares."""

import csv
import logging
from pathlib import Path

import numpy as np

from fitzkit.convexfn.representations import Evaluable, encode_extended, evaluate_any
from fitzkit.core.pair_space import Box, PairPoint
from fitzkit.utils.errors import InputError

logger = logging.getLogger(__name__)


def grid_header(dim: int) -> list:
    return [f"x{i}" for i in range(dim)] + [f"xs{i}" for i in range(dim)] + ["value"]


def dump_grid(h: Evaluable, window: Box, path: Path) -> Path:
    """
    Escribe una fila por nodo: coordenadas x, x* y el valor (±inf como texto).
    """
    if window.dim % 2:
        raise InputError("El volcado de grilla requiere una ventana de pares")
    dim = window.dim // 2
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = window.grid()
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(grid_header(dim))
        for row in rows:
            value = evaluate_any(h, PairPoint.from_flat(row))
            writer.writerow([repr(float(v)) for v in np.asarray(row)] + [encode_extended(value)])
    logger.info("grilla de %d nodos escrita en %s", len(rows), path)
    return path
