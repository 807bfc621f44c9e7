# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Construcción de operadores desde JSON (validado con `OperatorInDto`) y
etiquetado monótono / maximal.

Reglas de etiquetado:
- affine: monótono ⟺ parte simétrica de M semidefinida positiva; maximal ⟺ monótono.
- subdiff_polyhedral: monótono y maximal.
- finite_graph: monótono según `is_monotone_set`; nunca maximal.
- restricted: hereda la monotonía; no maximal.
- inverse: hereda ambas etiquetas del operador interno.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np
from pydantic import ValidationError

from fitzkit.core.operator_spec import (
    Affine,
    FiniteGraph,
    Inverse,
    OperatorSpec,
    Restricted,
    SubdiffPolyhedral,
    is_monotone_set,
)
from fitzkit.core.pair_space import Box, PairPoint
from fitzkit.dto.operator_in_dto import OperatorInDto
from fitzkit.utils.errors import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZooOperator:
    name: str
    spec: OperatorSpec
    monotone: bool
    maximal: bool

    @property
    def dim(self) -> int:
        return self.spec.dim


class OperatorBuilder:
    @staticmethod
    def _spec_from_dto(dto: OperatorInDto) -> OperatorSpec:
        if dto.kind == "finite_graph":
            return FiniteGraph(tuple(PairPoint(x, xs) for x, xs in dto.points))
        if dto.kind == "affine":
            b = dto.b if dto.b is not None else [0.0] * dto.dim
            return Affine(np.array(dto.m, dtype=float), np.array(b, dtype=float))
        if dto.kind == "subdiff_polyhedral":
            return SubdiffPolyhedral.from_pieces([(p.c, p.d) for p in dto.pieces])
        if dto.kind == "restricted":
            window = Box(dto.window.lower, dto.window.upper, tuple(dto.window.resolution))
            return Restricted(OperatorBuilder._spec_from_dto(dto.inner), window)
        if dto.kind == "inverse":
            return Inverse(OperatorBuilder._spec_from_dto(dto.inner))
        raise InputError(f"Tipo de operador desconocido: {dto.kind}")

    @staticmethod
    def tags(spec: OperatorSpec) -> Dict[str, bool]:
        if isinstance(spec, Affine):
            monotone = spec.is_psd()
            return {"monotone": monotone, "maximal": monotone}
        if isinstance(spec, SubdiffPolyhedral):
            return {"monotone": True, "maximal": True}
        if isinstance(spec, FiniteGraph):
            return {"monotone": is_monotone_set(spec)[0], "maximal": False}
        if isinstance(spec, Restricted):
            return {"monotone": OperatorBuilder.tags(spec.inner)["monotone"], "maximal": False}
        if isinstance(spec, Inverse):
            return OperatorBuilder.tags(spec.inner)
        raise InputError(f"Tipo de operador desconocido: {type(spec).__name__}")

    @staticmethod
    def build_operator(spec_json: Union[str, Dict[str, Any], OperatorInDto]) -> ZooOperator:
        """
        Valida el JSON y construye el operador etiquetado.

        Raises:
            InputError: si el esquema no se cumple.
        """
        try:
            if isinstance(spec_json, OperatorInDto):
                dto = spec_json
            elif isinstance(spec_json, str):
                dto = OperatorInDto.model_validate_json(spec_json)
            else:
                dto = OperatorInDto.model_validate(spec_json)
        except ValidationError as e:
            raise InputError(f"Operador inválido: {e}") from e
        spec = OperatorBuilder._spec_from_dto(dto)
        tags = OperatorBuilder.tags(spec)
        name = dto.name or dto.kind
        if not tags["monotone"]:
            logger.warning("el operador '%s' no es monótono", name)
        return ZooOperator(name, spec, tags["monotone"], tags["maximal"])

    @staticmethod
    def spec_to_json(spec: OperatorSpec, name: Union[str, None] = None) -> Dict[str, Any]:
        """Inverso de `build_operator` (campos opcionales omitidos)."""
        data: Dict[str, Any] = {}
        if name is not None:
            data["name"] = name
        data["dim"] = spec.dim
        data["kind"] = spec.kind.value
        if isinstance(spec, FiniteGraph):
            data["points"] = [[p.x.tolist(), p.xs.tolist()] for p in spec.points]
        elif isinstance(spec, Affine):
            data["M"] = spec.m.tolist()
            data["b"] = spec.b.tolist()
        elif isinstance(spec, SubdiffPolyhedral):
            data["pieces"] = [{"c": c.tolist(), "d": float(d)} for c, d in zip(spec.slopes, spec.offsets)]
        elif isinstance(spec, Restricted):
            data["inner"] = OperatorBuilder.spec_to_json(spec.inner)
            data["window"] = spec.window.to_dict()
        elif isinstance(spec, Inverse):
            data["inner"] = OperatorBuilder.spec_to_json(spec.inner)
        return data

    @staticmethod
    def load_operator(path: Path) -> ZooOperator:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise InputError(f"No se pudo leer {path}: {e}") from e
        op = OperatorBuilder.build_operator(text)
        if op.name == op.spec.kind.value:
            op = ZooOperator(Path(path).stem, op.spec, op.monotone, op.maximal)
        return op

    @staticmethod
    def load_corpus(path: Path) -> List[ZooOperator]:
        """Lee un manifiesto JSON (arreglo de OperatorSpec)."""
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"Corpus inválido {path}: {e}") from e
        if not isinstance(data, list):
            raise InputError("El corpus debe ser un arreglo JSON de operadores")
        corpus = [OperatorBuilder.build_operator(entry) for entry in data]
        names = [op.name for op in corpus]
        if len(set(names)) != len(names):
            raise InputError("Nombres de operador repetidos en el corpus")
        logger.info("corpus: %d operadores desde %s", len(corpus), path)
        return corpus


def build_operator(spec_json) -> ZooOperator:
    return OperatorBuilder.build_operator(spec_json)


def spec_to_json(spec: OperatorSpec, name: Union[str, None] = None) -> Dict[str, Any]:
    return OperatorBuilder.spec_to_json(spec, name)


def load_corpus(path: Path) -> List[ZooOperator]:
    return OperatorBuilder.load_corpus(path)
