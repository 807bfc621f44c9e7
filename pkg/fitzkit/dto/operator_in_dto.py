# Input DTO for OperatorSpec
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class WindowInDto(BaseModel):
    lower: List[float] = Field(..., description="Cota inferior por eje")
    upper: List[float] = Field(..., description="Cota superior por eje")
    resolution: List[int] = Field(..., description="Nodos por eje (>= 2)")

    @model_validator(mode="after")
    def _axes_match(self):
        if len(self.lower) != len(self.upper):
            raise ValueError("lower y upper deben tener la misma longitud")
        if len(self.resolution) not in (1, len(self.lower)):
            raise ValueError("resolution debe tener un entero por eje")
        return self


class PieceInDto(BaseModel):
    c: List[float] = Field(..., description="Pendiente c_i")
    d: float = Field(..., description="Término independiente d_i")


class OperatorInDto(BaseModel):
    name: Optional[str] = Field(None, description="Identificador del operador")
    dim: int = Field(..., ge=1, description="Dimensión n del espacio primal")
    kind: Literal["finite_graph", "affine", "subdiff_polyhedral", "restricted", "inverse"]
    points: Optional[List[List[List[float]]]] = Field(None, description="Puntos [[x...], [x*...]]")
    m: Optional[List[List[float]]] = Field(None, alias="M", description="Matriz M de x* = Mx + b")
    b: Optional[List[float]] = Field(None, description="Vector b de x* = Mx + b")
    pieces: Optional[List[PieceInDto]] = Field(None, description="Piezas de f = max ⟨c_i, x⟩ + d_i")
    inner: Optional["OperatorInDto"] = Field(None, description="Operador interno")
    window: Optional[WindowInDto] = Field(None, description="Ventana de restricción")

    model_config = {
        "populate_by_name": True,
        "json_schema_extra": {
            "example": {
                "name": "identity",
                "dim": 1,
                "kind": "affine",
                "M": [[1.0]],
                "b": [0.0],
            }
        },
    }

    @model_validator(mode="after")
    def _fields_for_kind(self):
        n = self.dim
        if self.kind == "finite_graph":
            if not self.points:
                raise ValueError("finite_graph requiere 'points' no vacío")
            for point in self.points:
                if len(point) != 2 or len(point[0]) != n or len(point[1]) != n:
                    raise ValueError(f"Cada punto debe ser [[x], [x*]] con {n} componentes")
        elif self.kind == "affine":
            if self.m is None:
                raise ValueError("affine requiere 'M'")
            if len(self.m) != n or any(len(row) != n for row in self.m):
                raise ValueError(f"'M' debe ser {n}x{n}")
            if self.b is not None and len(self.b) != n:
                raise ValueError(f"'b' debe tener {n} componentes")
        elif self.kind == "subdiff_polyhedral":
            if not self.pieces:
                raise ValueError("subdiff_polyhedral requiere al menos una pieza")
            if any(len(p.c) != n for p in self.pieces):
                raise ValueError(f"Cada pendiente debe tener {n} componentes")
        elif self.kind in ("restricted", "inverse"):
            if self.inner is None:
                raise ValueError(f"{self.kind} requiere 'inner'")
            if self.inner.dim != n:
                raise ValueError("El operador interno debe tener la misma dimensión")
            if self.kind == "restricted":
                if self.window is None:
                    raise ValueError("restricted requiere 'window'")
                if len(self.window.lower) not in (n, 2 * n):
                    raise ValueError(f"La ventana de restricción debe tener {n} o {2 * n} ejes")
        return self


OperatorInDto.model_rebuild()
