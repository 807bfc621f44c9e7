# Output DTO for CheckReport
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class CheckReportOutDto(BaseModel):
    check: str = Field(..., description="Nombre del chequeo")
    operator: str = Field(..., description="Identificador del operador")
    window: Optional[Dict[str, Any]] = Field(None, description="Ventana de evaluación")
    tolerances: Dict[str, float] = Field(default_factory=dict, description="Tolerancias usadas")
    status: Literal["pass", "fail", "bounded-pass", "refused"] = Field(..., description="Veredicto")
    witnesses: List[Dict[str, Any]] = Field(default_factory=list, description="Testigos con coordenadas")
    statistics: Dict[str, float] = Field(default_factory=dict, description="Esfuerzo y tiempo")
    details: Dict[str, Any] = Field(default_factory=dict, description="Valores escalares del chequeo")
    version: str = Field(..., description="Versión de fitzkit")
    seed: int = Field(0, description="Semilla de la corrida")

    model_config = {
        "from_attributes": True,
        "json_schema_extra": {
            "example": {
                "check": "polar-decide",
                "operator": "two_point",
                "window": {"lower": [-3, -3], "upper": [3, 3], "resolution": [7, 7]},
                "tolerances": {"membership": 1e-9},
                "status": "fail",
                "witnesses": [{
                    "kind": "polar_certificate",
                    "p": {"x": [0.0], "xs": [1.0]},
                    "q": {"x": [1.0], "xs": [0.0]},
                    "product": -1.0,
                }],
                "statistics": {"evaluations": 120, "lp_calls": 0, "wall_time": 0.01},
                "details": {},
                "version": "0.1.0",
                "seed": 0,
            }
        },
    }

    @model_validator(mode="after")
    def _fail_has_witness(self):
        if self.status == "fail" and not self.witnesses:
            raise ValueError("Un reporte con estado 'fail' necesita al menos un testigo")
        return self
