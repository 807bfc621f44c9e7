# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Contadores de esfuerzo (evaluaciones, llamadas LP) para las estadísticas
de los reportes. Viven en un `ContextVar`: cada chequeo abre su propio
ámbito y no hay estado global compartido.
"""

from contextvars import ContextVar
from dataclasses import dataclass
from typing import Optional


@dataclass
class EffortCounter:
    evaluations: int = 0
    lp_calls: int = 0

    def as_dict(self) -> dict:
        return {"evaluations": self.evaluations, "lp_calls": self.lp_calls}


_current: ContextVar[Optional[EffortCounter]] = ContextVar("fitzkit_effort", default=None)


class effort_scope:
    """Context manager que activa un `EffortCounter` nuevo."""

    def __enter__(self) -> EffortCounter:
        self.counter = EffortCounter()
        self._token = _current.set(self.counter)
        return self.counter

    def __exit__(self, *exc) -> None:
        _current.reset(self._token)


def count_lp_call() -> None:
    counter = _current.get()
    if counter is not None:
        counter.lp_calls += 1


def count_evaluations(n: int = 1) -> None:
    counter = _current.get()
    if counter is not None:
        counter.evaluations += n
