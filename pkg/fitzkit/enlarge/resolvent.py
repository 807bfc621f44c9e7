# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Paso resolvente de un operador maximal.

Dado z = (x, x*) y α > 0, devuelve (ū, ū*) ∈ T con ū* = x* − α(ū − x), es
decir ū = (αI + T)⁻¹(x* + αx). Para α = 1 el punto cumple
⟨x − ū, x* − ū*⟩ = −‖x − ū‖², de modo que separa cualquier z fuera del grafo.
"""

import itertools
import logging
from typing import Optional

import numpy as np

from fitzkit.core.operator_spec import Affine, Inverse, OperatorSpec, SubdiffPolyhedral
from fitzkit.core.pair_space import PairPoint

logger = logging.getLogger(__name__)

KKT_TOL = 1e-12


class Resolvent:
    @staticmethod
    def subdiff_step(spec: SubdiffPolyhedral, x: np.ndarray, xs: np.ndarray, alpha: float) -> Optional[np.ndarray]:
        """
        ū = argmin f(u) − ⟨x*, u⟩ + (α/2)‖u − x‖² por enumeración de
        conjuntos activos S (|S| ≤ n + 1):
            ⟨c_i, u⟩ + d_i = t (i ∈ S),  α(u − x) − x* + Σ λ_i c_i = 0,  Σ λ_i = 1,
        aceptando λ ≥ 0 y ninguna pieza inactiva por encima de t.
        """
        c, d = spec.slopes, spec.offsets
        n, m = spec.dim, c.shape[0]
        for size in range(1, min(n + 1, m) + 1):
            for subset in itertools.combinations(range(m), size):
                s = list(subset)
                k = size
                a = np.zeros((k + n + 1, n + 1 + k))
                rhs = np.zeros(k + n + 1)
                a[:k, :n] = c[s]
                a[:k, n] = -1.0
                rhs[:k] = -d[s]
                a[k:k + n, :n] = alpha * np.eye(n)
                a[k:k + n, n + 1:] = c[s].T
                rhs[k:k + n] = xs + alpha * x
                a[k + n, n + 1:] = 1.0
                rhs[k + n] = 1.0
                try:
                    sol = np.linalg.solve(a, rhs)
                except np.linalg.LinAlgError:
                    continue
                u, t, lam = sol[:n], sol[n], sol[n + 1:]
                if np.any(lam < -KKT_TOL):
                    continue
                if np.max(c @ u + d) > t + KKT_TOL * max(1.0, abs(t)):
                    continue
                return u
        return None

    @staticmethod
    def step(spec: OperatorSpec, z: PairPoint, alpha: float = 1.0) -> Optional[PairPoint]:
        """Punto resolvente de z; None si el tipo de operador no lo admite."""
        if isinstance(spec, SubdiffPolyhedral):
            u = Resolvent.subdiff_step(spec, z.x, z.xs, alpha)
            if u is None:
                logger.debug("resolvente: el sistema KKT no tiene solución aceptable en %s", z)
                return None
            return PairPoint(u, z.xs - alpha * (u - z.x))
        if isinstance(spec, Affine):
            if not spec.is_psd():
                return None
            try:
                u = np.linalg.solve(spec.m + alpha * np.eye(spec.dim), z.xs - spec.b + alpha * z.x)
            except np.linalg.LinAlgError:
                return None
            return PairPoint(u, spec.apply(u))
        if isinstance(spec, Inverse):
            inner = Resolvent.step(spec.inner, z.swapped(), 1.0 / alpha)
            return None if inner is None else inner.swapped()
        return None


def resolvent_step(spec: OperatorSpec, z: PairPoint, alpha: float = 1.0) -> Optional[PairPoint]:
    return Resolvent.step(spec, z, alpha)
