# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Generador xorshift64* sembrado.

La semilla pasa por un paso de splitmix64 para que la semilla 0 no deje el
estado en cero. Con semilla s y desplazamiento k (índice de arranque) la
secuencia es la del estado `splitmix64(s + k)`.
"""

import numpy as np

_MASK = (1 << 64) - 1


def splitmix64(value: int) -> int:
    z = (value + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(seed & _MASK) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK

    def uniform(self) -> float:
        """Real uniforme en [0, 1) con 53 bits de mantisa."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform_in(self, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        u = np.array([self.uniform() for _ in range(lower.size)])
        return lower + u * (upper - lower)

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n debe ser positivo")
        return self.next_u64() % n
