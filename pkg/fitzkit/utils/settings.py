# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Configuración de fitzkit.

Orden de resolución:
1. Variables de entorno (con `.env` buscado desde el directorio actual hacia arriba).
2. `fitzkit.toml` en el directorio actual, secciones `[tolerances]` y `[multistart]`.
3. Valores por defecto de `fitzkit.utils.tolerances`.
"""

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

import toml
from dotenv import load_dotenv

from fitzkit.utils.errors import InputError
from fitzkit.utils.tolerances import DEFAULT_TOLERANCES, MULTISTART_DEFAULTS

logger = logging.getLogger(__name__)

PACKAGE_CORPUS = Path(__file__).resolve().parent.parent / "data" / "corpus.json"
PACKAGE_GOLDEN = Path(__file__).resolve().parent.parent / "data" / "golden.json"


@dataclass(frozen=True)
class Settings:
    corpus_path: Path = PACKAGE_CORPUS
    golden_path: Path = PACKAGE_GOLDEN
    out_dir: Path = Path("reports")
    seed: int = 0
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    multistart: Dict[str, float] = field(default_factory=lambda: dict(MULTISTART_DEFAULTS))

    @staticmethod
    def _load_env_from_project_root() -> bool:
        """Busca y carga el archivo .env desde el directorio actual o sus padres."""
        current_path = Path.cwd()
        while current_path != current_path.parent:
            env_file = current_path / ".env"
            if env_file.exists():
                load_dotenv(dotenv_path=env_file)
                logger.debug("variables de entorno cargadas desde %s", env_file)
                return True
            current_path = current_path.parent
        return False

    @staticmethod
    def _read_toml(path: Path) -> Dict:
        if not path.exists():
            return {}
        try:
            return toml.load(path)
        except toml.TomlDecodeError as e:
            raise InputError(f"fitzkit.toml inválido: {e}") from e

    @classmethod
    def load(cls, config_path: Optional[Path] = None) -> "Settings":
        """
        Construye la configuración efectiva.

        Args:
            config_path: Ruta alternativa a `fitzkit.toml`.
        """
        cls._load_env_from_project_root()
        data = cls._read_toml(config_path or Path("fitzkit.toml"))

        tolerances = dict(DEFAULT_TOLERANCES)
        tolerances.update({k: float(v) for k, v in data.get("tolerances", {}).items()})
        multistart = dict(MULTISTART_DEFAULTS)
        multistart.update(data.get("multistart", {}))

        seed_raw = os.getenv("FITZKIT_SEED", "0")
        try:
            seed = int(seed_raw)
        except ValueError as e:
            raise InputError(f"FITZKIT_SEED debe ser entero, se recibió '{seed_raw}'") from e

        return cls(
            corpus_path=Path(os.getenv("FITZKIT_CORPUS", str(PACKAGE_CORPUS))),
            golden_path=Path(os.getenv("FITZKIT_GOLDEN", str(PACKAGE_GOLDEN))),
            out_dir=Path(os.getenv("FITZKIT_OUT", "reports")),
            seed=seed,
            tolerances=tolerances,
            multistart=multistart,
        )
