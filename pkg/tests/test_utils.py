"""Tests de configuración y de la traducción de errores a códigos de salida."""

import pytest

from fitzkit.utils.errors import (
    ConsistencyError,
    InputError,
    RefusalError,
    SolverError,
    exit_code_for,
)
from fitzkit.utils.settings import PACKAGE_CORPUS, Settings
from fitzkit.utils.tolerances import DEFAULT_TOLERANCES


@pytest.fixture
def clean_env(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for name in ("FITZKIT_CORPUS", "FITZKIT_GOLDEN", "FITZKIT_OUT", "FITZKIT_SEED"):
        monkeypatch.delenv(name, raising=False)
    return tmp_path


class TestSettings:
    def test_defaults(self, clean_env):
        settings = Settings.load()
        assert settings.seed == 0
        assert settings.corpus_path == PACKAGE_CORPUS
        assert settings.tolerances == DEFAULT_TOLERANCES

    def test_environment_overrides(self, clean_env, monkeypatch):
        monkeypatch.setenv("FITZKIT_SEED", "7")
        monkeypatch.setenv("FITZKIT_OUT", "salida")
        settings = Settings.load()
        assert settings.seed == 7
        assert str(settings.out_dir) == "salida"

    def test_bad_seed(self, clean_env, monkeypatch):
        monkeypatch.setenv("FITZKIT_SEED", "siete")
        with pytest.raises(InputError):
            Settings.load()

    def test_toml_overrides(self, clean_env):
        (clean_env / "fitzkit.toml").write_text("[tolerances]\nlp = 1e-6\n\n[multistart]\nstarts = 8\n",
                                                encoding="utf-8")
        settings = Settings.load()
        assert settings.tolerances["lp"] == 1e-6
        assert settings.multistart["starts"] == 8

    def test_invalid_toml(self, clean_env):
        (clean_env / "fitzkit.toml").write_text("[tolerances\n", encoding="utf-8")
        with pytest.raises(InputError):
            Settings.load()


class TestExitCodes:
    @pytest.mark.parametrize("error, code", [
        (InputError("x"), 2),
        (RefusalError("x"), 2),
        (SolverError("x"), 3),
        (ConsistencyError("x"), 3),
    ])
    def test_mapping(self, error, code):
        assert exit_code_for(error) == code

    def test_unknown_errors_propagate(self):
        with pytest.raises(KeyError):
            exit_code_for(KeyError("x"))

    def test_builtin_bases(self):
        assert isinstance(InputError("x"), ValueError)
        assert isinstance(SolverError("x"), RuntimeError)
