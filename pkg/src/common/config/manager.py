from omegaconf import DictConfig, OmegaConf
from omegaconf.errors import OmegaConfBaseException
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
from pydantic import ValidationError

from ..exceptions import ConfigurationError
from ..schemas.scenario import ScenarioConfig

class ConfigManager:
    """Centraliza la carga y validación de configuración"""
    
    def __init__(self, config_dir: Path = Path("conf")):
        self.config_dir = Path(config_dir)
    
    def load_raw(self, path: Path) -> DictConfig:
        """Carga YAML o JSON (JSON es un subconjunto de YAML)"""
        path = Path(path)
        if not path.exists():
            raise ConfigurationError(f"Config not found: {path}")
        try:
            cfg = OmegaConf.load(path)
        except (OmegaConfBaseException, ValueError) as e:
            raise ConfigurationError(f"Could not parse {path}: {e}") from e
        if not isinstance(cfg, DictConfig):
            raise ConfigurationError(f"Config root must be a mapping: {path}")
        return cfg

    def load_scenario(self, path: Optional[Path] = None, overrides: Sequence[str] = ()) -> ScenarioConfig:
        """
        Loads a scenario file (or the shipped default), applies dot-list overrides and validates it.
        """
        if path is None:
            path = self.config_dir / "scenario" / "default.yaml"
        cfg = self.load_raw(path)
        return self.resolve(cfg, overrides)

    def load_fixture(self, name: str, overrides: Sequence[str] = ()) -> ScenarioConfig:
        """Carga un escenario de la biblioteca de fixtures"""
        return self.load_scenario(self.config_dir / "scenario" / "fixtures" / f"{name}.yaml", overrides)

    def resolve(self, cfg: Any, overrides: Sequence[str] = ()) -> ScenarioConfig:
        if not isinstance(cfg, DictConfig):
            cfg = OmegaConf.create(cfg)
        try:
            if overrides:
                cfg = OmegaConf.merge(cfg, OmegaConf.from_dotlist(list(overrides)))
            container = OmegaConf.to_container(cfg, resolve=True)
        except OmegaConfBaseException as e:
            raise ConfigurationError(f"Invalid override: {e}") from e
        return self.validate(container)

    @staticmethod
    def validate(data: Dict[str, Any]) -> ScenarioConfig:
        try:
            return ScenarioConfig.model_validate(data)
        except ValidationError as e:
            errors: List[str] = [
                f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in e.errors()
            ]
            raise ConfigurationError("; ".join(errors)) from e
