import os
import sys
import hydra
from omegaconf import DictConfig, OmegaConf

# Add src to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.cli.runner import run_scenario
from src.common.config.manager import ConfigManager
from src.common.logging import set_log_level


@hydra.main(version_base=None, config_path="../conf", config_name="config")
def main(cfg: DictConfig):
    """
    Runs one pipeline command on the selected scenario, e.g.
    python scripts/run_scenario.py scenario=fixtures/diamond command=routes
    """
    set_log_level(cfg.log_level)
    print(f"Configuration:\n{OmegaConf.to_yaml(cfg)}")

    config = ConfigManager().resolve(cfg.scenario)
    # Hydra changes the working directory; keep reports relative to the project
    if not os.path.isabs(config.output_dir):
        config = config.model_copy(update={"output_dir": os.path.join(hydra.utils.get_original_cwd(), config.output_dir)})

    bundle = run_scenario(config, command=cfg.command, fmt=cfg.format)
    for name, digest in bundle.manifest.items():
        print(f"  {name}  {digest[:16]}")
    if bundle.error is not None:
        print(f"Error: {bundle.error}")
        sys.exit(bundle.exit_code)


if __name__ == "__main__":
    main()
