import argparse
import json
import sys
import os
from pathlib import Path
from typing import List, Optional

# Add project root to sys.path to allow imports from 'src'
PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
sys.path.append(PROJECT_ROOT)

from src.cli.runner import COMMANDS, EXIT_OK, error_line, exit_code_for, run_scenario
from src.common.config.manager import ConfigManager
from src.common.exceptions import ConfigurationError
from src.common.logging import set_log_level, setup_logger

logger = setup_logger("src.main")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Secure multipath WSN routing: deployment, EAK routing, group keys and Monte Carlo checks",
        epilog="Any extra key=value argument overrides the scenario file (OmegaConf dot-list).",
    )
    parser.add_argument('command', choices=COMMANDS, help="Pipeline stage to run")
    parser.add_argument('dest', nargs='?', default=None, help="Destination node for 'routes'")
    parser.add_argument('--config', default=None, help="Scenario file (YAML or JSON)")
    parser.add_argument('--seed', type=int, default=None, help="Overrides the scenario seed")
    parser.add_argument('--out', default=None, help="Output directory")
    parser.add_argument('--format', dest='fmt', choices=['json', 'csv'], default='csv', help="Format of tabular outputs")
    parser.add_argument('--dest', dest='dest_flag', type=int, default=None, help="Destination node for 'routes'")
    parser.add_argument('--trials', type=int, default=None, help="Monte Carlo trials per cell for 'mc'")
    parser.add_argument('--log-level', default='INFO', help="DEBUG, INFO, WARNING or ERROR")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point. Prints one JSON line on error and returns the exit code.
    """
    parser = build_parser()
    args, unknown = parser.parse_known_args(argv)

    overrides = list(unknown)
    destination = args.dest_flag
    if args.dest is not None:
        # The optional positional may swallow the first dot-list override
        if '=' in args.dest:
            overrides.insert(0, args.dest)
        elif destination is None:
            destination = args.dest
    try:
        set_log_level(args.log_level)
        if isinstance(destination, str):
            if not destination.isdigit():
                raise ConfigurationError(f"Destination must be a node id, got '{destination}'")
            destination = int(destination)
        if args.seed is not None:
            overrides.append(f"seed={args.seed}")
        if args.out is not None:
            overrides.append(f"output_dir={args.out}")
        if destination is not None:
            overrides.append(f"destination={destination}")
        if args.trials is not None:
            overrides.append(f"simulation.trials={args.trials}")

        config = ConfigManager(Path(PROJECT_ROOT) / "conf").load_scenario(args.config, overrides)
        logger.info(f"Running '{args.command}' into {config.output_dir}")
        bundle = run_scenario(config, args.command, fmt=args.fmt, destination=destination, trials=args.trials)
    except Exception as e:
        print(error_line(e))
        return exit_code_for(e)

    if bundle.error is not None:
        print(json.dumps(bundle.error))
        return bundle.exit_code
    logger.info(f"Wrote {len(bundle.manifest)} files")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
