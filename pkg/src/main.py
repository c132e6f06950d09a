import logging
from typing import Optional, Sequence

from src.commands.config import build_config
from src.commands.evolve_command import cmd_evolve
from src.commands.parser import EXIT_VALIDATION, build_parser
from src.commands.sweep_command import cmd_sweep
from src.commands.verify_command import cmd_verify
from src.utils.log import configure_logging

logger = logging.getLogger(__name__)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse the command line, run one subcommand and return its exit code"""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.log_file)

    try:
        if args.command == "verify":
            return cmd_verify(args)
        config = build_config(args)
        if args.command == "evolve":
            return cmd_evolve(config)
        return cmd_sweep(config)
    except ValueError as e:
        logger.debug("validation failure", exc_info=True)
        print(f"❌ {e}")
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
