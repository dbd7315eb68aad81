"""
CubeLab command-line application

This is the main entry point: ``python -m app.main <group> <action> ...``.
Exit status is 0 on success, 1 when a verification fails, 2 on bad input.
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from .commands import campaign, cover, cvp, gap, ip
from .commands.common import common_parser
from .config import get_settings
from .exceptions import (
    BracketInvariantError,
    CubeLabException,
    OracleUnsoundError,
    SearchDivergedError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Errors that mean a check failed rather than that the input was bad
VERIFICATION_ERRORS = (OracleUnsoundError, SearchDivergedError, BracketInvariantError)


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="cubelab",
        description=f"{settings.app_name} {settings.version} - cube coverings and l-inf closest vectors",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.version}")
    subparsers = parser.add_subparsers(dest="group", required=True)
    parents = [common_parser()]

    # Command groups
    cover.register(subparsers, parents)
    cvp.register(subparsers, parents)
    gap.register(subparsers, parents)
    ip.register(subparsers, parents)
    campaign.register(subparsers, parents)
    return parser


def setup_logging(verbose: bool = False) -> None:
    settings = get_settings()
    level = logging.DEBUG if verbose or settings.debug else getattr(logging, settings.log_level.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    try:
        return args.handler(args)
    except VERIFICATION_ERRORS as exc:
        logger.error(f"Verification failed: {exc.message} {exc.details}")
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_FAILED
    except (CubeLabException, ValidationError, ValueError) as exc:
        message = exc.message if isinstance(exc, CubeLabException) else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        logger.error(f"Unhandled exception: {exc}", exc_info=True)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
