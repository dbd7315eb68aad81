"""
Shared argument types and file I/O for CLI commands.
"""

import argparse
import logging
import sys
from fractions import Fraction
from typing import Iterable, List, Optional, Type, TypeVar

from pydantic import ValidationError

from ..exceptions import InstanceFormatError
from ..models.rational import to_rational
from ..schemas.common import CubeLabSchema

logger = logging.getLogger(__name__)

SchemaT = TypeVar("SchemaT", bound=CubeLabSchema)


def rational_arg(text: str) -> Fraction:
    """argparse type for "p/q" values."""
    try:
        return to_rational(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"'{text}' is not a rational p/q") from exc


def rational_list_arg(text: str) -> List[Fraction]:
    return [rational_arg(part) for part in text.split(",") if part.strip()]


def int_list_arg(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"'{text}' is not a comma-separated list of integers") from exc


def common_parser() -> argparse.ArgumentParser:
    """Flags shared by every subcommand."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--seed", type=int, default=None, help="Seed for every random choice (default from settings)")
    parser.add_argument("--out", type=str, default="", help="Write the JSON result to this file")
    parser.add_argument("--json", action="store_true", help="Print the JSON result to stdout")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    return parser


def load_schema(path: str, schema: Type[SchemaT]) -> SchemaT:
    """Read and validate a JSON file.

    Raises:
        InstanceFormatError: If the file cannot be read or does not match the schema
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise InstanceFormatError(path, exc.strerror or str(exc)) from exc
    try:
        return schema.model_validate_json(text)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first.get("loc", ()))
        raise InstanceFormatError(path, f"{where}: {first.get('msg')}" if where else first.get("msg")) from exc


def emit(result: CubeLabSchema, args: argparse.Namespace, summary: Optional[Iterable[str]] = None) -> None:
    """Write JSON to --out and/or stdout; otherwise print the human summary derived from it."""
    text = result.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        logger.info(f"Wrote {args.out}")
    if args.json or summary is None:
        sys.stdout.write(text + "\n")
    else:
        for line in summary:
            print(line)


def summary_table(rows: List[List[str]], headers: List[str]) -> List[str]:
    """Plain fixed-width table lines."""
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(cell.ljust(w) for cell, w in zip(row, widths)) for row in rows)
    return lines
