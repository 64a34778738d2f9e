"""Gram matrix files and JSON report documents on disk."""

import json
import re
from pathlib import Path
from typing import Iterable, List, Optional, Union

from .linalg import DimensionError, NotPositiveDefiniteError, NotSymmetricError
from .lattice import GramMatrix
from .logger import get_logger
from .models import ReportDocument

logger = get_logger(__name__)

_INTEGER = re.compile(r"^[+-]?[0-9]+$")


class GramFileError(ValueError):
    """Raised for malformed Gram files."""


def _parse_int(token: str, line_no: int) -> int:
    if not _INTEGER.match(token):
        raise GramFileError(f"Line {line_no}: {token!r} is not an integer")
    return int(token)


def parse_gram_text(text: str) -> GramMatrix:
    """
    Parse the Gram file format.

    Line 1 holds N, the next N lines hold N whitespace-separated integers
    each.  Lines starting with '#' and blank lines are ignored.

    Args:
        text: File contents

    Returns:
        The validated Gram matrix
    """
    lines = [
        (no, line.strip())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise GramFileError("Gram file is empty")

    header_no, header = lines[0]
    tokens = header.split()
    if len(tokens) != 1:
        raise GramFileError(f"Line {header_no}: expected the dimension alone")
    n = _parse_int(tokens[0], header_no)
    if n < 1:
        raise GramFileError(f"Line {header_no}: dimension must be positive, got {n}")

    body = lines[1:]
    if len(body) != n:
        raise GramFileError(f"Expected {n} matrix rows, found {len(body)}")

    rows = []
    for no, line in body:
        entries = [_parse_int(token, no) for token in line.split()]
        if len(entries) != n:
            raise GramFileError(f"Line {no}: expected {n} entries, found {len(entries)}")
        rows.append(entries)

    try:
        return GramMatrix.from_rows(rows)
    except (DimensionError, NotSymmetricError, NotPositiveDefiniteError) as e:
        raise GramFileError(f"Invalid Gram matrix: {e}") from e


def read_gram_file(path: Union[str, Path]) -> GramMatrix:
    """Read and validate a Gram file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        logger.error(f"Cannot read Gram file {path}: {e}")
        raise GramFileError(f"Cannot read Gram file {path}: {e}") from e

    gram = parse_gram_text(text)
    logger.info(f"Loaded rank {gram.dim} Gram matrix from {path}")
    return gram


def format_gram(gram: GramMatrix, comment: Optional[str] = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(str(gram.dim))
    width = max(len(str(e)) for row in gram.rows for e in row)
    lines.extend(" ".join(str(e).rjust(width) for e in row) for row in gram.rows)
    return "\n".join(lines) + "\n"


def write_gram_file(
    path: Union[str, Path], gram: GramMatrix, comment: Optional[str] = None
) -> Path:
    """Write a Gram file, creating parent directories as needed."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_gram(gram, comment), encoding="utf-8")
    logger.info(f"Wrote rank {gram.dim} Gram matrix to {path}")
    return path


def dump_reports(documents: Iterable[ReportDocument]) -> str:
    """Serialize reports as a JSON array; every number is already a decimal string."""
    return json.dumps([doc.to_dict() for doc in documents], indent=2, ensure_ascii=False)


def load_reports(text: str) -> List[ReportDocument]:
    """Parse a JSON array (or single object) of reports."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON in report: {e}")
        raise ValueError(f"Invalid JSON in report: {e}") from e

    if isinstance(data, dict):
        data = [data]
    return [ReportDocument.from_dict(item) for item in data]


def save_reports(path: Union[str, Path], documents: Iterable[ReportDocument]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_reports(documents) + "\n", encoding="utf-8")
    logger.info(f"Saved reports to {path}")
    return path
