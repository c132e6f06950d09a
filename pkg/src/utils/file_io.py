import csv
import io
import json
import logging
import os
import tempfile
from typing import Any, Dict, Iterable, List, Sequence, Union

logger = logging.getLogger(__name__)

# Find project root path
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

FLOAT_FORMAT = ".17g"


def get_full_path(relative_path: str) -> str:
    """Convert relative path to absolute path relative to project root"""
    return os.path.join(PROJECT_ROOT, relative_path)


def read_json(file_path: str) -> Union[Dict[str, Any], List[Any]]:
    """
    Read a JSON document. Relative paths resolve against the project root.
    A missing or unreadable file gives an empty dict.
    """
    full_path = file_path if os.path.isabs(file_path) else get_full_path(file_path)
    if not os.path.exists(full_path):
        logger.debug("%s does not exist, treating it as empty", full_path)
        return {}

    for encoding in ('utf-8', 'utf-8-sig'):
        try:
            with open(full_path, 'r', encoding=encoding) as file:
                return json.load(file)
        except UnicodeDecodeError:
            continue
        except json.JSONDecodeError as e:
            logger.error("%s is not valid JSON: %s", file_path, e)
            return {}

    logger.error("could not decode %s", file_path)
    return {}


def _atomic_write(full_path: str, text: str):
    """Write to a temporary file next to the target, then rename over it."""
    directory = os.path.dirname(full_path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, temp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(full_path))
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as file:
            file.write(text)
        os.replace(temp_path, full_path)
    except BaseException:
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise


def write_json(file_path: str, data: Any) -> bool:
    """
    Write data to a JSON file atomically.
    Returns: True if successful, False if error
    """
    try:
        _atomic_write(file_path, json.dumps(data, ensure_ascii=False, indent=4) + "\n")
        return True
    except (OSError, TypeError, ValueError) as e:
        logger.error("could not write %s: %s", file_path, e)
        return False


def format_cell(value: Any) -> str:
    """Floats at 17 significant digits, everything else via str()."""
    if isinstance(value, float):
        return format(value, FLOAT_FORMAT)
    if hasattr(value, "dtype") and getattr(value.dtype, "kind", "") == "f":
        return format(float(value), FLOAT_FORMAT)
    return str(value)


def write_csv_rows(file_path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> bool:
    """
    Write header and rows as UTF-8 CSV with LF endings, atomically.
    Returns: True if successful, False if error
    """
    try:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([format_cell(cell) for cell in row] for row in rows)
        _atomic_write(file_path, buffer.getvalue())
        return True
    except OSError as e:
        logger.error("could not write %s: %s", file_path, e)
        return False


def read_csv_rows(file_path: str, header: Sequence[str]) -> List[List[str]]:
    """Rows of a CSV file written by write_csv_rows, without the header."""
    with open(file_path, 'r', encoding='utf-8', newline='') as file:
        reader = csv.reader(file)
        found = next(reader, None)
        if found is None or tuple(found) != tuple(header):
            raise ValueError(f"{file_path}: expected header {','.join(header)}, got {found}")
        return [row for row in reader if row]
