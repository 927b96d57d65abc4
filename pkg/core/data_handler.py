"""
JSON codec for algebras, cochains and subspaces, and report export.

Algebra format (indices 0-based, rationals as "p/q" strings):

    {"name": "P_3_9", "dim": 3,
     "products": [{"i": 0, "j": 1, "out": [{"k": 1, "v": "2"}]}, ...]}

Cochains use the key "cochain" in place of "products". Output is written
with sorted keys so that emitting and re-reading is bit-exact.
"""

import json
import sys
from datetime import datetime
from typing import Any, Dict, List, Optional, Sequence, TextIO, Union

import numpy as np
import pandas as pd

import config
from core.algebra import AlgebraStructure, Cochain2, Cochain3, element
from core.exactnum import Subspace, format_rational, to_rational, zeros
from core.exceptions import FormatError
from utils.logger import LoggerMixin


# ---------------------------------------------------------------------------
# Encoding


def _entries(values: np.ndarray) -> List[dict]:
    n = values.shape[0]
    entries = []
    for i in range(n):
        for j in range(n):
            out = [{'k': k, 'v': format_rational(v)}
                   for k, v in enumerate(values[i, j]) if v != 0]
            if out:
                entries.append({'i': i, 'j': j, 'out': out})
    return entries


def algebra_to_dict(alg: AlgebraStructure, generators: Optional[Sequence[str]] = None) -> dict:
    data = {'name': alg.name, 'dim': alg.dim, 'products': _entries(alg.c)}
    if generators:
        data['generators'] = list(generators)
    return data


def cochain_to_dict(phi: Cochain2) -> dict:
    return {'dim': phi.dim, 'cochain': _entries(phi.values)}


def cochain3_to_rows(psi: Cochain3) -> List[dict]:
    """Nonzero values of a trilinear map as {"i", "j", "l", "out"} rows."""
    rows = []
    for i, j, l in np.ndindex(*psi.values.shape[:3]):
        out = [{'k': k, 'v': format_rational(v)}
               for k, v in enumerate(psi.values[i, j, l]) if v != 0]
        if out:
            rows.append({'i': i, 'j': j, 'l': l, 'out': out})
    return rows


def subspace_to_dict(space: Subspace) -> dict:
    return {'ambient_dim': space.ambient_dim, 'basis': space.to_rows()}


def element_to_list(x) -> List[str]:
    return [format_rational(v) for v in x]


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=config.JSON_INDENT, ensure_ascii=False)


# ---------------------------------------------------------------------------
# Decoding


def _require(data: dict, key: str, path: Optional[str]):
    if not isinstance(data, dict) or key not in data:
        raise FormatError(f"missing key {key!r}", path)
    return data[key]


def _index(value) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"index must be an integer, got {value!r}")
    return value


def _tensor(data: dict, key: str, path: Optional[str]) -> np.ndarray:
    dim = _require(data, 'dim', path)
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise FormatError(f"'dim' must be a non-negative integer, got {dim!r}", path)
    c = zeros((dim, dim, dim))
    entries = _require(data, key, path)
    if not isinstance(entries, list):
        raise FormatError(f"{key!r} must be a list", path)
    for entry in entries:
        try:
            i, j = _index(entry['i']), _index(entry['j'])
            outs = [(_index(item['k']), item['v']) for item in entry['out']]
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError(f"malformed entry {entry!r}", path) from e
        for k, v in outs:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise FormatError(f"index out of range in entry {entry!r}", path)
            if isinstance(v, float):
                raise FormatError(f"coefficients must be rational strings, got {v!r}", path)
            try:
                c[i, j, k] = to_rational(str(v))
            except FormatError as e:
                raise FormatError(str(e), path) from e
    return c


def algebra_from_dict(data: dict, path: Optional[str] = None) -> AlgebraStructure:
    return AlgebraStructure(_tensor(data, 'products', path), data.get('name'))


def cochain_from_dict(data: dict, path: Optional[str] = None) -> Cochain2:
    return Cochain2(_tensor(data, 'cochain', path))


def cochains_from_json(data: Union[dict, list], path: Optional[str] = None) -> List[Cochain2]:
    """A single cochain, a list of cochains, or {"terms": [...]}."""
    if isinstance(data, dict) and 'terms' in data:
        data = data['terms']
    if isinstance(data, dict):
        return [cochain_from_dict(data, path)]
    if isinstance(data, list):
        return [cochain_from_dict(item, path) for item in data]
    raise FormatError("expected a cochain object or a list of cochains", path)


def subspace_from_dict(data: dict, path: Optional[str] = None) -> Subspace:
    ambient = _require(data, 'ambient_dim', path)
    return Subspace.span(_require(data, 'basis', path), ambient)


def parse_element(text: str) -> np.ndarray:
    """"1,0,1/2" → element coordinates."""
    return element([part.strip() for part in text.split(',') if part.strip()])


def parse_params(items: Sequence[str]) -> Dict[str, str]:
    """["alpha=1/2", "gamma=0"] → {"alpha": "1/2", "gamma": "0"}."""
    params = {}
    for item in items or []:
        name, sep, value = item.partition('=')
        if not sep or not name.strip():
            raise FormatError(f"parameter must look like name=value, got {item!r}")
        params[name.strip()] = value.strip()
    return params


def load_json(path: str, stdin: Optional[TextIO] = None) -> Any:
    """
    Read JSON from a file, or from stdin when path is "-".

    Raises:
        FormatError: on malformed JSON, with path and line
        OSError: when the file cannot be read
    """
    if path == '-':
        stream = stdin if stdin is not None else sys.stdin
        text = stream.read()
        label = '<stdin>'
    else:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
        label = path
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, label, e.lineno) from e


def load_algebra(path: str, stdin: Optional[TextIO] = None) -> AlgebraStructure:
    return algebra_from_dict(load_json(path, stdin), path)


# ---------------------------------------------------------------------------
# Export


class DataHandler(LoggerMixin):
    """
    Writes JSON documents and tabular reports to disk.
    """

    def __init__(self):
        """Initialize data handler."""
        super().__init__()
        self.export_formats = list(config.SUPPORTED_EXPORT_FORMATS)

    def write_json(self, data: Any, filepath: str) -> bool:
        """
        Write a JSON document with canonical key order.

        Returns:
            True if successful, False otherwise
        """
        try:
            with open(filepath, 'w', encoding='utf-8') as f:
                f.write(dumps(data))
                f.write('\n')
            self.log_info(f"Wrote {filepath}")
            return True
        except OSError as e:
            self.log_error(f"Failed to write {filepath}: {e}")
            return False

    def export_to_csv(self, rows: List[dict], filepath: str) -> bool:
        try:
            pd.DataFrame(rows).to_csv(filepath, index=False)
            self.log_info(f"Exported {len(rows)} rows to {filepath}")
            return True
        except Exception as e:
            self.log_error(f"Failed to export to CSV: {e}")
            return False

    def export_to_json(self, rows: List[dict], filepath: str) -> bool:
        try:
            with open(filepath, 'w', encoding='utf-8') as f:
                json.dump(rows, f, indent=config.JSON_INDENT, ensure_ascii=False, sort_keys=True)
            self.log_info(f"Exported {len(rows)} rows to {filepath}")
            return True
        except Exception as e:
            self.log_error(f"Failed to export to JSON: {e}")
            return False

    def export_to_txt(self, rows: List[dict], filepath: str) -> bool:
        try:
            with open(filepath, 'w', encoding='utf-8') as f:
                f.write(f"{config.APP_NAME} - Report Export\n")
                f.write("=" * 50 + "\n")
                f.write(f"Export Date: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")
                f.write(f"Total Rows: {len(rows)}\n\n")
                f.write(pd.DataFrame(rows).to_string(index=False))
                f.write("\n")
            self.log_info(f"Exported {len(rows)} rows to {filepath}")
            return True
        except Exception as e:
            self.log_error(f"Failed to export to TXT: {e}")
            return False

    def export_report(self, rows: List[dict], filepath: str,
                      format_type: str = config.DEFAULT_EXPORT_FORMAT) -> bool:
        """
        Export report rows in the specified format.

        Args:
            rows: Flat dictionaries, one per report row
            filepath: Path to save the file
            format_type: Export format ('CSV', 'JSON', 'TXT')

        Returns:
            True if successful, False otherwise
        """
        format_type = format_type.upper()
        if format_type not in self.export_formats:
            self.log_error(f"Unsupported export format: {format_type}")
            return False
        if not rows:
            self.log_warning("No rows to export")
            return False
        if format_type == 'CSV':
            return self.export_to_csv(rows, filepath)
        if format_type == 'JSON':
            return self.export_to_json(rows, filepath)
        return self.export_to_txt(rows, filepath)
