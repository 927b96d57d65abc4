"""
Plain-text rendering of command payloads for --pretty.
"""

from typing import Any, List

import pandas as pd


def _is_scalar(value: Any) -> bool:
    return value is None or isinstance(value, (str, int, float, bool))


def _is_records(value: Any) -> bool:
    return isinstance(value, list) and bool(value) and all(isinstance(v, dict) for v in value)


def _is_matrix(value: Any) -> bool:
    return isinstance(value, list) and bool(value) and all(isinstance(v, list) for v in value)


def _frame(records: List[dict]) -> pd.DataFrame:
    return pd.DataFrame([{k: v if _is_scalar(v) else str(v) for k, v in r.items()}
                         for r in records])


def render(payload: Any, title: str = '') -> str:
    """
    Scalars of a dict go into one key/value table; lists of records and row
    matrices get their own tables; nested dicts are rendered recursively.
    """
    blocks = []
    if _is_records(payload):
        blocks.append(_frame(payload).to_string(index=False))
    elif _is_matrix(payload):
        blocks.append(pd.DataFrame(payload).to_string(index=False, header=False))
    elif isinstance(payload, dict):
        scalars = {k: v for k, v in payload.items() if _is_scalar(v)}
        if scalars:
            table = pd.DataFrame({'key': list(scalars), 'value': list(scalars.values())})
            blocks.append(table.to_string(index=False))
        for key, value in payload.items():
            if _is_scalar(value):
                continue
            name = f"{title}.{key}" if title else key
            if isinstance(value, list) and not value:
                blocks.append(f"{name}: (empty)")
            elif _is_records(value) or _is_matrix(value) or isinstance(value, dict):
                blocks.append(f"{name}:\n{render(value, name)}")
            else:
                blocks.append(f"{name}: {', '.join(str(v) for v in value)}")
    else:
        blocks.append(str(payload))
    return '\n\n'.join(blocks)
