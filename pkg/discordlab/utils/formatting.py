import csv
import io
import json
from typing import Dict, List

import numpy as np

FORMATS = ('text', 'json', 'csv')


def _default(value):
    """JSON fallback for numpy scalars and arrays"""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def _flatten(data: Dict, prefix: str = '') -> List:
    items = []
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            items.extend(_flatten(value, f"{name}."))
        else:
            items.append((name, value))
    return items


def _scalar_text(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ''
    if isinstance(value, (list, tuple)):
        return json.dumps(value, default=_default)
    return str(value)


def render(report: Dict, fmt: str = 'text') -> str:
    """
    Render a report dictionary.

    json keeps the nesting; text prints one `key: value` line per leaf with
    dotted keys; csv writes the same leaves as a two-row table.
    """
    if fmt == 'json':
        return json.dumps(report, indent=2, default=_default)
    items = _flatten(report)
    if fmt == 'csv':
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow([name for name, _ in items])
        writer.writerow([_scalar_text(value) for _, value in items])
        return buffer.getvalue().rstrip('\n')
    width = max((len(name) for name, _ in items), default=0)
    return '\n'.join(f"{name.ljust(width)} : {_scalar_text(value)}" for name, value in items)
