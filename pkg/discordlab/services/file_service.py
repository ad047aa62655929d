import csv
import json
import os
from typing import Iterable, Tuple

import numpy as np

from discordlab.errors import ValidationError
from discordlab.models.reports import ScanRow
from discordlab.models.state import DensityMatrix


class StateFileService:
    """
    Read and write StateFiles and scan CSVs.

    A StateFile is a JSON document {"dims": [m, n], "matrix": [[[re, im], ...], ...]}
    holding one state, row-major in the computational product basis. Floats
    are written with Python's shortest round-trip repr, so a file reloads to
    the identical matrix.
    """

    @staticmethod
    def save_state(rho: DensityMatrix, path: str) -> str:
        """
        Write a state to `path`, creating parent folders.

        Returns:
            The path written
        """
        folder = os.path.dirname(os.path.abspath(path))
        os.makedirs(folder, exist_ok=True)
        try:
            with open(path, 'w') as f:
                json.dump(rho.to_dict(), f, separators=(',', ':'))
                f.write('\n')
        except OSError as e:
            raise StateFileError(f"Cannot write state file {path}: {e}")
        return path

    @staticmethod
    def parse_state(document, repartition: Tuple[int, int] = None) -> DensityMatrix:
        if not isinstance(document, dict) or 'dims' not in document or 'matrix' not in document:
            raise StateFileError("State file needs 'dims' and 'matrix' fields")
        dims = document['dims']
        if not isinstance(dims, list) or len(dims) != 2 or not all(isinstance(d, int) for d in dims):
            raise StateFileError(f"'dims' must be a pair of integers, got {dims!r}")

        try:
            pairs = np.asarray(document['matrix'], dtype=float)
        except (TypeError, ValueError) as e:
            raise StateFileError(f"'matrix' is not a nested array of [re, im] pairs: {e}")
        size = dims[0] * dims[1]
        if pairs.shape != (size, size, 2):
            raise StateFileError(
                f"'matrix' has shape {pairs.shape}, expected ({size}, {size}, 2) for dims {dims}"
            )
        rho = DensityMatrix.from_array(pairs[..., 0] + 1j * pairs[..., 1], tuple(dims))
        if repartition is not None:
            rho = rho.with_dims(repartition)
        return rho

    @staticmethod
    def load_state(path: str, repartition: Tuple[int, int] = None) -> DensityMatrix:
        """
        Load and validate a state; `repartition` reinterprets its dims.

        Hermiticity, trace and positivity are checked with the Config
        tolerances on every load.
        """
        try:
            with open(path, 'r') as f:
                document = json.load(f)
        except FileNotFoundError:
            raise StateFileError(f"State file not found: {path}")
        except json.JSONDecodeError as e:
            raise StateFileError(f"State file {path} is not valid JSON: {e}")
        return StateFileService.parse_state(document, repartition)

    @staticmethod
    def write_scan_csv(rows: Iterable[ScanRow], path: str) -> str:
        folder = os.path.dirname(os.path.abspath(path))
        try:
            os.makedirs(folder, exist_ok=True)
            with open(path, 'w', newline='') as f:
                writer = csv.writer(f)
                writer.writerow(ScanRow.CSV_HEADER)
                for row in rows:
                    writer.writerow(format_csv_row(row.to_row()))
        except OSError as e:
            raise StateFileError(f"Cannot write scan file {path}: {e}")
        return path


def format_csv_row(values) -> list:
    out = []
    for value in values:
        if isinstance(value, (bool, np.bool_)):
            out.append('true' if value else 'false')
        elif isinstance(value, (float, np.floating)):
            out.append(repr(float(value)))
        else:
            out.append(value)
    return out


def parse_dims(text: str) -> Tuple[int, int]:
    """'2x32' -> (2, 32)"""
    try:
        m, n = (int(part) for part in text.lower().split('x'))
    except ValueError:
        raise ValidationError(f"Dimensions must look like MxN, got {text!r}")
    if m < 1 or n < 1:
        raise ValidationError(f"Dimensions must be positive, got {text!r}")
    return m, n


class StateFileError(ValidationError):
    """Custom exception for state file errors"""
    pass
