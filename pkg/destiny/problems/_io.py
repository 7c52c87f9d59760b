#                 Decentralized Stiefel Optimization (destiny)
#
# Copyright 2022 The destiny developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reading and writing dense matrices as headerless CSV files.
"""

import csv
import math

import numpy as np

from destiny._errors import DataFormatError

# 17 significant digits reproduce any float64 exactly
float_format = "{:.16e}"


def _decode_line(raw, path, row_no):
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as err:
        raise DataFormatError(
            f"invalid UTF-8 byte {raw[err.start:err.start + 1]!r}",
            path=path,
            row=row_no,
            column=raw.count(b",", 0, err.start) + 1,
        ) from None


def load_matrix_csv(path):
    """
    load_matrix_csv(path) -> matrix

    Reads a rectangular, comma-separated, headerless file of decimal
    numbers, one matrix row per line.

    Raises:
        DataFormatError: on an empty file, bytes that are not UTF-8, rows
            of different length or cells that are not finite numbers. Row
            and column positions in the message are 1-based.
        OSError: if the file can not be opened.
    """
    with open(path, "rb") as fh:
        lines = [
            _decode_line(raw, path, row_no)
            for row_no, raw in enumerate(fh.read().splitlines(), start=1)
        ]
    rows = []
    width = None
    for row_no, row in enumerate(csv.reader(lines), start=1):
        if width is None:
            width = len(row)
            if width == 0:
                raise DataFormatError("empty row", path=path, row=row_no)
        elif len(row) != width:
            raise DataFormatError(
                f"ragged row with {len(row)} cells, expected {width}",
                path=path,
                row=row_no,
            )
        values = []
        for col_no, cell in enumerate(row, start=1):
            try:
                v = float(cell.strip())
            except ValueError:
                raise DataFormatError(
                    f"non-numeric cell '{cell}'",
                    path=path,
                    row=row_no,
                    column=col_no,
                ) from None
            if not math.isfinite(v):
                raise DataFormatError(
                    f"non-finite cell '{cell}'",
                    path=path,
                    row=row_no,
                    column=col_no,
                )
            values.append(v)
        rows.append(values)
    if not rows:
        raise DataFormatError("empty file", path=path)
    return np.array(rows, dtype=np.float64)


def save_matrix_csv(M, path):
    """
    save_matrix_csv(M, path)

    Writes `M` in the format read by :func:`load_matrix_csv`, with 17
    significant digits per entry.
    """
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2:
        raise ValueError(f"Expected a matrix, got shape {M.shape}")
    with open(path, "w", encoding="utf-8") as fh:
        for row in M:
            fh.write(",".join(float_format.format(v) for v in row) + "\n")
