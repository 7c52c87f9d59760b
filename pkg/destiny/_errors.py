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

"""Exception types raised by :mod:`destiny`.
"""

__all__ = [
    "ShapeError",
    "DomainError",
    "DegenerateInputError",
    "DataFormatError",
    "ConnectivityError",
    "DivergenceError",
    "ConfigError",
]


class ShapeError(ValueError):
    """Raised when matrix operands have incompatible or invalid shapes."""


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation,
    e.g. an infeasible point passed where a Stiefel point is required.
    """


class DegenerateInputError(ValueError):
    """Raised when a matrix is numerically rank deficient."""


class DataFormatError(ValueError):
    """
    DataFormatError(message, path=None, row=None, column=None)

    Raised when a CSV matrix or an edge-list file can not be parsed.
    ``row`` and ``column`` are 1-based positions of the offending cell
    when known.
    """

    def __init__(self, message, path=None, row=None, column=None):
        location = []
        if path is not None:
            location.append(str(path))
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column {column}")
        if location:
            message = ", ".join(location) + ": " + message
        super().__init__(message)
        self.path = path
        self.row = row
        self.column = column


class ConnectivityError(RuntimeError):
    """Raised when a connected communication graph is required but
    none is available."""


class DivergenceError(ArithmeticError):
    """
    DivergenceError(round_index, message=None, trace=None)

    Raised when an iterate acquires non-finite entries. ``round`` is the
    0-based index of the offending round, ``trace`` holds the records of
    the rounds completed before it when the error comes from
    :func:`destiny.engine.run`.
    """

    def __init__(self, round_index, message=None, trace=None):
        if message is None:
            message = f"non-finite iterate encountered in round {round_index}"
        super().__init__(message)
        self.round = round_index
        self.trace = trace


class ConfigError(ValueError):
    """
    ConfigError(message, key=None, path=None, lineno=None)

    Raised for missing, unknown or out-of-range experiment settings.
    """

    def __init__(self, message, key=None, path=None, lineno=None):
        prefix = ""
        if path is not None:
            prefix = str(path)
            if lineno is not None:
                prefix += f":{lineno}"
            prefix += ": "
        if key is not None:
            prefix += f"{key}: "
        super().__init__(prefix + message)
        self.reason = message
        self.key = key
        self.path = path
        self.lineno = lineno
