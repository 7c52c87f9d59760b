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

"""Defines Python enumeration types used across destiny.

This module provides enumerations for the benchmark problem families,
the stepsize rules of the solver, the data sources understood by the
experiment driver and the termination status of a run.

"""
from enum import Enum, auto

__all__ = [
    "problem_type",
    "stepsize_type",
    "data_source_type",
    "run_status",
]


class problem_type(Enum):
    """
    An enumeration of the supported benchmark objective families.

    :Example:
        .. code-block:: python

            import destiny

            kind = destiny.problem_type["pca"]
            print(kind)
            # Possible output: problem_type.pca
    """

    pca = auto()
    olsr = auto()
    sdl = auto()


class stepsize_type(Enum):
    """
    An enumeration of stepsize rules.

    ``fixed`` uses a common constant stepsize for every agent, ``bb``
    lets every agent pick its own Barzilai-Borwein stepsize.
    """

    fixed = auto()
    bb = auto()


class data_source_type(Enum):
    """
    An enumeration of data sources understood by the experiment driver.
    """

    synthetic = auto()
    csv = auto()


class run_status(Enum):
    """
    An enumeration of termination states of :func:`destiny.engine.run`.

    :Example:
        .. code-block:: python

            import destiny

            result = destiny.engine.run(config, W, objectives, X0)
            if result.status == destiny.run_status.converged:
                print("done in", len(result.trace), "rounds")
    """

    converged = auto()
    max_rounds = auto()
    diverged = auto()
