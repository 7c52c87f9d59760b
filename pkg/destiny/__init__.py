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

"""
    **Decentralized Stiefel Optimization (destiny)** simulates a network of
    agents that jointly minimize a sum of smooth local functions subject to
    orthogonality constraints.

    Every agent descends along an approximate gradient of a penalty
    function that keeps iterates near the Stiefel manifold, so no agent
    ever projects or retracts. Neighbors exchange a single message per
    round, and gradient tracking keeps the average of the local trackers
    equal to the average of the local directions. The package provides
    the penalty computations, benchmark problems (PCA, orthogonal least
    squares regression, sparse dictionary learning), communication graphs
    with Metropolis mixing matrices, the solver itself and a command line
    experiment driver.
"""
__author__ = "The destiny developers"

from destiny import engine, network, penalty, problems
from destiny._config import ExperimentConfig, parse_config, serialize_config
from destiny._diagnostics import solver_diagnostics
from destiny._errors import (
    ConfigError,
    ConnectivityError,
    DataFormatError,
    DegenerateInputError,
    DivergenceError,
    DomainError,
    ShapeError,
)
from destiny._experiment import (
    read_trace_csv,
    run_experiment,
    verify_experiment,
    write_trace_csv,
)

from ._timer import RoundTimer
from ._version import get_versions
from .enum_types import (
    data_source_type,
    problem_type,
    run_status,
    stepsize_type,
)

__all__ = [
    "ShapeError",
    "DomainError",
    "DegenerateInputError",
    "DataFormatError",
    "ConnectivityError",
    "DivergenceError",
    "ConfigError",
]
__all__ += [
    "ExperimentConfig",
    "parse_config",
    "serialize_config",
    "run_experiment",
    "verify_experiment",
    "write_trace_csv",
    "read_trace_csv",
]
__all__ += [
    "RoundTimer",
    "solver_diagnostics",
]
__all__ += [
    "problem_type",
    "stepsize_type",
    "data_source_type",
    "run_status",
]
# add submodules
__all__ += [
    "engine",
    "network",
    "penalty",
    "problems",
]

__version__ = get_versions()["version"]
del get_versions
