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
    **Engine** of the decentralized solver: agent states, stepsize rules,
    the synchronous communication round with gradient tracking, the run
    loop with its stopping rule and trace, progress measures and
    reference solutions for testing.

"""

from destiny.engine._destiny import (
    RunResult,
    agent_stepsize,
    bb_stagnation_tol,
    bb_stepsize,
    destiny_round,
    initialize,
    run,
)
from destiny.engine._metrics import (
    averaged_update_residual,
    consensus_error,
    feasibility_violation,
    mean_blocks,
    merit_value,
    riemannian_gradient_norm,
    substationarity_violation,
    tracking_residual,
)
from destiny.engine._oracle import pca_oracle, polar_project, principal_angles
from destiny.engine._state import (
    AgentState,
    RunConfig,
    StepsizeRule,
    Trace,
    TraceRecord,
    trace_columns,
)

__all__ = [
    "AgentState",
    "StepsizeRule",
    "RunConfig",
    "Trace",
    "TraceRecord",
    "trace_columns",
]
__all__ += [
    "initialize",
    "bb_stepsize",
    "bb_stagnation_tol",
    "agent_stepsize",
    "destiny_round",
    "run",
    "RunResult",
]
__all__ += [
    "mean_blocks",
    "riemannian_gradient_norm",
    "substationarity_violation",
    "consensus_error",
    "feasibility_violation",
    "merit_value",
    "tracking_residual",
    "averaged_update_residual",
]
__all__ += [
    "pca_oracle",
    "principal_angles",
    "polar_project",
]
