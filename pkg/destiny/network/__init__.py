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
    **Network** tools: communication graphs, Metropolis mixing matrices,
    audits of the mixing conditions, the spectral gap and the blockwise
    mixing operator.

"""

from destiny.network._graph import (
    Graph,
    complete_graph,
    erdos_renyi,
    max_resample_attempts,
    path_graph,
    read_edge_list,
    ring_graph,
    write_edge_list,
)
from destiny.network._mixing import (
    Assumption2Report,
    CheckResult,
    MixingMatrix,
    metropolis_weights,
    mix_stack,
    spectral_gap,
    stack_blocks,
    unstack_blocks,
    verify_assumption2,
)

__all__ = [
    "Graph",
    "complete_graph",
    "ring_graph",
    "path_graph",
    "erdos_renyi",
    "max_resample_attempts",
    "read_edge_list",
    "write_edge_list",
]
__all__ += [
    "MixingMatrix",
    "metropolis_weights",
    "spectral_gap",
    "CheckResult",
    "Assumption2Report",
    "verify_assumption2",
    "mix_stack",
    "stack_blocks",
    "unstack_blocks",
]
