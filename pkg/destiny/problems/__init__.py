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
    **Benchmark problems**: local objectives of principal component
    analysis, orthogonal least squares regression and sparse dictionary
    learning, synthetic data generators, column partitioning over agents
    and CSV ingestion.

"""

from destiny.problems._data import (
    SyntheticSpec,
    check_seed,
    generate_synthetic_olsr,
    generate_synthetic_pca,
    generate_synthetic_sdl,
    partition_columns,
)
from destiny.problems._io import (
    float_format,
    load_matrix_csv,
    save_matrix_csv,
)
from destiny.problems._objectives import (
    LocalObjective,
    OlsrObjective,
    PcaObjective,
    PooledObjective,
    SdlObjective,
    fd_gradient,
    make_local_objectives,
)

__all__ = [
    "LocalObjective",
    "PcaObjective",
    "OlsrObjective",
    "SdlObjective",
    "PooledObjective",
    "make_local_objectives",
    "fd_gradient",
]
__all__ += [
    "SyntheticSpec",
    "check_seed",
    "generate_synthetic_pca",
    "generate_synthetic_olsr",
    "generate_synthetic_sdl",
    "partition_columns",
]
__all__ += [
    "load_matrix_csv",
    "save_matrix_csv",
    "float_format",
]
