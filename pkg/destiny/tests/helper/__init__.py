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

"""Helper module for destiny/tests
"""

from ._helper import (
    random_mixing,
    pca_instance,
    random_near_stiefel,
    random_stiefel,
    single_process_iterates,
    write_config,
)

__all__ = [
    "random_mixing",
    "pca_instance",
    "random_near_stiefel",
    "random_stiefel",
    "single_process_iterates",
    "write_config",
]
