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
    **Penalty core** collects the matrix computations on and around the
    Stiefel manifold: symmetric parts, orthogonality residuals, the
    approximate augmented Lagrangian ``h = g + beta b`` with its exact
    gradient and its approximate directions ``G`` and ``H``, and the
    Riemannian gradient.

"""

from destiny.penalty._penalty import (
    b_gradient,
    b_value,
    check_penalty,
    cube,
    direction_g,
    direction_h,
    g_value,
    grad_g,
    grad_h,
    h_value,
    local_direction,
)
from destiny.penalty._stiefel import (
    as_real_matrix,
    construction_tol,
    domain_tol,
    in_bounded_region,
    is_stiefel,
    orth_residual,
    orthonormalize,
    project_tangent,
    region_radius,
    riemannian_gradient,
    sym,
    validate_stiefel_point,
)

__all__ = [
    "as_real_matrix",
    "sym",
    "orth_residual",
    "is_stiefel",
    "validate_stiefel_point",
    "orthonormalize",
    "project_tangent",
    "riemannian_gradient",
    "in_bounded_region",
    "construction_tol",
    "domain_tol",
    "region_radius",
]
__all__ += [
    "check_penalty",
    "cube",
    "b_value",
    "b_gradient",
    "g_value",
    "h_value",
    "grad_g",
    "grad_h",
    "direction_g",
    "direction_h",
    "local_direction",
]
