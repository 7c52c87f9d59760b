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

"""Progress measures and diagnostics of the solver.

All reductions over agents run in ascending agent order.
"""

import logging
import math

import numpy as np

from destiny._errors import DomainError, ShapeError
from destiny.penalty import (
    h_value,
    local_direction,
    orth_residual,
    project_tangent,
)

_logger = logging.getLogger(__name__)


def mean_blocks(blocks):
    """Returns ``(1/d) sum_i blocks[i]`` accumulated in ascending order."""
    it = iter(blocks)
    try:
        acc = np.array(next(it), dtype=np.float64)
    except StopIteration:
        raise ValueError("At least one block is required") from None
    count = 1
    for B in it:
        acc += B
        count += 1
    return acc / count


def _check_nonempty(states):
    if len(states) == 0:
        raise ValueError("At least one agent state is required")


def _gradient_of(evaluator, X):
    if hasattr(evaluator, "euclidean_grad"):
        return evaluator.euclidean_grad(X)
    return evaluator(X)


def riemannian_gradient_norm(X, grad_evaluator):
    """
    riemannian_gradient_norm(X, grad_evaluator) -> float

    Frobenius norm of ``G - X sym(X^T G)`` with ``G`` the Euclidean
    gradient at `X`. `X` is used as is, feasible or not.
    """
    X = np.asarray(X, dtype=np.float64)
    G = _gradient_of(grad_evaluator, X)
    return float(np.linalg.norm(project_tangent(X, G)))


def substationarity_violation(X_bar_k, X_bar_0, grad_evaluator):
    """
    substationarity_violation(X_bar_k, X_bar_0, grad_evaluator) -> float

    Returns ``||grad f(X_bar_k)||_F / ||grad f(X_bar_0)||_F`` where
    ``grad f`` is the Riemannian gradient formula applied verbatim to the
    (possibly infeasible) agent averages. `grad_evaluator` is an object
    with ``euclidean_grad`` (e.g. a pooled objective) or a callable
    returning the Euclidean gradient of the global objective.

    If the initial gradient vanishes, the absolute norm at `X_bar_k` is
    returned and a warning is logged.
    """
    ref = riemannian_gradient_norm(X_bar_0, grad_evaluator)
    cur = riemannian_gradient_norm(X_bar_k, grad_evaluator)
    if ref == 0.0:
        _logger.warning(
            "Initial Riemannian gradient vanishes; "
            "reporting absolute substationarity"
        )
        return cur
    return cur / ref


def consensus_error(states):
    """
    consensus_error(states) -> float

    Root-mean-square deviation ``sqrt((1/d) sum_i ||X_i - X_bar||_F^2)``.
    Accepts agent states or bare iterates.
    """
    _check_nonempty(states)
    Xs = [getattr(s, "X", s) for s in states]
    X_bar = mean_blocks(Xs)
    total = 0.0
    for X in Xs:
        R = X - X_bar
        total += float(np.sum(R * R))
    return math.sqrt(total / len(Xs))


def feasibility_violation(states):
    """
    feasibility_violation(states) -> float

    Root-mean-square orthogonality residual
    ``sqrt((1/d) sum_i ||X_i^T X_i - I||_F^2)``.
    """
    _check_nonempty(states)
    Xs = [getattr(s, "X", s) for s in states]
    total = 0.0
    for X in Xs:
        R = orth_residual(X)
        total += float(np.sum(R * R))
    return math.sqrt(total / len(Xs))


def merit_value(states, rho, f, beta):
    """
    merit_value(states, rho, f, beta) -> float

    Returns ``h(X_bar) + sum_i ||X_bar - X_i||_F^2
    + rho sum_i ||D_bar - D_i||_F^2`` for the global objective `f`.

    Raises:
        DomainError: if `rho` is not positive.
    """
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho}")
    _check_nonempty(states)
    X_bar = mean_blocks(s.X for s in states)
    D_bar = mean_blocks(s.D for s in states)
    dev_x = 0.0
    dev_d = 0.0
    for s in states:
        RX = X_bar - s.X
        RD = D_bar - s.D
        dev_x += float(np.sum(RX * RX))
        dev_d += float(np.sum(RD * RD))
    return h_value(X_bar, f, beta) + dev_x + rho * dev_d


def tracking_residual(states, objectives, beta):
    """
    tracking_residual(states, objectives, beta) -> float

    Returns ``||D_bar - H_bar||_F`` where ``H_bar`` averages the local
    directions ``H_i(X_i)``. Gradient tracking keeps this at roundoff
    level when the mixing matrix is doubly stochastic.
    """
    _check_nonempty(states)
    if len(objectives) != len(states):
        raise ShapeError(
            f"Got {len(objectives)} objectives for {len(states)} agents"
        )
    D_bar = mean_blocks(s.D for s in states)
    H_bar = mean_blocks(
        local_direction(obj, s.X, beta) for obj, s in zip(objectives, states)
    )
    return float(np.linalg.norm(D_bar - H_bar))


def averaged_update_residual(before, after):
    """
    averaged_update_residual(before, after) -> float

    Relative residual of ``X_bar_{k+1} = X_bar_k - (1/d) sum_j eta_j D_j``
    between the states of two consecutive rounds, normalized by
    ``1 + ||X_bar_k||_F``. The stepsizes are read from `after`.
    """
    if len(before) != len(after):
        raise ShapeError("State lists of different length")
    X_bar = mean_blocks(s.X for s in before)
    step = mean_blocks(b.D * a.eta for b, a in zip(before, after))
    X_next = mean_blocks(s.X for s in after)
    res = np.linalg.norm(X_next - (X_bar - step))
    return float(res / (1.0 + np.linalg.norm(X_bar)))
