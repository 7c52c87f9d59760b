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

"""Approximate augmented Lagrangian penalty ``h = g + beta * b`` and its
directions.

With ``C = X X^T X``:

* ``b(X) = ||X^T X - I||_F^2 / 4``
* ``g(X) = 3/2 f(X) - 1/2 f(C)``
* ``G(X) = grad f(C) (3 I - X^T X) / 2 - X sym(X^T grad f(C))``
* ``H(X) = G(X) + beta X (X^T X - I)``

``G`` and ``H`` only need the gradient of ``f`` at ``C``.
"""

import numbers

import numpy as np

from destiny._errors import DomainError

from ._stiefel import _check_same_shape, _check_tall, orth_residual, sym


def check_penalty(beta, strict=False):
    """
    check_penalty(beta, strict=False) -> float

    Validates the penalty parameter. Zero is accepted unless `strict`.
    """
    if not isinstance(beta, numbers.Real) or isinstance(beta, bool):
        raise TypeError(f"Expected a real penalty parameter, got {type(beta)}")
    beta = float(beta)
    if not np.isfinite(beta) or beta < 0 or (strict and beta == 0):
        bound = "> 0" if strict else ">= 0"
        raise DomainError(f"Penalty parameter must be {bound}, got {beta}")
    return beta


def _as_tall(X):
    X = np.asarray(X, dtype=np.float64)
    _check_tall(X)
    return X


def cube(X):
    """Returns ``X @ X.T @ X`` evaluated as ``X @ (X.T @ X)``."""
    X = _as_tall(X)
    return X @ (X.T @ X)


def b_value(X):
    """
    b_value(X) -> float

    Returns the quartic orthogonality penalty ``||X^T X - I||_F^2 / 4``.
    """
    R = orth_residual(X)
    return 0.25 * float(np.sum(R * R))


def b_gradient(X):
    """
    b_gradient(X) -> matrix

    Returns ``X (X^T X - I)``, the gradient of :func:`b_value`.
    """
    X = _as_tall(X)
    return X @ orth_residual(X)


def g_value(X, f):
    """
    g_value(X, f) -> float

    Returns ``3/2 f(X) - 1/2 f(X X^T X)`` for an objective evaluator `f`
    (any callable mapping a matrix to a real number).
    """
    X = _as_tall(X)
    return 1.5 * float(f(X)) - 0.5 * float(f(cube(X)))


def h_value(X, f, beta):
    """
    h_value(X, f, beta) -> float

    Returns the approximate augmented Lagrangian ``g(X) + beta b(X)``.
    """
    beta = check_penalty(beta)
    return g_value(X, f) + beta * b_value(X)


def grad_g(X, grad_f_at_X, grad_f_at_cube):
    """
    grad_g(X, grad_f_at_X, grad_f_at_cube) -> matrix

    Returns the exact gradient of :func:`g_value`::

        3/2 grad f(X) - 1/2 grad f(C) X^T X - X sym(X^T grad f(C))

    where ``C = X X^T X``. Both Euclidean gradients are supplied by the
    caller.
    """
    X = _as_tall(X)
    Gx = np.asarray(grad_f_at_X, dtype=np.float64)
    Gc = np.asarray(grad_f_at_cube, dtype=np.float64)
    _check_same_shape(X, Gx, name_y="grad_f_at_X")
    _check_same_shape(X, Gc, name_y="grad_f_at_cube")
    XtX = X.T @ X
    return 1.5 * Gx - 0.5 * (Gc @ XtX) - X @ sym(X.T @ Gc)


def grad_h(X, grad_f_at_X, grad_f_at_cube, beta):
    """
    grad_h(X, grad_f_at_X, grad_f_at_cube, beta) -> matrix

    Returns the exact gradient of :func:`h_value`.
    """
    beta = check_penalty(beta)
    return grad_g(X, grad_f_at_X, grad_f_at_cube) + beta * b_gradient(X)


def direction_g(X, grad_f_at_cube):
    """
    direction_g(X, grad_f_at_cube) -> matrix

    Returns the approximation ``G(X)`` of the gradient of ``g``, which
    uses the Euclidean gradient at ``X X^T X`` only. ``G(X)`` coincides
    with the Riemannian gradient when `X` has orthonormal columns.
    """
    X = _as_tall(X)
    Gc = np.asarray(grad_f_at_cube, dtype=np.float64)
    _check_same_shape(X, Gc, name_y="grad_f_at_cube")
    p = X.shape[1]
    XtX = X.T @ X
    return Gc @ ((3.0 * np.eye(p) - XtX) / 2) - X @ sym(X.T @ Gc)


def direction_h(X, grad_f_at_cube, beta):
    """
    direction_h(X, grad_f_at_cube, beta) -> matrix

    Returns ``H(X) = G(X) + beta X (X^T X - I)``, the local descent
    direction used by the solver.
    """
    beta = check_penalty(beta)
    return direction_g(X, grad_f_at_cube) + beta * b_gradient(X)


def local_direction(objective, X, beta):
    """
    local_direction(objective, X, beta) -> matrix

    Evaluates ``H(X)`` for a local objective exposing ``euclidean_grad``.
    The Euclidean gradient is taken once, at ``X X^T X``.
    """
    return direction_h(X, objective.euclidean_grad(cube(X)), beta)
