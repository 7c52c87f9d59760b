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

"""Benchmark local objectives.

Every family is written as a local function ``f_i`` of agent ``i``; the
global objective is the average ``f = (1/d) sum_i f_i`` and is provided
by :class:`PooledObjective`.
"""

import abc

import numpy as np

from destiny._errors import ShapeError
from destiny.enum_types import problem_type
from destiny.penalty import as_real_matrix

from ._data import partition_columns


class LocalObjective(abc.ABC):
    """
    Interface of a smooth objective on ``n x p`` matrices.

    Subclasses implement :meth:`value` and :meth:`euclidean_grad`; the
    instance is also callable and then evaluates :meth:`value`.
    """

    @property
    @abc.abstractmethod
    def dims(self):
        """Tuple ``(n, p)`` of the matrix variable shape."""

    @abc.abstractmethod
    def value(self, X):
        """Objective value at `X`."""

    @abc.abstractmethod
    def euclidean_grad(self, X):
        """Euclidean gradient at `X`."""

    def __call__(self, X):
        return self.value(X)

    def _check_point(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.shape != self.dims:
            raise ShapeError(
                f"{type(self).__name__} expects a point of shape "
                f"{self.dims}, got {X.shape}"
            )
        return X


class PcaObjective(LocalObjective):
    """
    PcaObjective(A, p)

    Local PCA objective ``f_i(X) = -1/2 tr(X^T A_i A_i^T X)`` for a local
    sample block ``A_i`` of shape ``n x m_i``. The gradient
    ``-A_i (A_i^T X)`` is formed with two rectangular products.
    """

    def __init__(self, A, p):
        self.A = as_real_matrix(A, name="A")
        self.p = int(p)
        if not 1 <= self.p <= self.A.shape[0]:
            raise ShapeError(
                f"Number of columns p={p} must lie in [1, {self.A.shape[0]}]"
            )

    @property
    def dims(self):
        return (self.A.shape[0], self.p)

    def value(self, X):
        AtX = self.A.T @ self._check_point(X)
        return -0.5 * float(np.sum(AtX * AtX))

    def euclidean_grad(self, X):
        return -(self.A @ (self.A.T @ self._check_point(X)))


class OlsrObjective(LocalObjective):
    """
    OlsrObjective(C, D)

    Local orthogonal least squares regression objective
    ``f_i(X) = ||C_i^T X - D_i^T||_F^2`` with samples ``C_i`` of shape
    ``n x m_i`` and class indicators ``D_i`` of shape ``p x m_i``.
    """

    def __init__(self, C, D):
        self.C = as_real_matrix(C, name="C")
        self.D = as_real_matrix(D, name="D")
        if self.C.shape[1] != self.D.shape[1]:
            raise ShapeError(
                "C and D must hold the same number of samples, got "
                f"{self.C.shape[1]} and {self.D.shape[1]}"
            )
        if self.D.shape[0] > self.C.shape[0]:
            raise ShapeError(
                f"Number of classes {self.D.shape[0]} exceeds the number "
                f"of features {self.C.shape[0]}"
            )

    @property
    def dims(self):
        return (self.C.shape[0], self.D.shape[0])

    def _residual(self, X):
        return self.C.T @ self._check_point(X) - self.D.T

    def value(self, X):
        R = self._residual(X)
        return float(np.sum(R * R))

    def euclidean_grad(self, X):
        return 2.0 * (self.C @ self._residual(X))


class SdlObjective(LocalObjective):
    """
    SdlObjective(B, p)

    Local sparse dictionary learning objective
    ``f_i(X) = -1/4 ||X^T B_i||_4^4`` where ``||Y||_4^4`` is the sum of
    fourth powers of the entries of ``Y``.
    """

    def __init__(self, B, p):
        self.B = as_real_matrix(B, name="B")
        self.p = int(p)
        if not 1 <= self.p <= self.B.shape[0]:
            raise ShapeError(
                f"Number of columns p={p} must lie in [1, {self.B.shape[0]}]"
            )

    @property
    def dims(self):
        return (self.B.shape[0], self.p)

    def value(self, X):
        Y = self._check_point(X).T @ self.B
        Y2 = Y * Y
        return -0.25 * float(np.sum(Y2 * Y2))

    def euclidean_grad(self, X):
        BtX = self.B.T @ self._check_point(X)
        return -(self.B @ (BtX * BtX * BtX))


class PooledObjective(LocalObjective):
    """
    PooledObjective(objectives)

    The global objective ``f = (1/d) sum_i f_i`` of `d` local objectives
    sharing one shape. Sums run in ascending agent order.
    """

    def __init__(self, objectives):
        objectives = list(objectives)
        if not objectives:
            raise ValueError("At least one local objective is required")
        dims = {obj.dims for obj in objectives}
        if len(dims) != 1:
            raise ShapeError(
                f"Local objectives disagree on the variable shape: {dims}"
            )
        self.objectives = objectives

    @property
    def dims(self):
        return self.objectives[0].dims

    def __len__(self):
        return len(self.objectives)

    def value(self, X):
        total = 0.0
        for obj in self.objectives:
            total += obj.value(X)
        return total / len(self.objectives)

    def euclidean_grad(self, X):
        it = iter(self.objectives)
        acc = np.array(next(it).euclidean_grad(X), dtype=np.float64)
        for obj in it:
            acc += obj.euclidean_grad(X)
        return acc / len(self.objectives)


def make_local_objectives(kind, data, d, p, labels=None):
    """
    make_local_objectives(kind, data, d, p, labels=None) -> list

    Splits the global data matrix column-wise over `d` agents and builds
    one local objective per block.

    Args:
        kind (str or :class:`destiny.problem_type`): objective family.
        data (matrix): global data ``A``, ``C`` or ``B`` of shape ``n x m``.
        d (int): number of agents.
        p (int): number of columns of the variable. For OLSR it must match
            the number of rows of `labels`.
        labels (matrix, optional): class indicator matrix ``D`` of shape
            ``p x m``, required for OLSR.
    """
    if isinstance(kind, str):
        try:
            kind = problem_type[kind]
        except KeyError:
            raise ValueError(f"Unknown problem family '{kind}'") from None
    blocks = partition_columns(data, d)
    if kind is problem_type.pca:
        return [PcaObjective(A_i, p) for A_i in blocks]
    if kind is problem_type.sdl:
        return [SdlObjective(B_i, p) for B_i in blocks]
    if kind is problem_type.olsr:
        if labels is None:
            raise ValueError("OLSR objectives need a class indicator matrix")
        labels = as_real_matrix(labels, name="labels")
        if labels.shape[0] != p:
            raise ShapeError(
                f"Indicator matrix has {labels.shape[0]} rows, expected p={p}"
            )
        label_blocks = partition_columns(labels, d)
        return [
            OlsrObjective(C_i, D_i) for C_i, D_i in zip(blocks, label_blocks)
        ]
    raise TypeError(f"Expected a problem_type, got {type(kind)}")


def fd_gradient(objective, X):
    """
    fd_gradient(objective, X) -> matrix

    Central finite-difference gradient of `objective` (a
    :class:`LocalObjective` or any callable) at `X`, entry by entry, with
    step ``1e-6 * (1 + ||X||_inf)``, where ``||X||_inf`` is the largest
    absolute entry of `X` (not the maximum absolute row sum).
    """
    f = objective.value if isinstance(objective, LocalObjective) else objective
    X = np.array(X, dtype=np.float64)
    step = 1e-6 * (1.0 + float(np.max(np.abs(X))))
    grad = np.empty_like(X)
    for idx in np.ndindex(*X.shape):
        orig = X[idx]
        X[idx] = orig + step
        f_plus = float(f(X))
        X[idx] = orig - step
        f_minus = float(f(X))
        X[idx] = orig
        grad[idx] = (f_plus - f_minus) / (2 * step)
    return grad
