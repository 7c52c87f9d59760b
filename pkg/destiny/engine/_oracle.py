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

"""Reference solutions and subspace comparisons."""

import numpy as np
import scipy.linalg

from destiny._errors import DegenerateInputError, ShapeError
from destiny.penalty import as_real_matrix, domain_tol, validate_stiefel_point


def pca_oracle(A, p):
    """
    pca_oracle(A: matrix n x m, p: int) -> Stiefel point n x p

    Returns the top-`p` left singular vectors of `A` from a direct SVD,
    ordered by descending singular value. Each column is scaled by the
    sign of its largest-magnitude entry so that entry is positive.

    Raises:
        ShapeError: if `p` is not in ``[1, n]``.
        DegenerateInputError: if `A` has numerical rank below `p`.
    """
    A = as_real_matrix(A, name="A")
    n = A.shape[0]
    if not 1 <= p <= n:
        raise ShapeError(f"Number of columns p={p} must lie in [1, {n}]")
    U, s, _ = scipy.linalg.svd(A, full_matrices=False)
    tol = max(A.shape) * np.finfo(np.float64).eps * (s[0] if s.size else 0.0)
    if s.size < p or s[p - 1] <= tol:
        raise DegenerateInputError(
            f"Data matrix has numerical rank below p={p}"
        )
    U = U[:, :p]
    pivots = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[pivots, np.arange(p)])
    return np.ascontiguousarray(U * signs)


def principal_angles(X, Y):
    """
    principal_angles(X, Y) -> numpy.ndarray of p angles

    Principal angles in radians between the column spaces of the Stiefel
    points `X` and `Y`, in ascending order.

    Angles are ``arccos`` of the singular values of ``X^T Y`` clamped to
    ``[0, 1]``. Angles below ``pi/4`` are instead taken as ``arcsin`` of
    the singular values of ``Y - X X^T Y``, which resolves them down to
    roundoff where the cosine is flat.
    Both formulas give the same angles in exact arithmetic, so the switch
    only affects accuracy.
    """
    X = validate_stiefel_point(X, tol=domain_tol, name="X")
    Y = validate_stiefel_point(Y, tol=domain_tol, name="Y")
    if X.shape != Y.shape:
        raise ShapeError(f"Shape mismatch {X.shape} and {Y.shape}")
    cos = scipy.linalg.svdvals(X.T @ Y)
    angles = np.sort(np.arccos(np.clip(cos, 0.0, 1.0)))
    sin = np.sort(scipy.linalg.svdvals(Y - X @ (X.T @ Y)))
    small = np.arcsin(np.clip(sin, 0.0, 1.0))
    return np.where(angles < np.pi / 4, small, angles)


def polar_project(X):
    """
    polar_project(X: matrix n x p) -> Stiefel point

    Returns the orthogonal polar factor ``U V^T`` of ``X = U S V^T``, the
    nearest Stiefel point to `X` in the Frobenius norm.

    Raises:
        DegenerateInputError: if `X` is rank deficient.
    """
    X = as_real_matrix(X)
    if X.shape[0] < X.shape[1]:
        raise ShapeError(f"Expected a tall matrix, got shape {X.shape}")
    s = scipy.linalg.svdvals(X)
    if s[-1] <= max(X.shape) * np.finfo(np.float64).eps * s[0]:
        raise DegenerateInputError("Polar factor of a rank deficient matrix")
    U, _ = scipy.linalg.polar(X, side="right")
    return np.ascontiguousarray(U)
