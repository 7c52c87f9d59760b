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

import numpy as np
import scipy.linalg

from destiny._errors import DegenerateInputError, DomainError, ShapeError

# feasibility tolerances: points are built to the first and remain
# usable up to the second
construction_tol = 1e-12
domain_tol = 1e-6

region_radius = 1.0 / 6.0
_region_slack = 8 * np.finfo(np.float64).eps


def as_real_matrix(X, name="X"):
    """
    as_real_matrix(X, name="X") -> numpy.ndarray

    Converts `X` into a 2-D float64 array and checks that all of its
    entries are finite.

    Raises:
        ShapeError: if `X` is not two-dimensional or has an empty axis.
        DomainError: if `X` has NaN or infinite entries.
    """
    M = np.asarray(X, dtype=np.float64)
    if M.ndim != 2:
        raise ShapeError(
            f"Expected a two-dimensional matrix for {name}, "
            f"got an array with {M.ndim} dimension(s)"
        )
    if 0 in M.shape:
        raise ShapeError(f"Matrix {name} has an empty dimension {M.shape}")
    if not np.all(np.isfinite(M)):
        raise DomainError(f"Matrix {name} has non-finite entries")
    return M


def _check_tall(X, name="X"):
    n, p = X.shape
    if n < p:
        raise ShapeError(
            f"Expected {name} with at least as many rows as columns, "
            f"got shape {X.shape}"
        )


def _check_same_shape(X, Y, name_x="X", name_y="G"):
    if X.shape != Y.shape:
        raise ShapeError(
            f"Shape mismatch: {name_x} has shape {X.shape} while "
            f"{name_y} has shape {Y.shape}"
        )


def sym(B):
    """
    sym(B: square matrix) -> square matrix

    Returns the symmetric part ``(B + B.T) / 2`` of `B`. Mirrored entries
    are averaged, so the result is symmetric bit for bit.
    """
    B = np.asarray(B, dtype=np.float64)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise ShapeError(f"Expected a square matrix, got shape {B.shape}")
    return (B + B.T) / 2


def orth_residual(X):
    """
    orth_residual(X: matrix n x p) -> matrix p x p

    Returns ``X.T @ X - I_p``, the operand of the orthogonality constraint.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ShapeError(f"Expected a matrix, got shape {X.shape}")
    _check_tall(X)
    p = X.shape[1]
    return sym(X.T @ X) - np.eye(p)


def is_stiefel(X, tol=construction_tol):
    """Returns True if ``||X.T @ X - I||_F <= tol``."""
    return bool(np.linalg.norm(orth_residual(X)) <= tol)


def validate_stiefel_point(X, tol=construction_tol, name="X"):
    """
    validate_stiefel_point(X, tol=1e-12, name="X") -> numpy.ndarray

    Returns `X` as a float64 matrix after checking that its columns are
    orthonormal within `tol`.

    Raises:
        DomainError: if the orthogonality residual exceeds `tol`.
    """
    X = as_real_matrix(X, name=name)
    res = np.linalg.norm(orth_residual(X))
    if res > tol:
        raise DomainError(
            f"{name} is not a point of the Stiefel manifold: "
            f"||X^T X - I||_F = {res:.3e} exceeds {tol:.1e}"
        )
    return X


def project_tangent(X, G):
    """
    project_tangent(X, G) -> matrix

    Returns ``G - X @ sym(X.T @ G)`` without checking feasibility of `X`.
    On the Stiefel manifold this is the Riemannian gradient, elsewhere it
    is the same formula applied verbatim.
    """
    return G - X @ sym(X.T @ G)


def riemannian_gradient(X, grad_f_at_X):
    """
    riemannian_gradient(X: Stiefel point, grad_f_at_X: matrix) -> matrix

    Returns the Riemannian gradient ``grad f(X) = G - X sym(X^T G)`` of a
    function with Euclidean gradient ``G = grad_f_at_X`` at `X`.

    Raises:
        DomainError: if `X` violates orthogonality by more than 1e-6.
        ShapeError: if the shapes of `X` and the gradient differ.
    """
    X = validate_stiefel_point(X, tol=domain_tol)
    G = as_real_matrix(grad_f_at_X, name="grad_f_at_X")
    _check_same_shape(X, G, name_y="grad_f_at_X")
    return project_tangent(X, G)


def orthonormalize(M):
    """
    orthonormalize(M: matrix n x p) -> Stiefel point

    Returns the orthonormal factor of the thin QR factorization of `M`,
    with signs chosen so that the diagonal of the triangular factor is
    nonnegative. The output spans the column space of `M`.

    Raises:
        ShapeError: if `M` has fewer rows than columns.
        DegenerateInputError: if `M` is numerically rank deficient.
    """
    M = as_real_matrix(M, name="M")
    _check_tall(M, name="M")
    Q, R = scipy.linalg.qr(M, mode="economic")
    diag_R = np.diag(R)
    scale = np.max(np.abs(diag_R))
    rank_tol = max(M.shape) * np.finfo(np.float64).eps * scale
    if scale == 0.0 or np.any(np.abs(diag_R) <= rank_tol):
        raise DegenerateInputError(
            f"Matrix of shape {M.shape} does not have full column rank"
        )
    signs = np.where(diag_R < 0, -1.0, 1.0)
    return np.ascontiguousarray(Q * signs)


def in_bounded_region(X, radius=region_radius):
    """
    in_bounded_region(X: matrix) -> bool

    Returns True if ``||X.T @ X - I_p||_F <= 1/6``, the bounded region on
    which the approximate direction controls feasibility. Points on the
    boundary are accepted up to a few units of roundoff.
    """
    res = np.linalg.norm(orth_residual(X))
    return bool(res <= radius + _region_slack)
