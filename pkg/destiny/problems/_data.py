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

import operator
from dataclasses import dataclass

import numpy as np

from destiny._errors import DomainError, ShapeError
from destiny.penalty import as_real_matrix, orthonormalize

_max_seed = 2**64


def check_seed(seed):
    """Validates a 64-bit unsigned seed and returns it as ``int``."""
    seed = operator.index(seed)
    if not 0 <= seed < _max_seed:
        raise DomainError(f"Seed must be a 64-bit unsigned integer, got {seed}")
    return seed


@dataclass(frozen=True)
class SyntheticSpec:
    """
    SyntheticSpec(n, m, p, xi, seed=0)

    Parameters of a synthetic PCA data matrix ``A = U Sigma V^T`` of shape
    ``n x m`` whose singular values decay as ``xi**(i/2)``.
    """

    n: int
    m: int
    p: int
    xi: float
    seed: int = 0

    def __post_init__(self):
        for name in ("n", "m", "p"):
            if operator.index(getattr(self, name)) < 1:
                raise DomainError(f"{name} must be a positive integer")
        if not self.p <= self.n <= self.m:
            raise DomainError(
                f"Expected p <= n <= m, got p={self.p}, n={self.n}, m={self.m}"
            )
        if not 0.0 < self.xi < 1.0:
            raise DomainError(f"xi must lie in (0, 1), got {self.xi}")
        check_seed(self.seed)

    def singular_values(self):
        """Returns ``[xi**(i/2) for i in 1..n]``."""
        i = np.arange(1, self.n + 1, dtype=np.float64)
        return self.xi ** (i / 2)


def generate_synthetic_pca(spec):
    """
    generate_synthetic_pca(spec: SyntheticSpec) -> matrix n x m

    Builds ``A = U Sigma V^T`` where ``U`` (n x n) and ``V`` (m x n) are
    orthonormalized standard normal matrices drawn, in that order, from a
    generator seeded with ``spec.seed``.
    """
    if not isinstance(spec, SyntheticSpec):
        raise TypeError(f"Expected SyntheticSpec, got {type(spec)}")
    rng = np.random.default_rng(spec.seed)
    U = orthonormalize(rng.standard_normal((spec.n, spec.n)))
    V = orthonormalize(rng.standard_normal((spec.m, spec.n)))
    return np.ascontiguousarray((U * spec.singular_values()) @ V.T)


def _unit_columns(M):
    return M / np.linalg.norm(M, axis=0)


def generate_synthetic_olsr(n, m, p, seed=0):
    """
    generate_synthetic_olsr(n, m, p, seed=0) -> (C, D)

    Returns samples ``C`` (n x m) and a one-hot class indicator matrix
    ``D`` (p x m) with uniformly drawn labels. The samples are standard
    normal columns scaled so that ``C`` has unit spectral norm, the scale
    of the synthetic PCA data.
    """
    seed = check_seed(seed)
    if not 1 <= p <= n or m < 1:
        raise DomainError(f"Expected 1 <= p <= n and m >= 1, got {(n, m, p)}")
    rng = np.random.default_rng(seed)
    C = rng.standard_normal((n, m))
    C /= np.linalg.norm(C, 2)
    labels = rng.integers(0, p, size=m)
    D = np.zeros((p, m))
    D[labels, np.arange(m)] = 1.0
    return C, D


def generate_synthetic_sdl(n, m, seed=0):
    """
    generate_synthetic_sdl(n, m, seed=0) -> B

    Returns a data matrix ``B`` of shape ``n x m`` whose columns are
    standard normal samples scaled to unit norm.
    """
    seed = check_seed(seed)
    if n < 1 or m < 1:
        raise DomainError(f"Expected positive dimensions, got {(n, m)}")
    rng = np.random.default_rng(seed)
    return _unit_columns(rng.standard_normal((n, m)))


def partition_columns(A, d):
    """
    partition_columns(A: matrix n x m, d: int) -> list of d matrices

    Splits `A` into `d` contiguous column blocks whose sizes differ by at
    most one; the first ``m % d`` blocks carry the extra column.
    """
    A = as_real_matrix(A, name="A")
    d = operator.index(d)
    m = A.shape[1]
    if d < 1:
        raise DomainError(f"Number of agents must be positive, got {d}")
    if d > m:
        raise ShapeError(
            f"Can not distribute {m} columns over {d} agents without "
            "leaving an agent empty"
        )
    base, extra = divmod(m, d)
    blocks = []
    start = 0
    for i in range(d):
        stop = start + base + (1 if i < extra else 0)
        blocks.append(np.ascontiguousarray(A[:, start:stop]))
        start = stop
    return blocks
