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

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from destiny._errors import ConnectivityError, DomainError, ShapeError

from ._graph import Graph

stochasticity_tol = 1e-12
_symmetry_tol = 1e-12


def _as_square(W):
    W = np.asarray(W, dtype=np.float64)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise ShapeError(f"Expected a square matrix, got shape {W.shape}")
    return W


def _asymmetry(W):
    return float(np.max(np.abs(W - W.T))) if W.size else 0.0


def spectral_gap(W):
    """
    spectral_gap(W: d x d symmetric matrix) -> float

    Returns ``||W - 1 1^T / d||_2`` from a symmetric eigendecomposition.
    The value is below one for every mixing matrix of a connected graph.

    Raises:
        DomainError: if `W` is not symmetric.
    """
    W = _as_square(W)
    if _asymmetry(W) > _symmetry_tol * max(1.0, float(np.max(np.abs(W)))):
        raise DomainError("Spectral gap requires a symmetric matrix")
    d = W.shape[0]
    eig = np.linalg.eigvalsh(W - np.full((d, d), 1.0 / d))
    return float(np.max(np.abs(eig)))


class MixingMatrix:
    """
    MixingMatrix(W, graph=None)

    Symmetric doubly stochastic weights of a communication graph, with
    the spectral gap ``lambda = ||W - 1 1^T / d||_2`` computed on first
    access. The stored matrix is read-only.

    Construction does not validate `W`; use :func:`metropolis_weights` to
    obtain a matrix that satisfies all mixing conditions, or
    :func:`verify_assumption2` to audit an arbitrary one.
    """

    def __init__(self, W, graph=None):
        W = np.array(_as_square(W), dtype=np.float64, copy=True)
        if graph is not None:
            if not isinstance(graph, Graph):
                raise TypeError(f"Expected Graph, got {type(graph)}")
            if graph.d != W.shape[0]:
                raise ShapeError(
                    f"Graph has {graph.d} nodes but W is {W.shape[0]}x"
                    f"{W.shape[0]}"
                )
        W.setflags(write=False)
        self._W = W
        self._graph = graph

    @property
    def W(self):
        return self._W

    @property
    def graph(self):
        return self._graph

    @property
    def d(self):
        return self._W.shape[0]

    @cached_property
    def spectral_gap(self):
        """``||W - 1 1^T / d||_2``."""
        return spectral_gap(self._W)

    def __array__(self, dtype=None, copy=None):
        if dtype is None and not copy:
            return self._W
        return np.array(self._W, dtype=dtype, copy=True)

    def __repr__(self):
        return f"MixingMatrix(d={self.d})"


def metropolis_weights(graph):
    """
    metropolis_weights(graph: Graph) -> MixingMatrix

    Metropolis-Hastings weights: an edge ``(i, j)`` gets
    ``1 / (1 + max(deg_i, deg_j))``, non-edges get zero and the diagonal
    takes the remainder of each row.

    Raises:
        ConnectivityError: if `graph` is disconnected.
    """
    if not isinstance(graph, Graph):
        raise TypeError(f"Expected Graph, got {type(graph)}")
    if not graph.is_connected:
        raise ConnectivityError(
            f"Mixing weights require a connected graph, got {graph!r}"
        )
    d = graph.d
    deg = graph.degrees()
    W = np.zeros((d, d))
    for i, j in graph.edges:
        w = 1.0 / (1.0 + max(deg[i], deg[j]))
        W[i, j] = w
        W[j, i] = w
    for i in range(d):
        off = 0.0
        for j in range(d):
            if j != i:
                off += W[i, j]
        W[i, i] = 1.0 - off
    return MixingMatrix(W, graph=graph)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one mixing condition and its worst violation."""

    passed: bool
    worst: float


@dataclass(frozen=True)
class Assumption2Report:
    """
    Audit of a mixing matrix: symmetry, double stochasticity,
    nonnegativity and conformance to the graph's sparsity pattern, plus
    the spectral gap (None when `W` is not symmetric).
    """

    symmetry: CheckResult
    stochasticity: CheckResult
    nonnegativity: CheckResult
    pattern: CheckResult
    spectral_gap: object = None
    checks: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "checks",
            {
                "symmetry": self.symmetry,
                "stochasticity": self.stochasticity,
                "nonnegativity": self.nonnegativity,
                "pattern": self.pattern,
            },
        )

    @property
    def conditions_passed(self):
        """True if the four structural conditions hold."""
        return all(c.passed for c in self.checks.values())

    @property
    def passed(self):
        """True if the structural conditions hold and lambda < 1."""
        return (
            self.conditions_passed
            and self.spectral_gap is not None
            and self.spectral_gap < 1.0
        )

    @property
    def worst_violation(self):
        return max(c.worst for c in self.checks.values())

    def lines(self):
        """Human-readable report, one line per condition."""
        out = []
        for name, c in self.checks.items():
            status = "pass" if c.passed else "FAIL"
            out.append(f"{name:<14} {status}  worst={c.worst:.3e}")
        gap = "n/a"
        if self.spectral_gap is not None:
            gap = f"{self.spectral_gap:.6e}"
        out.append(f"{'spectral_gap':<14} {gap}")
        return out


def verify_assumption2(W, graph, tol=stochasticity_tol):
    """
    verify_assumption2(W, graph, tol=1e-12) -> Assumption2Report

    Checks the conditions a mixing matrix must satisfy on `graph`. The
    function only reports; it does not raise on violations.
    """
    W = np.asarray(W, dtype=np.float64)
    if W.ndim != 2 or W.shape != (graph.d, graph.d):
        inf = CheckResult(False, float("inf"))
        return Assumption2Report(inf, inf, inf, inf, None)
    d = graph.d
    asym = _asymmetry(W)
    symmetry = CheckResult(asym <= tol, asym)
    stoch = max(
        float(np.max(np.abs(W.sum(axis=1) - 1.0))),
        float(np.max(np.abs(W.sum(axis=0) - 1.0))),
    )
    stochasticity = CheckResult(stoch <= tol, stoch)
    neg = max(0.0, -float(np.min(W)))
    nonnegativity = CheckResult(neg == 0.0, neg)
    mask = np.ones((d, d), dtype=bool)
    np.fill_diagonal(mask, False)
    for i, j in graph.edges:
        mask[i, j] = False
        mask[j, i] = False
    off_pattern = float(np.max(np.abs(W[mask]))) if mask.any() else 0.0
    pattern = CheckResult(off_pattern == 0.0, off_pattern)
    gap = spectral_gap(W) if symmetry.passed else None
    return Assumption2Report(
        symmetry, stochasticity, nonnegativity, pattern, spectral_gap=gap
    )


def mix_stack(W, blocks):
    """
    mix_stack(W, blocks: list of d matrices) -> list of d matrices

    Applies ``W kron I_n`` to the stacked blocks without forming the
    Kronecker product: ``out_i = sum_j W[i, j] * blocks[j]``. Each sum runs
    in ascending ``j`` and skips zero weights, so the result does not
    depend on how the outputs are scheduled.
    """
    W = _as_square(np.asarray(W))
    blocks = [np.asarray(B, dtype=np.float64) for B in blocks]
    d = W.shape[0]
    if len(blocks) != d:
        raise ShapeError(f"Expected {d} blocks, got {len(blocks)}")
    shape = blocks[0].shape
    for j, B in enumerate(blocks):
        if B.shape != shape:
            raise ShapeError(
                f"Block {j} has shape {B.shape}, expected {shape}"
            )
    out = []
    for i in range(d):
        acc = None
        for j in range(d):
            w = W[i, j]
            if w == 0.0:
                continue
            if acc is None:
                acc = w * blocks[j]
            else:
                acc += w * blocks[j]
        out.append(np.zeros(shape) if acc is None else acc)
    return out


def stack_blocks(blocks):
    """Returns the ``dn x p`` matrix ``[X_1; ...; X_d]``."""
    return np.vstack([np.asarray(B, dtype=np.float64) for B in blocks])


def unstack_blocks(M, d):
    """Splits a ``dn x p`` matrix into `d` blocks of ``n`` rows."""
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] % d:
        raise ShapeError(f"Can not split shape {M.shape} into {d} blocks")
    return [np.ascontiguousarray(B) for B in np.split(M, d, axis=0)]
