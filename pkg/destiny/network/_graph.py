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

import logging
import operator

import numpy as np
import scipy.sparse
from scipy.sparse.csgraph import connected_components

from destiny._errors import ConnectivityError, DataFormatError, DomainError
from destiny.problems import check_seed

_logger = logging.getLogger(__name__)

max_resample_attempts = 1000


class Graph:
    """
    Graph(d, edges)

    Undirected communication graph over agents ``0, ..., d-1``.
    `edges` is an iterable of index pairs; each pair is stored once as
    ``(min, max)``. Self-loops and repeated pairs are rejected.

    :Example:
        .. code-block:: python

            import destiny.network as dnet

            g = dnet.Graph(3, [(0, 1), (2, 1)])
            g.edges          # ((0, 1), (1, 2))
            g.degrees()      # array([1, 2, 1])
            g.is_connected   # True
    """

    def __init__(self, d, edges=()):
        d = operator.index(d)
        if d < 1:
            raise DomainError(f"A graph needs at least one node, got d={d}")
        normalized = set()
        for e in edges:
            i, j = (operator.index(v) for v in e)
            if i == j:
                raise ValueError(f"Self-loop at node {i} is not allowed")
            if not (0 <= i < d and 0 <= j < d):
                raise ValueError(f"Edge ({i}, {j}) refers to a node >= {d}")
            pair = (min(i, j), max(i, j))
            if pair in normalized:
                raise ValueError(f"Duplicate edge {pair}")
            normalized.add(pair)
        self._d = d
        self._edges = tuple(sorted(normalized))
        self._edge_set = frozenset(normalized)

    @property
    def d(self):
        """Number of agents."""
        return self._d

    @property
    def edges(self):
        """Sorted tuple of ``(i, j)`` pairs with ``i < j``."""
        return self._edges

    def __len__(self):
        return len(self._edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._d == other._d and self._edges == other._edges

    def __hash__(self):
        return hash((self._d, self._edges))

    def __repr__(self):
        return f"Graph(d={self._d}, edges={len(self._edges)})"

    def has_edge(self, i, j):
        return (min(i, j), max(i, j)) in self._edge_set

    def degrees(self):
        """Returns the node degrees as an integer array."""
        deg = np.zeros(self._d, dtype=np.int64)
        for i, j in self._edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def adjacency(self):
        """Returns the dense 0/1 adjacency matrix."""
        adj = np.zeros((self._d, self._d))
        for i, j in self._edges:
            adj[i, j] = 1.0
            adj[j, i] = 1.0
        return adj

    @property
    def is_connected(self):
        if self._d == 1:
            return True
        n_comp, _ = connected_components(
            scipy.sparse.csr_matrix(self.adjacency()), directed=False
        )
        return n_comp == 1


def complete_graph(d):
    """Returns the complete graph on `d` agents."""
    return Graph(d, ((i, j) for i in range(d) for j in range(i + 1, d)))


def ring_graph(d):
    """Returns the cycle ``0 - 1 - ... - (d-1) - 0``; a path for d = 2."""
    if d < 3:
        return path_graph(d)
    return Graph(d, ((i, (i + 1) % d) for i in range(d)))


def path_graph(d):
    """Returns the path ``0 - 1 - ... - (d-1)``."""
    return Graph(d, ((i, i + 1) for i in range(d - 1)))


def _sample_edges(d, prob, seed):
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(d, k=1)
    keep = rng.random(rows.shape[0]) < prob
    return zip(rows[keep].tolist(), cols[keep].tolist())


def erdos_renyi(d, prob, seed=0):
    """
    erdos_renyi(d, prob, seed=0) -> Graph

    Samples a connected Erdos-Renyi graph: each pair of agents is linked
    independently with probability `prob`. A disconnected sample is
    discarded and drawn again with the seed incremented by one.

    Raises:
        DomainError: if `prob` is not in (0, 1] or `d` < 1.
        ConnectivityError: if no connected sample was found within
            1000 attempts.
    """
    d = operator.index(d)
    seed = check_seed(seed)
    if d < 1:
        raise DomainError(f"A graph needs at least one node, got d={d}")
    if not 0.0 < prob <= 1.0:
        raise DomainError(f"Edge probability must lie in (0, 1], got {prob}")
    for attempt in range(max_resample_attempts):
        s = (seed + attempt) % 2**64
        g = Graph(d, _sample_edges(d, prob, s))
        if g.is_connected:
            if attempt:
                _logger.debug(
                    "Connected Erdos-Renyi sample found after %d attempts",
                    attempt + 1,
                )
            return g
        _logger.debug("Erdos-Renyi sample with seed %d is disconnected", s)
    raise ConnectivityError(
        f"No connected graph on {d} nodes in {max_resample_attempts} "
        f"attempts; edge probability {prob} is too small"
    )


def write_edge_list(graph, path):
    """
    write_edge_list(graph, path)

    Writes one ``"i j"`` line per edge, 0-based.
    """
    with open(path, "w", encoding="utf-8") as fh:
        for i, j in graph.edges:
            fh.write(f"{i} {j}\n")


def read_edge_list(path, d=None):
    """
    read_edge_list(path, d=None) -> Graph

    Reads a file written by :func:`write_edge_list`. Blank lines are
    ignored. When `d` is None the node count is one plus the largest
    index found.
    """
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for row_no, line in enumerate(fh, start=1):
            fields = line.split()
            if not fields:
                continue
            if len(fields) != 2:
                raise DataFormatError(
                    f"expected two node indices, got {len(fields)} fields",
                    path=path,
                    row=row_no,
                )
            try:
                i, j = int(fields[0]), int(fields[1])
            except ValueError:
                raise DataFormatError(
                    "node indices must be integers", path=path, row=row_no
                ) from None
            if i < 0 or j < 0:
                raise DataFormatError(
                    "node indices must be nonnegative", path=path, row=row_no
                )
            pairs.append((i, j))
    if d is None:
        d = 1 + max((max(e) for e in pairs), default=0)
    return Graph(d, pairs)
