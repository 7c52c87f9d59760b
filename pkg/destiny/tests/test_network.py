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

""" Defines unit test cases for communication graphs and mixing matrices.
"""

import numpy as np
import numpy.testing as npt
import pytest

import destiny.network as dnet
from destiny import ConnectivityError, DataFormatError, DomainError, ShapeError


def test_graph_normalizes_edges():
    g = dnet.Graph(4, [(2, 1), (0, 3), (1, 0)])
    assert g.edges == ((0, 1), (0, 3), (1, 2))
    assert len(g) == 3
    assert g.has_edge(3, 0)
    assert not g.has_edge(2, 3)
    npt.assert_array_equal(g.degrees(), [2, 2, 1, 1])
    assert g == dnet.Graph(4, [(0, 1), (1, 2), (3, 0)])
    assert hash(g) == hash(dnet.Graph(4, g.edges))


@pytest.mark.parametrize(
    "edges", [[(1, 1)], [(0, 4)], [(0, 1), (1, 0)], [(-1, 2)]]
)
def test_graph_invalid_edges(edges):
    with pytest.raises(ValueError):
        dnet.Graph(4, edges)


def test_graph_connectivity():
    assert dnet.Graph(1).is_connected
    assert not dnet.Graph(3, [(0, 1)]).is_connected
    assert dnet.path_graph(5).is_connected
    adj = dnet.ring_graph(5).adjacency()
    npt.assert_array_equal(adj, adj.T)
    assert adj.sum() == 10


def test_named_graphs():
    assert len(dnet.complete_graph(6)) == 15
    assert len(dnet.ring_graph(6)) == 6
    assert dnet.ring_graph(2) == dnet.path_graph(2)
    assert len(dnet.path_graph(1)) == 0


def test_erdos_renyi_deterministic_and_connected():
    g1 = dnet.erdos_renyi(12, 0.4, seed=17)
    g2 = dnet.erdos_renyi(12, 0.4, seed=17)
    assert g1 == g2
    assert g1.is_connected
    assert dnet.erdos_renyi(7, 1.0) == dnet.complete_graph(7)


@pytest.mark.parametrize("prob", [0.0, -0.1, 1.5])
def test_erdos_renyi_invalid_probability(prob):
    with pytest.raises(DomainError):
        dnet.erdos_renyi(5, prob)


def test_erdos_renyi_gives_up():
    with pytest.raises(ConnectivityError):
        dnet.erdos_renyi(30, 1e-9, seed=0)


def test_metropolis_ring_gap():
    W = dnet.metropolis_weights(dnet.ring_graph(4))
    expected = (dnet.ring_graph(4).adjacency() + np.eye(4)) / 3
    npt.assert_allclose(W.W, expected, rtol=0, atol=1e-15)
    assert abs(W.spectral_gap - 1 / 3) <= 1e-12


def test_metropolis_complete_gap():
    W = dnet.metropolis_weights(dnet.complete_graph(8))
    assert W.spectral_gap <= 1e-10


def test_metropolis_single_agent():
    W = dnet.metropolis_weights(dnet.Graph(1))
    npt.assert_array_equal(W.W, [[1.0]])
    assert W.spectral_gap == 0.0


def test_metropolis_random_graphs_pass_audit():
    rng = np.random.default_rng(2022)
    for trial in range(50):
        d = int(rng.integers(2, 17))
        g = dnet.erdos_renyi(d, 0.5, seed=trial)
        W = dnet.metropolis_weights(g)
        report = dnet.verify_assumption2(W, g)
        assert report.passed
        assert report.worst_violation <= 1e-12
        assert report.spectral_gap < 1.0


def test_metropolis_disconnected():
    with pytest.raises(ConnectivityError):
        dnet.metropolis_weights(dnet.Graph(3, [(0, 1)]))


def test_mixing_matrix_is_read_only():
    W = dnet.metropolis_weights(dnet.path_graph(3))
    with pytest.raises(ValueError):
        W.W[0, 0] = 2.0
    npt.assert_array_equal(np.asarray(W), W.W)
    assert W.d == 3
    assert W.graph == dnet.path_graph(3)


def test_audit_detects_violations():
    g = dnet.path_graph(3)
    W = np.array(dnet.metropolis_weights(g).W)

    asym = W.copy()
    asym[0, 1] += 1e-3
    report = dnet.verify_assumption2(asym, g)
    assert not report.symmetry.passed
    assert report.spectral_gap is None
    assert not report.passed

    off_pattern = W.copy()
    off_pattern[0, 2] = off_pattern[2, 0] = 0.1
    off_pattern[0, 0] -= 0.1
    off_pattern[2, 2] -= 0.1
    report = dnet.verify_assumption2(off_pattern, g)
    assert report.symmetry.passed
    assert report.stochasticity.passed
    assert not report.pattern.passed
    assert report.pattern.worst == pytest.approx(0.1)

    negative = np.array([[1.5, -0.5, 0.0], [-0.5, 1.0, 0.5], [0.0, 0.5, 0.5]])
    report = dnet.verify_assumption2(negative, g)
    assert not report.nonnegativity.passed
    assert report.nonnegativity.worst == 0.5

    scaled = 0.9 * W
    report = dnet.verify_assumption2(scaled, g)
    assert not report.stochasticity.passed
    assert len(report.lines()) == 5


def test_audit_shape_mismatch():
    report = dnet.verify_assumption2(np.eye(2), dnet.path_graph(3))
    assert not report.passed
    assert report.worst_violation == np.inf


def test_spectral_gap_requires_symmetry():
    with pytest.raises(DomainError):
        dnet.spectral_gap(np.array([[0.5, 0.5], [0.0, 1.0]]))
    with pytest.raises(ShapeError):
        dnet.spectral_gap(np.ones((2, 3)))


def test_mix_stack_matches_kronecker_form():
    rng = np.random.default_rng(5)
    W = dnet.metropolis_weights(dnet.erdos_renyi(5, 0.6, seed=1)).W
    blocks = list(rng.standard_normal((5, 4, 2)))
    mixed = dnet.mix_stack(W, blocks)
    expected = np.kron(W, np.eye(4)) @ dnet.stack_blocks(blocks)
    npt.assert_allclose(dnet.stack_blocks(mixed), expected, atol=1e-14)
    back = dnet.unstack_blocks(expected, 5)
    assert len(back) == 5
    npt.assert_array_equal(back[2], expected[8:12])


def test_mix_stack_identity_is_exact():
    blocks = list(np.random.default_rng(6).standard_normal((3, 2, 2)))
    out = dnet.mix_stack(np.eye(3), blocks)
    for B, C in zip(blocks, out):
        npt.assert_array_equal(B, C)


def test_mix_stack_shape_errors():
    with pytest.raises(ShapeError):
        dnet.mix_stack(np.eye(2), [np.ones((2, 2))])
    with pytest.raises(ShapeError):
        dnet.mix_stack(np.eye(2), [np.ones((2, 2)), np.ones((3, 2))])
    with pytest.raises(ShapeError):
        dnet.unstack_blocks(np.ones((5, 2)), 2)


def test_edge_list_round_trip(tmp_path):
    g = dnet.erdos_renyi(9, 0.5, seed=4)
    fn = tmp_path / "graph.txt"
    dnet.write_edge_list(g, fn)
    assert dnet.read_edge_list(fn, d=9) == g


def test_edge_list_infers_node_count(tmp_path):
    fn = tmp_path / "graph.txt"
    fn.write_text("0 1\n\n1 3\n")
    g = dnet.read_edge_list(fn)
    assert g.d == 4
    assert not g.is_connected


@pytest.mark.parametrize("text, row", [("0 1\n1\n", 2), ("a b\n", 1)])
def test_edge_list_errors(tmp_path, text, row):
    fn = tmp_path / "graph.txt"
    fn.write_text(text)
    with pytest.raises(DataFormatError) as excinfo:
        dnet.read_edge_list(fn)
    assert excinfo.value.row == row
