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

""" Defines unit test cases for the benchmark problems, the synthetic
data generators and CSV ingestion.
"""

import numpy as np
import numpy.testing as npt
import pytest
from helper import random_stiefel

import destiny.problems as dprob
from destiny import DataFormatError, DomainError, ShapeError, problem_type
from destiny.engine import pca_oracle, principal_angles
from destiny.penalty import orthonormalize


def _assert_fd(obj, X):
    g = obj.euclidean_grad(X)
    fd = dprob.fd_gradient(obj, X)
    assert np.linalg.norm(fd - g) <= 1e-5 * max(np.linalg.norm(g), 1e-12)


def test_pca_examples():
    obj = dprob.PcaObjective(np.eye(2), 1)
    e1 = np.array([[1.0], [0.0]])
    assert obj.value(e1) == -0.5
    npt.assert_array_equal(obj.euclidean_grad(e1), -e1)
    Z = np.zeros((2, 1))
    assert obj.value(Z) == 0.0
    npt.assert_array_equal(obj.euclidean_grad(Z), Z)


def test_pca_gradient_finite_differences():
    rng = np.random.default_rng(0)
    obj = dprob.PcaObjective(rng.standard_normal((8, 3)), 2)
    _assert_fd(obj, rng.standard_normal((8, 2)))


def test_fd_gradient_step_uses_largest_entry():
    X = np.array([[3.0, -4.0], [1.0, 2.0]])
    seen = []

    def f(Y):
        seen.append(Y[0, 0])
        return 0.5 * float(np.sum(Y * Y))

    npt.assert_allclose(dprob.fd_gradient(f, X), X, atol=1e-8)
    # 1 + max|X_ij| = 5, the maximum absolute row sum would give 8
    assert seen[0] - 3.0 == pytest.approx(5e-6, rel=1e-6)


def test_olsr_examples():
    rng = np.random.default_rng(1)
    C = rng.standard_normal((4, 6))
    X = rng.standard_normal((4, 2))
    exact = dprob.OlsrObjective(C, (C.T @ X).T)
    assert exact.value(X) == pytest.approx(0.0, abs=1e-24)
    npt.assert_allclose(exact.euclidean_grad(X), 0.0, atol=1e-12)
    no_labels = dprob.OlsrObjective(C, np.zeros((2, 6)))
    assert no_labels.value(X) == pytest.approx(
        np.linalg.norm(C.T @ X) ** 2, rel=1e-12
    )


def test_olsr_gradient_finite_differences():
    C, D = dprob.generate_synthetic_olsr(7, 12, 3, seed=2)
    obj = dprob.OlsrObjective(C, D)
    _assert_fd(obj, np.random.default_rng(3).standard_normal((7, 3)))


def test_olsr_shape_checks():
    with pytest.raises(ShapeError):
        dprob.OlsrObjective(np.ones((3, 4)), np.ones((2, 5)))
    with pytest.raises(ShapeError):
        dprob.OlsrObjective(np.ones((2, 4)), np.ones((3, 4)))


def test_sdl_examples():
    obj = dprob.SdlObjective(np.eye(2), 1)
    e1 = np.array([[1.0], [0.0]])
    assert obj.value(e1) == -0.25
    npt.assert_array_equal(obj.euclidean_grad(e1), -e1)
    Z = np.zeros((2, 1))
    assert obj.value(Z) == 0.0
    npt.assert_array_equal(obj.euclidean_grad(Z), Z)


def test_sdl_gradient_finite_differences():
    rng = np.random.default_rng(4)
    obj = dprob.SdlObjective(rng.standard_normal((6, 4)), 1)
    _assert_fd(obj, rng.standard_normal((6, 1)))


@pytest.mark.parametrize(
    "obj",
    [
        dprob.PcaObjective(np.ones((3, 2)), 2),
        dprob.SdlObjective(np.ones((3, 2)), 1),
    ],
)
def test_objective_shape_mismatch(obj):
    with pytest.raises(ShapeError):
        obj.value(np.ones((4, 2)))
    with pytest.raises(ShapeError):
        obj.euclidean_grad(np.ones((3, 3)))


def test_objective_column_count():
    with pytest.raises(ShapeError):
        dprob.PcaObjective(np.ones((3, 5)), 4)


def test_synthetic_pca_singular_values():
    spec = dprob.SyntheticSpec(n=10, m=40, p=3, xi=0.8, seed=5)
    A = dprob.generate_synthetic_pca(spec)
    assert A.shape == (10, 40)
    s = np.linalg.svd(A, compute_uv=False)
    npt.assert_allclose(s, spec.singular_values(), rtol=0, atol=1e-10)
    npt.assert_allclose(s, 0.8 ** (np.arange(1, 11) / 2), atol=1e-10)


def test_synthetic_pca_deterministic():
    spec = dprob.SyntheticSpec(n=6, m=9, p=2, xi=0.9, seed=11)
    npt.assert_array_equal(
        dprob.generate_synthetic_pca(spec), dprob.generate_synthetic_pca(spec)
    )
    other = dprob.SyntheticSpec(n=6, m=9, p=2, xi=0.9, seed=12)
    assert not np.array_equal(
        dprob.generate_synthetic_pca(spec), dprob.generate_synthetic_pca(other)
    )


def test_synthetic_pca_oracle_recovers_left_factor():
    spec = dprob.SyntheticSpec(n=8, m=20, p=3, xi=0.5, seed=3)
    A = dprob.generate_synthetic_pca(spec)
    rng = np.random.default_rng(spec.seed)
    U = orthonormalize(rng.standard_normal((8, 8)))
    X = pca_oracle(A, 3)
    assert np.max(principal_angles(X, U[:, :3])) <= 1e-10


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=5, m=4, p=2, xi=0.9),
        dict(n=5, m=10, p=6, xi=0.9),
        dict(n=5, m=10, p=2, xi=1.0),
        dict(n=5, m=10, p=2, xi=0.0),
        dict(n=5, m=10, p=2, xi=0.5, seed=-1),
        dict(n=5, m=10, p=2, xi=0.5, seed=2**64),
    ],
)
def test_synthetic_spec_invalid(kwargs):
    with pytest.raises(DomainError):
        dprob.SyntheticSpec(**kwargs)


def test_synthetic_olsr_indicators():
    C, D = dprob.generate_synthetic_olsr(6, 30, 3, seed=7)
    assert C.shape == (6, 30)
    assert D.shape == (3, 30)
    npt.assert_array_equal(D.sum(axis=0), np.ones(30))
    assert set(np.unique(D)) <= {0.0, 1.0}


def test_synthetic_olsr_unit_spectral_norm():
    C, _ = dprob.generate_synthetic_olsr(50, 400, 5, seed=21)
    assert np.linalg.norm(C, 2) == pytest.approx(1.0, rel=1e-12)
    blocks = dprob.partition_columns(C, 8)
    # local curvature 2 C_i C_i^T stays below the default ceiling of 1
    assert max(2 * np.linalg.norm(B, 2) ** 2 for B in blocks) < 1.0


def test_synthetic_sdl_deterministic():
    npt.assert_array_equal(
        dprob.generate_synthetic_sdl(4, 9, seed=3),
        dprob.generate_synthetic_sdl(4, 9, seed=3),
    )


def test_partition_columns_examples():
    A = np.arange(20.0).reshape(2, 10)
    blocks = dprob.partition_columns(A, 3)
    assert [B.shape[1] for B in blocks] == [4, 3, 3]
    npt.assert_array_equal(np.hstack(blocks), A)
    blocks = dprob.partition_columns(A, 10)
    assert all(B.shape == (2, 1) for B in blocks)
    blocks = dprob.partition_columns(A, 1)
    npt.assert_array_equal(blocks[0], A)


def test_partition_columns_too_many_agents():
    with pytest.raises(ShapeError):
        dprob.partition_columns(np.ones((2, 3)), 4)


def test_pooled_objective_matches_global_data():
    rng = np.random.default_rng(9)
    A = rng.standard_normal((6, 24))
    objectives = dprob.make_local_objectives("pca", A, 4, 2)
    pooled = dprob.PooledObjective(objectives)
    X = random_stiefel(6, 2, seed=1)
    # mean of the local objectives is the global objective over A / sqrt(d)
    whole = dprob.PcaObjective(A / 2.0, 2)
    assert pooled.value(X) == pytest.approx(whole.value(X), rel=1e-12)
    npt.assert_allclose(
        pooled.euclidean_grad(X), whole.euclidean_grad(X), atol=1e-12
    )
    assert len(pooled) == 4


def test_pooled_objective_shape_mismatch():
    with pytest.raises(ShapeError):
        dprob.PooledObjective(
            [
                dprob.PcaObjective(np.ones((3, 2)), 1),
                dprob.PcaObjective(np.ones((3, 2)), 2),
            ]
        )
    with pytest.raises(ValueError):
        dprob.PooledObjective([])


def test_make_local_objectives_olsr():
    C, D = dprob.generate_synthetic_olsr(5, 12, 2, seed=1)
    objectives = dprob.make_local_objectives(
        problem_type.olsr, C, 3, 2, labels=D
    )
    assert len(objectives) == 3
    assert all(obj.dims == (5, 2) for obj in objectives)
    with pytest.raises(ValueError):
        dprob.make_local_objectives("olsr", C, 3, 2)
    with pytest.raises(ShapeError):
        dprob.make_local_objectives("olsr", C, 3, 3, labels=D)
    with pytest.raises(ValueError):
        dprob.make_local_objectives("lasso", C, 3, 2)


def test_matrix_csv_round_trip(tmp_path):
    M = np.random.default_rng(2).standard_normal((3, 4))
    fn = tmp_path / "m.csv"
    dprob.save_matrix_csv(M, fn)
    npt.assert_array_equal(dprob.load_matrix_csv(fn), M)


@pytest.mark.parametrize(
    "text, row, column",
    [
        ("1,2\n3\n", 2, None),
        ("1,2\n3,x\n", 2, 2),
        ("1,nan\n", 1, 2),
        ("", None, None),
    ],
)
def test_matrix_csv_errors(tmp_path, text, row, column):
    fn = tmp_path / "bad.csv"
    fn.write_text(text)
    with pytest.raises(DataFormatError) as excinfo:
        dprob.load_matrix_csv(fn)
    assert excinfo.value.row == row
    assert excinfo.value.column == column
    assert str(fn) in str(excinfo.value)


def test_matrix_csv_invalid_utf8(tmp_path):
    fn = tmp_path / "bad.csv"
    fn.write_bytes(b"1,2\n3,\xff\n")
    with pytest.raises(DataFormatError) as excinfo:
        dprob.load_matrix_csv(fn)
    assert excinfo.value.row == 2
    assert excinfo.value.column == 2
    assert str(fn) in str(excinfo.value)
