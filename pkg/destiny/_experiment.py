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

"""Experiment driver: assembles a problem instance, a network and the
solver from an :class:`ExperimentConfig`, runs it and writes the trace.
"""

import logging
import sys
from typing import NamedTuple

import numpy as np

from destiny._config import ExperimentConfig
from destiny._errors import (
    ConfigError,
    ConnectivityError,
    DataFormatError,
    DegenerateInputError,
    DomainError,
    ShapeError,
)
from destiny.engine import Trace, TraceRecord, run, trace_columns
from destiny.enum_types import data_source_type, problem_type, run_status
from destiny.network import (
    complete_graph,
    erdos_renyi,
    metropolis_weights,
    verify_assumption2,
    write_edge_list,
)
from destiny.penalty import orthonormalize
from destiny.problems import (
    float_format,
    generate_synthetic_olsr,
    generate_synthetic_pca,
    generate_synthetic_sdl,
    load_matrix_csv,
    make_local_objectives,
)

__all__ = [
    "exit_codes",
    "Instance",
    "derive_seeds",
    "build_instance",
    "build_network",
    "run_experiment",
    "verify_experiment",
    "write_trace_csv",
    "read_trace_csv",
]

_logger = logging.getLogger(__name__)

exit_codes = {
    run_status.converged: 0,
    run_status.max_rounds: 2,
    run_status.diverged: 3,
}
error_exit_code = 1

# errors reported as a failed experiment setup rather than a crash
_setup_errors = (
    ConfigError,
    DataFormatError,
    ShapeError,
    DomainError,
    DegenerateInputError,
    ConnectivityError,
    OSError,
)


class Instance(NamedTuple):
    """Local objectives of the agents and the pooled data they split."""

    objectives: list
    data: np.ndarray
    labels: object = None


def derive_seeds(seed):
    """
    derive_seeds(seed) -> (data_seed, graph_seed, init_seed)

    Splits the master seed into independent seeds for the data, the
    communication graph and the initial point.
    """
    state = np.random.SeedSequence(seed).generate_state(3, dtype=np.uint64)
    return tuple(int(s) for s in state)


def build_instance(config, data_seed):
    """
    build_instance(config, data_seed) -> Instance

    Generates or loads the data of `config` and splits it column-wise
    over the agents.
    """
    kind = config.problem
    labels = None
    if config.data is data_source_type.csv:
        data = load_matrix_csv(config.data_path)
        if kind is problem_type.olsr:
            labels = load_matrix_csv(config.labels_path)
    elif kind is problem_type.pca:
        data = generate_synthetic_pca(config.synthetic_spec(data_seed))
    elif kind is problem_type.olsr:
        data, labels = generate_synthetic_olsr(
            config.n, config.m, config.p, seed=data_seed
        )
    else:
        data = generate_synthetic_sdl(config.n, config.m, seed=data_seed)
    objectives = make_local_objectives(
        kind, data, config.d, config.p, labels=labels
    )
    return Instance(objectives, data, labels)


def build_network(config, graph_seed):
    """Samples the communication graph and its Metropolis weights."""
    if config.d == 1:
        graph = complete_graph(1)
    else:
        graph = erdos_renyi(config.d, config.prob, seed=graph_seed)
    W = metropolis_weights(graph)
    if config.graph_output is not None:
        write_edge_list(graph, config.graph_output)
    return graph, W


def initial_point(n, p, init_seed):
    """Orthonormalized standard normal ``n x p`` matrix."""
    rng = np.random.default_rng(init_seed)
    return orthonormalize(rng.standard_normal((n, p)))


def _summary_line(status, trace, gap):
    last = trace.last
    if last is None:
        metrics = "substationarity=nan consensus=nan feasibility=nan"
    else:
        metrics = (
            f"substationarity={last.substationarity:.6e} "
            f"consensus={last.consensus:.6e} "
            f"feasibility={last.feasibility:.6e}"
        )
    return (
        f"status={status.name} rounds={len(trace)} {metrics} "
        f"lambda={gap:.6e}"
    )


def run_experiment(config, stream=None):
    """
    run_experiment(config: ExperimentConfig, stream=None) -> int

    Builds the data, the network with Metropolis weights and a seeded
    initial point, runs the solver, writes the trace CSV and prints a
    one-line summary to `stream` (standard output by default).

    Returns:
        0 if the run converged, 2 if it stopped at ``max_rounds``, 3 if
        it diverged and 1 if the experiment could not be set up.
    """
    if not isinstance(config, ExperimentConfig):
        raise TypeError(f"Expected ExperimentConfig, got {type(config)}")
    stream = sys.stdout if stream is None else stream
    data_seed, graph_seed, init_seed = derive_seeds(config.seed)
    try:
        instance = build_instance(config, data_seed)
        n, p = instance.objectives[0].dims
        _, W = build_network(config, graph_seed)
        _logger.info(
            "Mixing matrix over %d agents has spectral gap %.6e",
            W.d,
            W.spectral_gap,
        )
        X0 = initial_point(n, p, init_seed)
        result = run(config.run_config(), W, instance.objectives, X0)
        write_trace_csv(result.trace, config.output)
    except _setup_errors as e:
        _logger.error("Experiment failed: %s", e)
        print(f"error: {e}", file=sys.stderr)
        return error_exit_code
    line = _summary_line(result.status, result.trace, W.spectral_gap)
    _logger.info(line)
    print(line, file=stream)
    return exit_codes[result.status]


def verify_experiment(config, stream=None):
    """
    verify_experiment(config: ExperimentConfig, stream=None) -> int

    Samples the communication graph of `config`, audits its Metropolis
    weights and prints one line per mixing condition plus the spectral
    gap. Returns 0 if all conditions hold and 1 otherwise.
    """
    if not isinstance(config, ExperimentConfig):
        raise TypeError(f"Expected ExperimentConfig, got {type(config)}")
    stream = sys.stdout if stream is None else stream
    _, graph_seed, _ = derive_seeds(config.seed)
    try:
        graph, W = build_network(config, graph_seed)
    except _setup_errors as e:
        _logger.error("Network construction failed: %s", e)
        print(f"error: {e}", file=sys.stderr)
        return error_exit_code
    report = verify_assumption2(W, graph)
    print(f"graph: d={graph.d} edges={len(graph)}", file=stream)
    for line in report.lines():
        print(line, file=stream)
    return 0 if report.passed else error_exit_code


def _format_row(record):
    cells = [str(record.round)]
    for name in trace_columns[1:]:
        cells.append(float_format.format(getattr(record, name)))
    return ",".join(cells)


def write_trace_csv(trace, path):
    """
    write_trace_csv(trace, path)

    Writes a header line followed by one line per round, with floating
    point values in scientific notation with 17 significant digits.
    """
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(trace_columns) + "\n")
        for record in trace:
            fh.write(_format_row(record) + "\n")


def read_trace_csv(path):
    """
    read_trace_csv(path) -> Trace

    Parses a file written by :func:`write_trace_csv`.

    Raises:
        DataFormatError: on a wrong header or malformed rows.
    """
    trace = Trace()
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != ",".join(trace_columns):
            raise DataFormatError(
                f"unexpected trace header '{header}'", path=path, row=1
            )
        for row_no, line in enumerate(fh, start=2):
            cells = line.rstrip("\n").split(",")
            if len(cells) != len(trace_columns):
                raise DataFormatError(
                    f"expected {len(trace_columns)} cells, got {len(cells)}",
                    path=path,
                    row=row_no,
                )
            try:
                values = [int(cells[0])] + [float(c) for c in cells[1:]]
            except ValueError:
                raise DataFormatError(
                    "malformed number", path=path, row=row_no
                ) from None
            trace.append(TraceRecord(*values))
    return trace
