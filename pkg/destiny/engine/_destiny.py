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

"""The synchronous round state machine of the decentralized solver.

One round lets every agent send ``(X_j - eta_j D_j, D_j)`` to its
neighbors, mixes both blocks with the weights ``W`` and updates the
gradient trackers with the change of the local directions.
"""

import logging
from typing import NamedTuple

import numpy as np

from destiny._errors import DivergenceError, ShapeError
from destiny._timer import RoundTimer
from destiny.enum_types import run_status, stepsize_type
from destiny.network import mix_stack
from destiny.penalty import (
    check_penalty,
    domain_tol,
    h_value,
    local_direction,
    validate_stiefel_point,
)
from destiny.problems import PooledObjective

from ._metrics import (
    consensus_error,
    feasibility_violation,
    mean_blocks,
    merit_value,
    riemannian_gradient_norm,
)
from ._state import AgentState, RunConfig, StepsizeRule, Trace, TraceRecord

_logger = logging.getLogger(__name__)

# squared norm of the tracker change below which BB falls back to eta_max
bb_stagnation_tol = 1e-30

_log_every = 100


def _check_objectives(objectives, shape=None):
    objectives = list(objectives)
    if not objectives:
        raise ValueError("At least one local objective is required")
    dims = {tuple(obj.dims) for obj in objectives}
    if len(dims) != 1:
        raise ShapeError(f"Local objectives disagree on the shape: {dims}")
    if shape is not None and shape not in dims:
        raise ShapeError(
            f"Objectives act on shape {dims.pop()}, the iterate has {shape}"
        )
    return objectives


def _as_mixing(W, d):
    W = np.asarray(W, dtype=np.float64)
    if W.shape != (d, d):
        raise ShapeError(
            f"Mixing matrix of shape {W.shape} does not fit {d} agents"
        )
    return W


def initialize(d, X_initial, objectives, beta):
    """
    initialize(d, X_initial, objectives, beta) -> list of AgentState

    Every agent starts at `X_initial` with tracker ``D_i = H_i(X_initial)``
    evaluated on its own objective, and without stepsize memory.

    Raises:
        DomainError: if `X_initial` is farther than 1e-6 from the Stiefel
            manifold.
        ShapeError: if the objectives do not act on the shape of
            `X_initial` or their number differs from `d`.
    """
    X0 = validate_stiefel_point(X_initial, tol=domain_tol, name="X_initial")
    objectives = _check_objectives(objectives, shape=X0.shape)
    if len(objectives) != d:
        raise ShapeError(f"Got {len(objectives)} objectives for {d} agents")
    beta = check_penalty(beta)
    states = []
    for obj in objectives:
        X = X0.copy()
        H = local_direction(obj, X, beta)
        states.append(AgentState(X=X, D=H.copy(), H_prev=H))
    return states


def bb_stepsize(S, J, eta_min, eta_max):
    """
    bb_stepsize(S, J, eta_min, eta_max) -> float

    Barzilai-Borwein stepsize ``|<S, J> / <J, J>|`` clamped to
    ``[eta_min, eta_max]``, where ``S`` is the change of the iterate and
    ``J`` the change of the tracker over the last round. Returns
    `eta_max` when ``||J||_F^2 < 1e-30``.
    """
    S = np.asarray(S, dtype=np.float64)
    J = np.asarray(J, dtype=np.float64)
    if S.shape != J.shape:
        raise ShapeError(f"Shape mismatch {S.shape} and {J.shape}")
    jj = float(np.sum(J * J))
    if jj < bb_stagnation_tol:
        return float(eta_max)
    eta = abs(float(np.sum(S * J)) / jj)
    return float(min(max(eta, eta_min), eta_max))


def agent_stepsize(state, rule, beta=1.0):
    """
    Returns the stepsize agent `state` applies in the coming round under
    penalty `beta`. Barzilai-Borwein steps are clamped to
    ``[rule.eta_min, rule.ceiling(beta)]``.
    """
    if rule.variant is stepsize_type.fixed:
        return rule.eta
    if not state.has_memory:
        return rule.eta0
    return bb_stepsize(
        state.X - state.X_prev,
        state.D - state.D_prev,
        rule.eta_min,
        rule.ceiling(beta),
    )


def _check_finite(blocks, round_index, what):
    for i, B in enumerate(blocks):
        if not np.all(np.isfinite(B)):
            raise DivergenceError(
                round_index,
                f"non-finite {what} of agent {i} in round {round_index}",
            )


def destiny_round(states, W, rule, objectives, beta, round_index=0):
    """
    destiny_round(states, W, rule, objectives, beta, round_index=0)
        -> list of AgentState

    Performs one communication round:

    1. agent ``j`` picks its stepsize ``eta_j`` and sends
       ``X_j - eta_j D_j`` together with ``D_j``;
    2. ``X_i <- sum_j W[i, j] (X_j - eta_j D_j)``;
    3. ``H_i`` is evaluated at the new iterate;
    4. ``D_i <- sum_j W[i, j] D_j - H_i(X_i^old) + H_i(X_i^new)``.

    The input states are not modified.

    Raises:
        DivergenceError: if an update produces non-finite entries.
    """
    d = len(states)
    W = _as_mixing(W, d)
    if not isinstance(rule, StepsizeRule):
        raise TypeError(f"Expected StepsizeRule, got {type(rule)}")
    if len(objectives) != d:
        raise ShapeError(f"Got {len(objectives)} objectives for {d} agents")
    etas = [agent_stepsize(s, rule, beta) for s in states]
    messages = [s.X - eta * s.D for s, eta in zip(states, etas)]
    X_new = mix_stack(W, messages)
    _check_finite(X_new, round_index, "iterate")
    H_new = [
        local_direction(obj, X, beta) for obj, X in zip(objectives, X_new)
    ]
    _check_finite(H_new, round_index, "local direction")
    D_mixed = mix_stack(W, [s.D for s in states])
    D_new = [
        (Dm - s.H_prev) + H for Dm, s, H in zip(D_mixed, states, H_new)
    ]
    _check_finite(D_new, round_index, "tracker")
    return [
        AgentState(
            X=X,
            D=D,
            H_prev=H,
            X_prev=s.X,
            D_prev=s.D,
            eta=eta,
        )
        for X, D, H, s, eta in zip(X_new, D_new, H_new, states, etas)
    ]


class RunResult(NamedTuple):
    """Final agent states, the per-round trace and the termination status."""

    states: list
    trace: Trace
    status: run_status


def _is_converged(record, config):
    return (
        record.substationarity <= config.tol_substationarity
        and record.consensus <= config.tol_consensus
        and record.feasibility <= config.tol_feasibility
    )


def run(config, W, objectives, X_initial):
    """
    run(config: RunConfig, W, objectives, X_initial) -> RunResult

    Iterates :func:`destiny_round` from `X_initial` until the relative
    substationarity, the consensus error and the feasibility violation
    are all within the tolerances of `config`, or until
    ``config.max_rounds`` rounds were performed. Every completed round is
    recorded in the trace.

    A round that produces non-finite values ends the run with status
    ``run_status.diverged``; the states of the last finite round are
    returned and ``trace.error`` holds the :class:`DivergenceError`.

    :Example:
        .. code-block:: python

            import destiny
            import destiny.engine as de

            cfg = de.RunConfig(rule=de.StepsizeRule.fixed(1e-2))
            states, trace, status = de.run(cfg, W, objectives, X0)
            print(status, trace.last.substationarity)
    """
    if not isinstance(config, RunConfig):
        raise TypeError(f"Expected RunConfig, got {type(config)}")
    objectives = _check_objectives(objectives)
    d = len(objectives)
    W = _as_mixing(W, d)
    pooled = PooledObjective(objectives)
    beta = config.beta
    states = initialize(d, X_initial, objectives, beta)

    X_bar_0 = mean_blocks(s.X for s in states)
    reference = riemannian_gradient_norm(X_bar_0, pooled)
    absolute_mode = reference == 0.0
    if absolute_mode:
        _logger.warning(
            "Initial Riemannian gradient vanishes; "
            "reporting absolute substationarity"
        )
    trace = Trace(reference_norm=reference, absolute_mode=absolute_mode)
    _logger.info(
        "Starting run: d=%d, shape=%s, beta=%g, rule=%s, max_rounds=%d",
        d,
        X_bar_0.shape,
        beta,
        config.rule.variant.name,
        config.max_rounds,
    )

    timer = RoundTimer()
    status = run_status.max_rounds
    for k in range(config.max_rounds):
        try:
            with timer:
                new_states = destiny_round(
                    states, W, config.rule, objectives, beta, round_index=k
                )
        except DivergenceError as err:
            err.trace = trace
            trace.error = err
            _logger.warning("Run diverged: %s", err)
            status = run_status.diverged
            break
        states = new_states
        X_bar = mean_blocks(s.X for s in states)
        grad_norm = riemannian_gradient_norm(X_bar, pooled)
        etas = [s.eta for s in states]
        record = TraceRecord(
            round=k,
            substationarity=(
                grad_norm if absolute_mode else grad_norm / reference
            ),
            consensus=consensus_error(states),
            feasibility=feasibility_violation(states),
            h_value=h_value(X_bar, pooled, beta),
            eta_min=float(min(etas)),
            eta_max=float(max(etas)),
            elapsed_s=timer.total if config.record_wall_time else 0.0,
            merit=(
                None
                if config.rho is None
                else merit_value(states, config.rho, pooled, beta)
            ),
        )
        trace.append(record)
        if k % _log_every == 0:
            _logger.debug(
                "round %d: substationarity=%.3e consensus=%.3e "
                "feasibility=%.3e",
                k,
                record.substationarity,
                record.consensus,
                record.feasibility,
            )
        if _is_converged(record, config):
            status = run_status.converged
            break

    _logger.info(
        "Run finished with status %s after %d rounds", status.name, len(trace)
    )
    return RunResult(states, trace, status)
