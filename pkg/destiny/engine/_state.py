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

"""Data types of the solver: agent state, stepsize rule, run settings and
the per-round trace.
"""

import math
import operator
from dataclasses import dataclass, fields
from typing import Any, Optional

import numpy as np

from destiny._errors import DomainError
from destiny.enum_types import stepsize_type
from destiny.penalty import check_penalty
from destiny.problems import check_seed


@dataclass(frozen=True)
class AgentState:
    """
    AgentState(X, D, H_prev, X_prev=None, D_prev=None, eta=None)

    State of one agent: local iterate ``X``, tracker ``D``, the local
    direction ``H_prev = H_i(X)`` cached for the next tracker update, the
    iterate and tracker of the previous round (Barzilai-Borwein memory)
    and the stepsize the agent applied in the last round.
    """

    X: np.ndarray
    D: np.ndarray
    H_prev: np.ndarray
    X_prev: Optional[np.ndarray] = None
    D_prev: Optional[np.ndarray] = None
    eta: Optional[float] = None

    @property
    def has_memory(self):
        return self.X_prev is not None and self.D_prev is not None


@dataclass(frozen=True)
class StepsizeRule:
    """
    StepsizeRule(variant, eta=None, eta0=1e-3, eta_min=1e-10, eta_max=1.0)

    Either a common fixed stepsize ``eta`` or per-agent Barzilai-Borwein
    stepsizes clamped to ``[eta_min, ceiling(beta)]``, starting from
    ``eta0`` while no memory exists. Build instances with :meth:`fixed` or
    :meth:`bb`.
    """

    variant: stepsize_type
    eta: Optional[float] = None
    eta0: float = 1e-3
    eta_min: float = 1e-10
    eta_max: float = 1.0

    def __post_init__(self):
        if not isinstance(self.variant, stepsize_type):
            raise TypeError(
                f"Expected a stepsize_type variant, got {type(self.variant)}"
            )
        if self.variant is stepsize_type.fixed:
            if self.eta is None or not self.eta > 0 or math.isinf(self.eta):
                raise DomainError(
                    f"Fixed stepsize must be a positive number, got {self.eta}"
                )
        else:
            if not 0 < self.eta_min <= self.eta0 <= self.eta_max:
                raise DomainError(
                    "Barzilai-Borwein bounds must satisfy "
                    "0 < eta_min <= eta0 <= eta_max, got "
                    f"{self.eta_min}, {self.eta0}, {self.eta_max}"
                )

    @classmethod
    def fixed(cls, eta):
        return cls(stepsize_type.fixed, eta=float(eta))

    @classmethod
    def bb(cls, eta0=1e-3, eta_min=1e-10, eta_max=1.0):
        return cls(
            stepsize_type.bb,
            eta0=float(eta0),
            eta_min=float(eta_min),
            eta_max=float(eta_max),
        )

    def ceiling(self, beta):
        """
        Upper clamp of the Barzilai-Borwein stepsize under penalty `beta`:
        ``eta_max * max(1, beta)``.

        The penalty term has curvature ``2 beta`` normal to the manifold.
        For large `beta` the stepsizes alternate between short steps of
        about ``1 / (2 beta)`` that restore feasibility and long steps along
        the manifold, and only the long steps hit this clamp.
        """
        return self.eta_max * max(1.0, float(beta))


@dataclass(frozen=True)
class RunConfig:
    """
    Settings of one solver run.

    The run stops once the relative substationarity, the consensus error
    and the feasibility violation are all below their tolerances, or
    after ``max_rounds`` rounds. ``rho``, when given, enables recording of
    the merit function. With ``record_wall_time=False`` elapsed times are
    recorded as zero and traces are reproducible byte for byte.
    """

    beta: float = 1.0
    rule: StepsizeRule = StepsizeRule.bb()
    max_rounds: int = 3000
    tol_substationarity: float = 1e-5
    tol_consensus: float = 1e-6
    tol_feasibility: float = 1e-6
    seed: int = 0
    rho: Optional[float] = None
    record_wall_time: bool = True

    def __post_init__(self):
        check_penalty(self.beta, strict=True)
        if not isinstance(self.rule, StepsizeRule):
            raise TypeError(f"Expected StepsizeRule, got {type(self.rule)}")
        if operator.index(self.max_rounds) < 0:
            raise DomainError("max_rounds must be nonnegative")
        for name in (
            "tol_substationarity",
            "tol_consensus",
            "tol_feasibility",
        ):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")
        check_seed(self.seed)
        if self.rho is not None and not self.rho > 0:
            raise DomainError(f"rho must be positive, got {self.rho}")


@dataclass(frozen=True)
class TraceRecord:
    """Metrics of one completed round, measured at the new iterates."""

    round: int
    substationarity: float
    consensus: float
    feasibility: float
    h_value: float
    eta_min: float
    eta_max: float
    elapsed_s: float
    merit: Optional[float] = None


trace_columns = tuple(f.name for f in fields(TraceRecord) if f.name != "merit")


class Trace:
    """
    Trace(reference_norm=1.0, absolute_mode=False)

    Ordered per-round records of a run. ``reference_norm`` is the
    Riemannian gradient norm at the initial average the substationarity
    is relative to; ``absolute_mode`` is set when that norm is zero and
    the absolute norm is recorded instead. ``error`` holds the exception
    that ended a diverged run.
    """

    def __init__(self, reference_norm=1.0, absolute_mode=False):
        self.records = []
        self.reference_norm = float(reference_norm)
        self.absolute_mode = bool(absolute_mode)
        self.error: Any = None

    def append(self, record):
        if not isinstance(record, TraceRecord):
            raise TypeError(f"Expected TraceRecord, got {type(record)}")
        if self.records and record.round <= self.records[-1].round:
            raise ValueError("Trace records must have increasing rounds")
        self.records.append(record)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, idx):
        return self.records[idx]

    @property
    def last(self):
        return self.records[-1] if self.records else None

    def column(self, name):
        """Returns the values of one field over all rounds as an array."""
        if name not in trace_columns and name != "merit":
            raise KeyError(f"Unknown trace column '{name}'")
        values = [getattr(r, name) for r in self.records]
        return np.array(
            [np.nan if v is None else v for v in values], dtype=np.float64
        )

    def rounds_to(self, threshold):
        """
        Returns the number of communication rounds needed to bring the
        substationarity to `threshold` or below, or None if never.
        """
        for r in self.records:
            if r.substationarity <= threshold:
                return r.round + 1
        return None
