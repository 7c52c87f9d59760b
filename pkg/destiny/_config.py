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

"""Experiment configuration files.

A configuration is a text file with one ``key = value`` assignment per
line. Everything after ``#`` is a comment and blank lines are ignored.
Recognized keys and their defaults:

==================== ============================== =====================
key                  value                          default
==================== ============================== =====================
problem              pca, olsr or sdl               required
data                 synthetic or csv               synthetic
n, m                 positive integers              required if synthetic
p                    positive integer               required
xi                   float in (0, 1)                0.9
data_path            path of a CSV matrix           required if csv
labels_path          path of a CSV matrix           required if csv+olsr
d                    number of agents               required
prob                 float in (0, 1]                0.5
beta                 float > 0                      1.0
stepsize             bb or fixed                    bb
eta                  float > 0                      1e-3
eta0, eta_min,       floats with                    1e-3, 1e-10, 1.0
eta_max              0 < eta_min <= eta0 <= eta_max
max_rounds           integer >= 0                   3000
tol_substationarity  float > 0                      1e-5
tol_consensus        float > 0                      1e-6
tol_feasibility      float > 0                      1e-6
rho                  float > 0 or none              none
seed                 64-bit unsigned integer        0
record_wall_time     true or false                  true
output               path of the trace CSV          trace.csv
graph_output         path of an edge list or none   none
==================== ============================== =====================

The Barzilai-Borwein stepsizes are clamped to
``[eta_min, eta_max * max(1, beta)]``.

Relative paths are resolved against the directory of the config file.
"""

import dataclasses
import math
import os
import os.path
from dataclasses import dataclass
from typing import Optional

from destiny._errors import ConfigError
from destiny.engine import RunConfig, StepsizeRule
from destiny.enum_types import data_source_type, problem_type, stepsize_type
from destiny.problems import SyntheticSpec

__all__ = ["ExperimentConfig", "parse_config", "serialize_config"]

_max_seed = 2**64
_true_words = ("true", "yes", "on", "1")
_false_words = ("false", "no", "off", "0")


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Validated settings of one experiment: problem instance, network,
    solver parameters and output files. Paths are absolute.

    Build instances with :func:`parse_config`; keyword construction
    applies the same validation.
    """

    problem: problem_type
    p: int
    d: int
    data: data_source_type = data_source_type.synthetic
    n: Optional[int] = None
    m: Optional[int] = None
    xi: float = 0.9
    data_path: Optional[str] = None
    labels_path: Optional[str] = None
    prob: float = 0.5
    beta: float = 1.0
    stepsize: stepsize_type = stepsize_type.bb
    eta: float = 1e-3
    eta0: float = 1e-3
    eta_min: float = 1e-10
    eta_max: float = 1.0
    max_rounds: int = 3000
    tol_substationarity: float = 1e-5
    tol_consensus: float = 1e-6
    tol_feasibility: float = 1e-6
    rho: Optional[float] = None
    seed: int = 0
    record_wall_time: bool = True
    output: str = "trace.csv"
    graph_output: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.problem, problem_type):
            raise ConfigError("expected a problem_type", key="problem")
        if not isinstance(self.data, data_source_type):
            raise ConfigError("expected a data_source_type", key="data")
        if not isinstance(self.stepsize, stepsize_type):
            raise ConfigError("expected a stepsize_type", key="stepsize")
        for key in ("p", "d"):
            if getattr(self, key) < 1:
                raise ConfigError("must be a positive integer", key=key)
        if self.data is data_source_type.synthetic:
            self._check_synthetic()
        else:
            if self.data_path is None:
                raise ConfigError(
                    "is required when data = csv", key="data_path"
                )
            if self.problem is problem_type.olsr and self.labels_path is None:
                raise ConfigError(
                    "is required for OLSR data from CSV", key="labels_path"
                )
        if not 0.0 < self.prob <= 1.0:
            raise ConfigError(
                f"must lie in (0, 1], got {self.prob}", key="prob"
            )
        for key in (
            "beta",
            "eta",
            "eta0",
            "eta_min",
            "eta_max",
            "tol_substationarity",
            "tol_consensus",
            "tol_feasibility",
        ):
            if not getattr(self, key) > 0:
                raise ConfigError(
                    f"must be positive, got {getattr(self, key)}", key=key
                )
        if not self.eta_min <= self.eta0 <= self.eta_max:
            raise ConfigError(
                "requires eta_min <= eta0 <= eta_max, got "
                f"{self.eta_min}, {self.eta0}, {self.eta_max}",
                key="eta0",
            )
        if self.max_rounds < 0:
            raise ConfigError("must be nonnegative", key="max_rounds")
        if self.rho is not None and not self.rho > 0:
            raise ConfigError(f"must be positive, got {self.rho}", key="rho")
        if not 0 <= self.seed < _max_seed:
            raise ConfigError(
                f"must be a 64-bit unsigned integer, got {self.seed}",
                key="seed",
            )

    def _check_synthetic(self):
        for key in ("n", "m"):
            v = getattr(self, key)
            if v is None:
                raise ConfigError("is required when data = synthetic", key=key)
            if v < 1:
                raise ConfigError("must be a positive integer", key=key)
        if self.p > self.n:
            raise ConfigError(
                f"must not exceed n = {self.n}, got {self.p}", key="p"
            )
        if self.problem is problem_type.pca and self.n > self.m:
            raise ConfigError(
                f"synthetic PCA data needs n <= m, got m = {self.m}", key="m"
            )
        if not 0.0 < self.xi < 1.0:
            raise ConfigError(f"must lie in (0, 1), got {self.xi}", key="xi")

    def synthetic_spec(self, seed):
        """Parameters of the synthetic PCA matrix drawn with `seed`."""
        return SyntheticSpec(self.n, self.m, self.p, self.xi, seed=seed)

    def stepsize_rule(self):
        if self.stepsize is stepsize_type.fixed:
            return StepsizeRule.fixed(self.eta)
        return StepsizeRule.bb(self.eta0, self.eta_min, self.eta_max)

    def run_config(self):
        """Returns the solver settings as a :class:`RunConfig`."""
        return RunConfig(
            beta=self.beta,
            rule=self.stepsize_rule(),
            max_rounds=self.max_rounds,
            tol_substationarity=self.tol_substationarity,
            tol_consensus=self.tol_consensus,
            tol_feasibility=self.tol_feasibility,
            seed=self.seed,
            rho=self.rho,
            record_wall_time=self.record_wall_time,
        )

    def with_seed(self, seed):
        """Returns a copy with the master seed replaced."""
        return dataclasses.replace(self, seed=seed)


def _parse_int(key, text):
    try:
        return int(text)
    except ValueError:
        raise ConfigError(
            f"expected an integer, got '{text}'", key=key
        ) from None


def _parse_float(key, text):
    try:
        v = float(text)
    except ValueError:
        raise ConfigError(
            f"expected a number, got '{text}'", key=key
        ) from None
    if not math.isfinite(v):
        raise ConfigError(f"expected a finite number, got '{text}'", key=key)
    return v


def _parse_bool(key, text):
    word = text.lower()
    if word in _true_words:
        return True
    if word in _false_words:
        return False
    raise ConfigError(f"expected true or false, got '{text}'", key=key)


def _enum_parser(enum_cls):
    def parse(key, text):
        try:
            return enum_cls[text.lower()]
        except KeyError:
            names = ", ".join(e.name for e in enum_cls)
            raise ConfigError(
                f"expected one of {names}, got '{text}'", key=key
            ) from None

    return parse


def _optional(parse):
    def parse_optional(key, text):
        if text.lower() == "none":
            return None
        return parse(key, text)

    return parse_optional


def _parse_path(key, text):
    return text


_parsers = {
    "problem": _enum_parser(problem_type),
    "data": _enum_parser(data_source_type),
    "n": _optional(_parse_int),
    "m": _optional(_parse_int),
    "p": _parse_int,
    "xi": _parse_float,
    "data_path": _optional(_parse_path),
    "labels_path": _optional(_parse_path),
    "d": _parse_int,
    "prob": _parse_float,
    "beta": _parse_float,
    "stepsize": _enum_parser(stepsize_type),
    "eta": _parse_float,
    "eta0": _parse_float,
    "eta_min": _parse_float,
    "eta_max": _parse_float,
    "max_rounds": _parse_int,
    "tol_substationarity": _parse_float,
    "tol_consensus": _parse_float,
    "tol_feasibility": _parse_float,
    "rho": _optional(_parse_float),
    "seed": _parse_int,
    "record_wall_time": _parse_bool,
    "output": _parse_path,
    "graph_output": _optional(_parse_path),
}

_required = ("problem", "p", "d")
_path_keys = ("data_path", "labels_path", "output", "graph_output")
_input_keys = ("data_path", "labels_path")


def _read_assignments(path):
    values = {}
    linenos = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ConfigError(
                    f"expected 'key = value', got '{text}'",
                    path=path,
                    lineno=lineno,
                )
            key, _, value = text.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _parsers:
                raise ConfigError(
                    "unknown key", key=key, path=path, lineno=lineno
                )
            if key in values:
                raise ConfigError(
                    f"repeats the assignment of line {linenos[key]}",
                    key=key,
                    path=path,
                    lineno=lineno,
                )
            if not value:
                raise ConfigError(
                    "missing value", key=key, path=path, lineno=lineno
                )
            values[key] = value
            linenos[key] = lineno
    return values, linenos


def parse_config(path):
    """
    parse_config(path) -> ExperimentConfig

    Reads and validates an experiment configuration file.

    Raises:
        ConfigError: for a missing or unreadable file, a malformed line, an
            unknown or repeated key, a missing required key, a value of the
            wrong type or out of range, or an input file that does not
            exist. The message names the file, the line and the key.

    :Example:
        .. code-block:: python

            import destiny

            cfg = destiny.parse_config("pca.cfg")
            print(cfg.beta, cfg.prob, cfg.stepsize)
            # Possible output: 1.0 0.5 stepsize_type.bb
    """
    path = os.fspath(path)
    try:
        values, linenos = _read_assignments(path)
    except OSError as e:
        raise ConfigError(
            f"can not read configuration: {e.strerror}", path=path
        ) from None
    base = os.path.dirname(os.path.abspath(path))
    kwargs = {}
    try:
        for key, text in values.items():
            kwargs[key] = _parsers[key](key, text)
        for key in _required:
            if key not in kwargs:
                raise ConfigError("is required", key=key)
        for key in _path_keys:
            v = kwargs.get(key, getattr(ExperimentConfig, key, None))
            if v is not None:
                kwargs[key] = os.path.normpath(os.path.join(base, v))
        config = ExperimentConfig(**kwargs)
    except ConfigError as e:
        raise ConfigError(
            e.reason, key=e.key, path=path, lineno=linenos.get(e.key)
        ) from None
    for key in _input_keys:
        v = getattr(config, key)
        if v is not None and not os.path.isfile(v):
            raise ConfigError(
                f"file '{v}' does not exist",
                key=key,
                path=path,
                lineno=linenos.get(key),
            )
    return config


def _format_value(v):
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if hasattr(v, "name"):
        return v.name
    return str(v)


def serialize_config(config):
    """
    serialize_config(config: ExperimentConfig) -> str

    Returns a configuration file text assigning every key. Parsing the
    text yields a config equal to `config`.
    """
    if not isinstance(config, ExperimentConfig):
        raise TypeError(f"Expected ExperimentConfig, got {type(config)}")
    lines = []
    for f in dataclasses.fields(config):
        lines.append(f"{f.name} = {_format_value(getattr(config, f.name))}")
    return "\n".join(lines) + "\n"
