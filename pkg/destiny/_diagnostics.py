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

"""Implements developer utilities to control diagnostic output.
"""
import contextlib
import logging
import os
import os.path

_verbosity_levels = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
}

_log_format = "%(asctime)s %(name)s %(levelname)s: %(message)s"


@contextlib.contextmanager
def solver_diagnostics(verbosity="warning", log_dir=None):
    """Context manager that routes log records of the ``destiny`` logger
    to standard error, and optionally to a file in ``log_dir``.

    Args:
        verbosity (str): one of "debug", "info", "warning" or "error".
        log_dir (str, optional): existing directory where a log file
            named ``destiny_<pid>.log`` is written.

    Raises:
        ValueError: if ``verbosity`` is not recognized or ``log_dir`` is
            not an existing directory.
    """
    if verbosity not in _verbosity_levels:
        raise ValueError(
            "Verbosity argument not understood. "
            f"Permitted values are {sorted(_verbosity_levels)}, "
            f"got '{verbosity}'"
        )
    if log_dir is not None and not os.path.isdir(log_dir):
        raise ValueError(f"Directory {log_dir} does not exist.")
    logger = logging.getLogger("destiny")
    formatter = logging.Formatter(_log_format)
    handlers = [logging.StreamHandler()]
    if log_dir is not None:
        log_fn = os.path.join(log_dir, f"destiny_{os.getpid()}.log")
        handlers.append(logging.FileHandler(log_fn, encoding="utf-8"))
    saved_level = logger.level
    for h in handlers:
        h.setFormatter(formatter)
        logger.addHandler(h)
    logger.setLevel(_verbosity_levels[verbosity])
    try:
        yield logger
    finally:
        for h in handlers:
            logger.removeHandler(h)
            h.close()
        logger.setLevel(saved_level)
