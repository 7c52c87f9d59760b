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

""" Defines unit test cases for the command line interface, the version
and the diagnostic utilities.
"""

import logging
import os
import re
import subprocess
import sys

import pytest
from helper import write_config

import destiny
from destiny.__main__ import main


def _config(tmp_path, **extra):
    entries = dict(
        problem="pca", n=10, m=40, p=2, d=4, max_rounds=3,
        record_wall_time="false",
    )
    entries.update(extra)
    return str(write_config(tmp_path / "exp.cfg", **entries))


def test___version__():
    ver = destiny.__version__
    assert type(ver) is str
    assert re.match(r"^\d+\.\d+\.\d+", ver) is not None


def test_main_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert capsys.readouterr().out.strip() == f"destiny {destiny.__version__}"


def test_main_without_command(capsys):
    assert main([]) == 1
    assert "usage" in capsys.readouterr().out


def test_main_run(tmp_path, capsys):
    cfg = _config(tmp_path)
    assert main(["run", cfg]) == 2
    out = capsys.readouterr().out
    assert out.startswith("status=max_rounds rounds=3 ")
    assert os.path.isfile(tmp_path / "trace.csv")


def test_main_run_seed_override(tmp_path):
    cfg = _config(tmp_path, output="a.csv")
    main(["run", cfg, "--seed", "5"])
    first = (tmp_path / "a.csv").read_bytes()
    main(["run", cfg, "--seed", "5"])
    assert (tmp_path / "a.csv").read_bytes() == first
    main(["run", cfg, "--seed", "6"])
    assert (tmp_path / "a.csv").read_bytes() != first


@pytest.mark.parametrize("seed", ["-1", "x", str(2**64)])
def test_main_bad_seed(tmp_path, seed):
    with pytest.raises(SystemExit) as excinfo:
        main(["run", _config(tmp_path), "--seed", seed])
    assert excinfo.value.code == 2


def test_main_config_error(tmp_path, capsys):
    cfg = _config(tmp_path, beta=-1)
    assert main(["run", cfg]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error: ")
    assert "beta" in err


def test_main_missing_config(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "missing.cfg")]) == 1
    assert "error:" in capsys.readouterr().err


def test_main_verify(tmp_path, capsys):
    assert main(["verify", _config(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("graph: d=4 ")
    assert "spectral_gap" in out


def test_main_verbosity(tmp_path, capsys):
    assert main(["--verbosity", "info", "run", _config(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "Starting run" in err
    assert "Run finished with status max_rounds" in err


def test_main_log_dir(tmp_path):
    log_dir = tmp_path / "logs"
    log_dir.mkdir()
    cfg = _config(tmp_path)
    argv = ["--verbosity", "debug", "--log-dir", str(log_dir), "run", cfg]
    assert main(argv) == 2
    (log_file,) = list(log_dir.iterdir())
    assert log_file.name.startswith("destiny_")
    assert "round 0:" in log_file.read_text()


def test_main_bad_log_dir(tmp_path, capsys):
    cfg = _config(tmp_path)
    assert main(["--log-dir", str(tmp_path / "nope"), "run", cfg]) == 1
    assert "does not exist" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    root = os.path.dirname(os.path.dirname(os.path.abspath(destiny.__file__)))
    env = dict(os.environ)
    env["PYTHONPATH"] = os.pathsep.join(
        p for p in (root, env.get("PYTHONPATH")) if p
    )
    res = subprocess.run(
        [sys.executable, "-m", "destiny", "run", _config(tmp_path)],
        capture_output=True,
        env=env,
    )
    assert res.returncode == 2
    assert res.stdout.decode("utf-8").startswith("status=max_rounds")


def test_round_timer():
    ticks = iter([1.0, 1.5, 2.0, 4.0])
    timer = destiny.RoundTimer(host_timer=lambda: next(ticks), time_scale=1e3)
    with pytest.raises(ValueError):
        timer.dt
    with timer:
        pass
    assert timer.dt == pytest.approx(500.0)
    with timer:
        pass
    assert timer.dt == pytest.approx(2000.0)
    assert timer.total == pytest.approx(2500.0)
    timer.reset()
    assert timer.total == 0.0


def test_round_timer_rejects_non_callable():
    with pytest.raises(TypeError):
        destiny.RoundTimer(host_timer=1.0)


def test_solver_diagnostics_restores_logger(tmp_path):
    logger = logging.getLogger("destiny")
    level = logger.level
    n_handlers = len(logger.handlers)
    with destiny.solver_diagnostics(verbosity="debug", log_dir=tmp_path) as lg:
        assert lg is logger
        assert logger.level == logging.DEBUG
        assert len(logger.handlers) == n_handlers + 2
        logging.getLogger("destiny.engine").debug("hello from the engine")
    assert logger.level == level
    assert len(logger.handlers) == n_handlers
    (log_file,) = list(tmp_path.iterdir())
    assert "hello from the engine" in log_file.read_text()


def test_solver_diagnostics_bad_verbosity():
    with pytest.raises(ValueError):
        with destiny.solver_diagnostics(verbosity="loud"):
            pass
