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

import argparse
import sys

import destiny


def _load(args):
    config = destiny.parse_config(args.config)
    if args.seed is not None:
        config = config.with_seed(args.seed)
    return config


def run_command(args) -> int:
    "Runs the experiment described by a config file"
    return destiny.run_experiment(_load(args))


def verify_command(args) -> int:
    "Audits the mixing matrix of the experiment network"
    return destiny.verify_experiment(_load(args))


def _seed(text):
    try:
        seed = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed '{text}'") from None
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError(
            f"seed must be a 64-bit unsigned integer, got {seed}"
        )
    return seed


def main(argv=None) -> int:
    """Main entry-point."""
    parser = argparse.ArgumentParser(
        prog="destiny",
        description="Decentralized optimization over the Stiefel manifold.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {destiny.__version__}",
    )
    parser.add_argument(
        "--verbosity",
        choices=["debug", "info", "warning", "error"],
        default="warning",
        help="Level of log messages written to standard error.",
    )
    parser.add_argument(
        "--log-dir",
        default=None,
        help="Existing directory to write a log file into.",
    )
    sub = parser.add_subparsers(dest="command")
    for name, func, help_text in (
        ("run", run_command, "Run an experiment and write its trace."),
        ("verify", verify_command, "Check the mixing matrix conditions."),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("config", help="Path of the configuration file.")
        cmd.add_argument(
            "--seed",
            type=_seed,
            default=None,
            help="Override the master seed of the configuration.",
        )
        cmd.set_defaults(func=func)
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 1
    try:
        with destiny.solver_diagnostics(
            verbosity=args.verbosity, log_dir=args.log_dir
        ):
            return args.func(args)
    except ValueError as e:
        # configuration errors and bad diagnostics settings
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
