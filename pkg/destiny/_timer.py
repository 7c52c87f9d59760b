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


import timeit


class RoundTimer:
    """
    RoundTimer(host_timer=timeit.default_timer, time_scale=1)
    Python class to measure the wall time spent in communication rounds
    of the solver.

    :Example:
        .. code-block:: python

            import destiny

            miliseconds_sc = 1e-3
            timer = destiny.RoundTimer(time_scale=miliseconds_sc)

            with timer:
                code_block

            # elapsed time of the last block, and of all blocks so far
            dt = timer.dt
            total = timer.total

    Args:
        host_timer (callable): A callable such that host_timer() returns current
            host time in seconds.
        time_scale (int, float): Ratio of the unit of time of interest and
            one second.
    """

    def __init__(self, host_timer=timeit.default_timer, time_scale=1):
        if not callable(host_timer):
            raise TypeError(
                "The host timer must be callable, "
                "got {}".format(type(host_timer))
            )
        self.timer = host_timer
        self.time_scale = time_scale
        self.host_start = None
        self.host_finish = None
        self._total = 0.0

    def __enter__(self):
        self.host_start = self.timer()
        return self

    def __exit__(self, *args):
        self.host_finish = self.timer()
        self._total += self.host_finish - self.host_start

    @property
    def dt(self):
        """Returns the duration of the last timed block as measured by the
        host timer"""
        if self.host_finish is None:
            raise ValueError("The timer has not been used yet")
        return (self.host_finish - self.host_start) * self.time_scale

    @property
    def total(self):
        """Returns the accumulated duration of all timed blocks"""
        return self._total * self.time_scale

    def reset(self):
        self.host_start = None
        self.host_finish = None
        self._total = 0.0
