#!/usr/bin/env python3
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License

"""Regenerates the bundled synthetic event profiles.

Each profile is a set of anchor points; the library interpolates them with
a monotone cubic Hermite scheme. Values are rounded so the CSVs stay stable.
"""

import math
import pathlib

HERE = pathlib.Path(__file__).resolve().parent


def grid(t0, t1, dt):
    n = int(round((t1 - t0) / dt))
    return [t0 + i * (t1 - t0) / n for i in range(n + 1)]


def write(name, description, times, amp, freq):
    lines = [f"# {description}", "quantity,t_s,value"]
    lines += [f"amplitude_V,{t:.6g},{amp(t):.9g}" for t in times]
    lines += [f"frequency_Hz,{t:.6g},{freq(t):.9g}" for t in times]
    (HERE / f"{name}.csv").write_text("\n".join(lines) + "\n")


def smoothstep(x):
    x = min(max(x, 0.0), 1.0)
    return x * x * (3.0 - 2.0 * x)


def australia_like():
    t_event = 1.5

    def freq(t):
        calm = 50.0 + 0.004 * math.sin(2 * math.pi * 0.7 * t)
        if t <= t_event:
            return calm
        u = t - t_event
        return calm - 6.0 * u * smoothstep(u / 0.3) + 0.15 * math.sin(2 * math.pi * 2.0 * u) * (1 - math.exp(-u / 0.2))

    def amp(t):
        calm = 230.0 + 0.3 * math.sin(2 * math.pi * 0.9 * t)
        if t <= t_event:
            return calm
        u = t - t_event
        return calm - 60.0 * smoothstep(u / 0.8) + 4.0 * math.sin(2 * math.pi * 3.0 * u) * math.exp(-u / 0.6)

    write("australia_like",
          "Abrupt frequency collapse: calm, then a fast drop near -6 Hz/s with voltage sag and swings",
          grid(0.0, 3.0, 0.02), amp, freq)


def arizona_like():
    def freq(t):
        f = 50.0 + 0.003 * math.sin(2 * math.pi * 0.5 * t)
        f -= 0.15 * smoothstep((t - 2.0) / 0.6)
        f -= 0.25 * smoothstep((t - 6.0) / 0.8)
        return f

    def amp(t):
        a = 230.0 + 0.2 * math.sin(2 * math.pi * 0.3 * t)
        a -= 8.0 * smoothstep((t - 2.0) / 0.3)
        a -= 12.0 * smoothstep((t - 6.0) / 0.4)
        return a

    write("arizona_like",
          "Two-stage drop: two separated steps down in frequency and voltage",
          grid(0.0, 10.0, 0.05), amp, freq)


def turkey_like():
    def freq(t):
        return 50.0 - 0.04 * t + 0.01 * math.sin(2 * math.pi * 0.4 * t)

    def amp(t):
        jag = 1.5 * math.sin(2 * math.pi * 1.3 * t) + 0.8 * math.sin(2 * math.pi * 3.1 * t + 0.7)
        return 228.0 - 0.5 * t + jag

    write("turkey_like",
          "Frequency ramp with a jagged voltage magnitude",
          grid(0.0, 10.0, 0.05), amp, freq)


def florida_like():
    # The swing waxes and wanes in three lobes; it peaks at 50 mHz.
    def envelope(t):
        return math.sin(math.pi * t / 40.0) ** 4

    def freq(t):
        return 50.0 + 0.05 * envelope(t) * math.sin(2 * math.pi * 0.25 * t)

    def amp(t):
        return 230.0 * (1.0 + 0.0005 * envelope(t) * math.sin(2 * math.pi * 0.25 * t + 0.9))

    write("florida_like",
          "Forced oscillation: 0.25 Hz frequency swing up to 50 mHz peak, waxing and waning over 120 s",
          grid(0.0, 120.0, 0.1), amp, freq)


def croatia_like():
    def freq(t):
        f = 50.0 + 0.002 * math.sin(2 * math.pi * 0.2 * t)
        if t > 10.0:
            u = t - 10.0
            f -= 0.2 * smoothstep(u / 0.5)
            f += 0.06 * math.exp(-u / 4.0) * math.sin(2 * math.pi * 0.8 * u)
        return f

    def amp(t):
        a = 230.0 + 0.2 * math.sin(2 * math.pi * 0.15 * t)
        if t > 10.0:
            u = t - 10.0
            a -= 6.0 * smoothstep(u / 0.2)
            a -= 5.0 * math.exp(-u / 5.0) * abs(math.sin(2 * math.pi * 0.5 * u))
        return a

    write("croatia_like",
          "Step with decaying dips: frequency step down then damped swings",
          grid(0.0, 60.0, 0.05), amp, freq)


if __name__ == "__main__":
    australia_like()
    arizona_like()
    turkey_like()
    florida_like()
    croatia_like()
