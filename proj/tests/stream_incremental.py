#!/usr/bin/env python3
# Copyright 2026 The olvit Authors
#
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
# limitations under the License.

"""Checks that `olvit stream` writes states while its input is still open."""

import select
import subprocess
import sys


def read_line(proc, timeout=5.0):
    ready, _, _ = select.select([proc.stdout], [], [], timeout)
    if not ready:
        return None
    return proc.stdout.readline()


def main(binary, data_dir):
    proc = subprocess.Popen([binary, "stream", "--model", f"{data_dir}/symmetric_k4.hmm", "--labels"],
                            stdin=subprocess.PIPE, stdout=subprocess.PIPE, stderr=subprocess.PIPE,
                            text=True, bufsize=1)
    got = []
    for _ in range(8):
        proc.stdin.write("0\n")
        proc.stdin.flush()
    # A run of zeros forces coalescences, so states must arrive before EOF.
    line = read_line(proc)
    if line is None:
        proc.kill()
        print("FAIL: no output before end of input")
        return 1
    got.append(line.strip())
    proc.stdin.write("1111\n")
    proc.stdin.close()
    rest = proc.stdout.read().split()
    code = proc.wait(timeout=10)
    got.extend(rest)
    expected = ["A"] * 8 + ["B"] * 4
    if code != 0 or got != expected:
        print(f"FAIL: exit {code}, got {got}, expected {expected}")
        return 1

    bad = subprocess.run([binary, "stream", "--model", f"{data_dir}/symmetric_k4.hmm"], input="0101x",
                         capture_output=True, text=True)
    if bad.returncode != 3:
        print(f"FAIL: invalid symbol exit {bad.returncode}")
        return 1
    print("PASS: stream output is incremental")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
