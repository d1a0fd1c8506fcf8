#!/usr/bin/env python3
"""Test runner invoked by the judge.

Usage: py_sandbox.py CODE_FILE TEST_FILE TIMEOUT_SECONDS

CODE_FILE holds the code under test. TEST_FILE is JSON:
    {"tests": [{"name": "...", "code": "..."}, ...]}
Each test is executed in a namespace seeded with the loaded code. One JSON
object per test is written to stdout: {"name": ..., "passed": ..., "error"?}.

A test that raises, or that exceeds TIMEOUT_SECONDS, fails; it never aborts
the run. Process-level isolation (no network, rlimits, containers) is the
caller's responsibility via the configured run command.
"""
import json
import signal
import sys


class Timeout(Exception):
    pass


def _alarm(signum, frame):
    raise Timeout()


def run_with_timeout(code, namespace, seconds):
    signal.signal(signal.SIGALRM, _alarm)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        exec(compile(code, "<test>", "exec"), namespace)
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)


def main():
    if len(sys.argv) != 4:
        print(json.dumps({"fatal": "usage: py_sandbox.py CODE TESTS TIMEOUT"}))
        return 2
    code_file, test_file, timeout = sys.argv[1], sys.argv[2], float(sys.argv[3])
    with open(code_file) as fh:
        code = fh.read()
    with open(test_file) as fh:
        spec = json.load(fh)

    base = {}
    load_error = None
    try:
        run_with_timeout(code, base, timeout)
    except BaseException as exc:  # noqa: BLE001 - report, don't crash
        load_error = repr(exc)

    for test in spec["tests"]:
        record = {"name": test["name"]}
        if load_error is not None:
            record["passed"] = False
            record["error"] = "load failed: " + load_error
        else:
            ns = dict(base)
            try:
                run_with_timeout(test["code"], ns, timeout)
                record["passed"] = True
            except BaseException as exc:  # noqa: BLE001
                record["passed"] = False
                record["error"] = repr(exc)
        sys.stdout.write(json.dumps(record) + "\n")
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
