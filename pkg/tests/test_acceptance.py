"""Acceptance criteria 1-11: exact equalities, stated sizes and time limits.

Each test records a PASS/FAIL line; the lines are printed in the terminal
summary (see conftest.py) and when this file is run as a script.
"""

import subprocess
import sys
import time

import pytest

from boolcum import checks
from boolcum.report import Report

SEED = 0
RESULTS: dict[int, str] = {}


def judge(number: int, title: str, report: Report, seconds: float, limit: float | None) -> None:
    ok = report.ok and report.checked > 0 and (limit is None or seconds < limit)
    bound = f" < {limit:g} s" if limit is not None else ""
    RESULTS[number] = (
        f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: "
        f"{report.checked} checks, {len(report.failures)} failures, {seconds:.2f} s{bound}"
    )
    print(RESULTS[number])
    assert report.checked > 0
    assert report.ok, report.failures[:3]
    if limit is not None:
        assert seconds < limit


def timed(fn, *args, **kwargs):
    t = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t


def test_criterion_01_roundtrip():
    rep, dt = timed(checks.check_roundtrip, SEED, order=10, cases=100)
    judge(1, "moment/cumulant roundtrip, 100 sequences, N=10", rep, dt, 1.0)


def test_criterion_02_composition_oracle():
    rep, dt = timed(checks.check_compositions, SEED, order=10, cases=5)
    judge(2, "recursion vs sum over interval partitions, n <= 10", rep, dt, 1.0)


def test_criterion_03_vanishing_adjacent_letters():
    rep, dt = timed(checks.check_vanishing, SEED, states=50, max_length=6)
    judge(3, "adjacent X,Y kill the cumulant, all placements, length <= 6, 50 states", rep, dt, 10.0)


def test_criterion_04_unit_and_product_entries():
    def both():
        rep = Report("unit+product")
        rep.merge(checks.check_unit_rules(SEED, states=20, max_length=6))
        rep.merge(checks.check_product_rules(SEED, states=20, max_length=6))
        return rep

    rep, dt = timed(both)
    judge(4, "unit entries and XY entries, positional sweeps, length <= 6", rep, dt, 30.0)


def test_criterion_05_convolutions():
    rep, dt = timed(checks.check_convolutions, SEED, order=8, cases=100)
    judge(5, "additive and multiplicative convolution, formula vs model, N=8, 100 pairs", rep, dt, 10.0)


def test_criterion_06_binomial_identity():
    rep, dt = timed(checks.check_binomial, 20)
    judge(6, "binomial identity, 0 <= a+b <= n <= 20", rep, dt, 1.0)


def test_criterion_07_dimension_one_collapse():
    rep, dt = timed(checks.check_ov_collapse, SEED, order=6, cases=50)
    judge(7, "operator-valued operations at d=1 equal scalar ones, 50 inputs, N=6", rep, dt, 10.0)


def test_criterion_08_unit_uppers_and_base_transfer():
    def both():
        rep = Report("uppers+transfer")
        rep.merge(checks.check_unit_uppers(SEED, order=4, dim=2, cases=5))
        rep.merge(checks.check_base_transfer(SEED, order=4, dim=2, cases=5))
        return rep

    rep, dt = timed(both)
    judge(8, "unit upper arguments and base-element transfer, n <= 4, d=2", rep, dt, 30.0)


@pytest.fixture(scope="module")
def ov_convolution_run():
    ident = Report("series-identity")
    rep, dt = timed(checks.check_ov_convolutions, SEED, order=5, dim=2, cases=20, identity_report=ident)
    return rep, ident, dt


def test_criterion_09_operator_valued_convolutions(ov_convolution_run):
    rep, _, dt = ov_convolution_run
    judge(9, "B_{X+Y} and B_(1+X)(1+Y) tensor identities, N=5, d=2, 20 states", rep, dt, 120.0)


def test_criterion_10_series_identity(ov_convolution_run):
    _, ident, _ = ov_convolution_run
    assert ident.checked == 20 * 4
    judge(10, "M = B(1 + I M) for every distribution of criterion 9", ident, 0.0, None)


def test_criterion_11_cli_determinism():
    commands = (["verify", "--seed", "0", "-n", "8"], ["ov-verify", "--seed", "0", "-n", "4", "-d", "2"])
    rep = Report("cli")
    t = time.perf_counter()
    for argv in commands:
        runs = [subprocess.run([sys.executable, "-m", "boolcum", *argv], capture_output=True) for _ in range(2)]
        for r in runs:
            rep.record(r.returncode == 0, argv=argv, exit=r.returncode, stderr=r.stderr.decode()[-500:])
        rep.record(runs[0].stdout == runs[1].stdout and len(runs[0].stdout) > 0, argv=argv, rule="byte-identical")
    judge(11, "CLI verify/ov-verify exit 0 with byte-identical reports", rep, time.perf_counter() - t, None)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
