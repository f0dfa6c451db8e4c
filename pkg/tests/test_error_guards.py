"""The bug-guard error paths: descent failures and alternating checks are
surfaced, never silently dropped."""

import json
import subprocess
import sys

import pytest

from quatpairs.errors import DescentFailure, NotAlternating
from quatpairs.hermitian_pairs import QuatMatrix, pfaffian
from quatpairs.quaternion import QuaternionAlgebra, splitting_context


def test_descent_failure_guard(F3):
    alg = QuaternionAlgebra(F3, 2, 1)  # 2 is not a square mod 3
    ctx = splitting_context(alg, F3)
    assert ctx.needs_descent
    bad = ctx.ext_ring.gen()  # pure sqrt(a) component
    with pytest.raises(DescentFailure):
        ctx.descend(bad, "test")
    good = ctx.ext_ring.coerce(2)
    assert ctx.descend(good, "test") == F3.coerce(2)


def test_pfaffian_rejects_non_hermitian(F3):
    alg = QuaternionAlgebra(F3, 1, 1)
    m = QuatMatrix(alg, F3, [[alg.i(), alg.one()], [alg.one(), alg.zero()]])
    with pytest.raises(NotAlternating):
        pfaffian(m)


def test_report_outputs_are_canonical_fixed_points():
    from quatpairs import serialize as ser

    for args in (
        ["census", "--q", "3", "--n", "3", "--samples", "1000", "--seed", "0"],
        ["params", "--field", "Fp:3", "--L=1,-1,0,1"],
        ["verify", "--suite", "reducible", "--field", "Fp:3", "--samples", "2", "--seed", "0"],
    ):
        proc = subprocess.run([sys.executable, "-m", "quatpairs.cli"] + args,
                              capture_output=True, text=True)
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert ser.dumps(json.loads(proc.stdout)) == proc.stdout


def test_census_limits_flag():
    proc = subprocess.run(
        [sys.executable, "-m", "quatpairs.cli", "census", "--q", "3", "--n", "2",
         "--limits", '{"max_states": 10}'],
        capture_output=True, text=True)
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["code"] == "ResourceLimit"
