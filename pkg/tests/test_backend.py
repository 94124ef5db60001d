"""Compiled and pure-numpy kernels must agree."""

from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

import fnclass
from fnclass import _kernels_py as py

ck = pytest.importorskip("fnclass._ckernels",
                         reason="compiled extension not built")


def test_active_backend_is_declared():
    assert fnclass.BACKEND in ("c", "py")
    assert ck.BACKEND_NAME == "c"
    assert py.BACKEND_NAME == "py"


def _random_problem(seed, n=23, m=17, k=9):
    rng = np.random.default_rng(seed)
    values = rng.normal(size=(n, m))
    other = rng.normal(size=(k, m))
    weights = np.abs(rng.normal(size=m)) + 0.01
    return values, other, weights


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_distance_kernels_agree(seed):
    values, other, weights = _random_problem(seed)
    got_c = ck.sq_l2_matrix(values, weights)
    got_py = py.sq_l2_matrix(values, weights)
    assert got_c == pytest.approx(got_py, rel=1e-12, abs=1e-15)
    assert np.array_equal(np.diag(got_c), np.zeros(len(values)))
    cross_c = ck.sq_l2_cross(values, other, weights)
    cross_py = py.sq_l2_cross(values, other, weights)
    assert cross_c == pytest.approx(cross_py, rel=1e-12, abs=1e-15)


def test_distance_kernels_accept_readonly_input():
    # the library hands the kernels frozen arrays; both backends must cope
    values, other, weights = _random_problem(7)
    for arr in (values, other, weights):
        arr.setflags(write=False)
    assert ck.sq_l2_matrix(values, weights) == pytest.approx(
        py.sq_l2_matrix(values, weights), rel=1e-12
    )
    assert ck.sq_l2_cross(values, other, weights) == pytest.approx(
        py.sq_l2_cross(values, other, weights), rel=1e-12
    )


def test_public_api_accepts_noncontiguous_values():
    # slices reach the kernels through the library, which re-packs them
    from fnclass import cross_distances, default_grid

    rng = np.random.default_rng(8)
    wide = rng.normal(size=(6, 18))
    sliced = wide[:, ::2]
    packed = np.ascontiguousarray(sliced)
    g = default_grid(9)
    assert np.array_equal(cross_distances(sliced, sliced, g),
                          cross_distances(packed, packed, g))


@pytest.mark.parametrize("seed", [3, 4])
def test_counting_kernels_agree_exactly(seed):
    # integer-valued scores create real ties; the two backends must
    # count them identically, not merely closely
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 6, size=40).astype(np.float64)
    b = rng.integers(0, 6, size=25).astype(np.float64)
    assert ck.count_below(a, b) == py.count_below(a, b)
    rows_a = rng.integers(0, 4, size=(10, 12)).astype(np.float64)
    rows_b = rng.integers(0, 4, size=(10, 12)).astype(np.float64)
    assert np.array_equal(ck.count_below_rows(rows_a, rows_b),
                          py.count_below_rows(rows_a, rows_b))


def test_count_below_hand_case():
    a = np.array([1.0, 2.0])
    b = np.array([2.0, 3.0])
    # pairs: (1,2)< (1,3)< (2,2)= (2,3)<  ->  3.5
    assert ck.count_below(a, b) == 3.5
    assert py.count_below(a, b) == 3.5


def test_backend_env_override_forces_the_fallback():
    env = dict(os.environ, FNCLASS_BACKEND="py")
    out = subprocess.run(
        [sys.executable, "-c", "import fnclass; print(fnclass.BACKEND)"],
        capture_output=True, text=True, env=env,
    )
    assert out.returncode == 0 and out.stdout.strip() == "py"
    env["FNCLASS_BACKEND"] = "nonsense"
    bad = subprocess.run(
        [sys.executable, "-c", "import fnclass"],
        capture_output=True, text=True, env=env,
    )
    assert bad.returncode != 0
    assert "FNCLASS_BACKEND" in bad.stderr


def test_scores_are_backend_independent():
    # end to end: leave-one-out scores computed under the fallback match
    # the in-process (compiled) backend bit for bit
    code = (
        "import numpy as np\n"
        "from fnclass import loo_scores, LabeledSample, Grid, TransformSpec\n"
        "rng = np.random.default_rng(99)\n"
        "s = LabeledSample(Grid(np.linspace(0, 1, 21)), rng.normal(size=(14, 21)),\n"
        "                  np.array([0]*7 + [1]*7))\n"
        "out = loo_scores(s, TransformSpec('positive_profile'))\n"
        "print(','.join(repr(float(v)) for v in out.scores))\n"
    )
    results = {}
    for backend in ("c", "py"):
        env = dict(os.environ, FNCLASS_BACKEND=backend)
        out = subprocess.run([sys.executable, "-c", code],
                             capture_output=True, text=True, env=env)
        assert out.returncode == 0, out.stderr
        results[backend] = out.stdout.strip()
    assert results["c"] == results["py"]
