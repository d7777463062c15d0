"""The compiled kernels and their pure Python / numpy counterparts agree."""

import os
import subprocess
import sys

import numpy as np
import pytest

from rapoly import kernels
from rapoly._accel import NUMBA_ENABLED, python_impl
from rapoly.corpus import admissible_corpus, cube
from rapoly.polyhedron import rotation_arrays


def _members():
    return list(admissible_corpus())[:10] + [cube()]


def test_lobachevsky_paths_agree():
    theta = np.random.default_rng(1).uniform(-12, 12, 5000)
    theta[:3] = [0.0, np.pi / 2, -np.pi]
    loop = python_impl(kernels._lobachevsky_loop)(theta, kernels.CLAUSEN_COEFFS)
    vec = kernels._lobachevsky_numpy(theta, kernels.CLAUSEN_COEFFS)
    fast = kernels.lobachevsky_array(theta)
    assert np.max(np.abs(loop - vec)) < 1e-14
    assert np.max(np.abs(fast - vec)) < 1e-14


def test_canonical_code_paths_agree():
    for p in _members():
        nbr, deg = rotation_arrays(p)
        fast = kernels.canonical_code(nbr, deg)
        slow = python_impl(kernels.rooted_code)(nbr, deg, python_impl(kernels.all_roots)(deg))
        assert np.array_equal(fast, slow)


def test_circuit_paths_agree():
    for p in _members():
        ptr, face, edge, eu, ev = p.dual_csr
        nv = len(p.vertices)
        for k in (3, 4, 5):
            a = kernels.prismatic_cycles(ptr, face, edge, eu, ev, nv, k, 4096)
            b = python_impl(kernels.prismatic_cycles)(ptr, face, edge, eu, ev, nv, k, 4096)
            assert a[0] == b[0]
            assert np.array_equal(a[1][: a[0]], b[1][: b[0]])
            assert np.array_equal(a[2][: a[0]], b[2][: b[0]])


def test_circuit_overflow_signalled():
    p = admissible_corpus()[0]
    ptr, face, edge, eu, ev = p.dual_csr
    count, _, _ = kernels.prismatic_cycles(ptr, face, edge, eu, ev, len(p.vertices), 5, 3)
    assert count == -1


def test_env_flag_disables_numba():
    code = (
        "from rapoly._accel import NUMBA_ENABLED; from rapoly.lobell import build_lobell;"
        "from rapoly.circuits import prismatic_circuits; p = build_lobell(7);"
        "print(NUMBA_ENABLED, p.canonical.digest(), len(prismatic_circuits(p, 5)))"
    )
    env = dict(os.environ, RAP_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    flag, digest, n = out.stdout.split()
    from rapoly.lobell import build_lobell

    assert flag == "False"
    assert digest == build_lobell(7).canonical.digest()
    assert int(n) == 14


@pytest.mark.skipif(not NUMBA_ENABLED, reason="numba disabled")
def test_kernels_are_compiled():
    assert hasattr(kernels.canonical_code, "py_func")
    assert hasattr(kernels.prismatic_cycles, "py_func")
