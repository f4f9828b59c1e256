"""Backend parity: the compiled kernel and the numpy fallback must agree."""

import subprocess
import sys

import numpy as np
import pytest

from spheremin import _kernels_py
from spheremin.algebra import FactoredMeromorphic, monomial, shifted_power
from spheremin.kernels import BACKEND

cython_kernels = pytest.importorskip(
    "spheremin._kernels", reason="compiled kernel not built"
)


def _forms():
    yield FactoredMeromorphic(1.0, [monomial(1)])
    yield FactoredMeromorphic(
        -2.5, [monomial(-1), shifted_power(2, 0.25), shifted_power(2, 1.0, -2)]
    )
    yield FactoredMeromorphic(
        1.0 / 3.0,
        [
            monomial(7),
            shifted_power(6, 3958.0),
            shifted_power(6, 1.0 / 3958.0, -1),
            shifted_power(3, -1.0j, 2),
        ],
    )


def test_backends_agree_on_random_nodes():
    rng = np.random.default_rng(42)
    z = rng.normal(size=500) + 1j * rng.normal(size=500)
    for f in _forms():
        kinds, ks, cs, exps = f._packed
        out_c = np.empty_like(z)
        out_p = np.empty_like(z)
        cython_kernels.eval_product(f.coefficient, kinds, ks, cs, exps, z, out_c)
        _kernels_py.eval_product(f.coefficient, kinds, ks, cs, exps, z, out_p)
        assert np.allclose(out_c, out_p, rtol=1e-13, atol=0.0)


def test_backend_labels():
    assert cython_kernels.BACKEND == "cython"
    assert _kernels_py.BACKEND == "python"
    assert BACKEND in ("cython", "python")


def test_env_var_forces_python_backend():
    code = (
        "from spheremin.kernels import BACKEND; print(BACKEND)"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"SPHEREMIN_KERNEL": "python", "PATH": "/usr/bin:/bin"},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_python_backend_drives_full_evaluation(monkeypatch):
    # route FactoredMeromorphic.eval_array through the fallback kernel
    from spheremin import algebra, kernels

    monkeypatch.setattr(kernels, "eval_product", _kernels_py.eval_product)
    f = FactoredMeromorphic(2.0, [monomial(1), shifted_power(2, 1.0, -1)])
    z = np.array([2.0 + 0j, 0.5j])
    got = f.eval_array(z)
    want = np.array([f.eval(2.0), f.eval(0.5j)])
    assert np.allclose(got, want, rtol=1e-13)
