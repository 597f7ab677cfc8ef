"""Backend selection and agreement between the compiled and NumPy kernels."""

import subprocess
import sys

import numpy as np
import pytest

from phasecoder import backend

needs_both = pytest.mark.skipif(
    "compiled" not in backend.available(),
    reason="compiled kernel extension not built on this install",
)


@pytest.fixture
def restore_backend():
    original = backend.name
    yield
    backend.use(original)


def test_python_backend_always_available():
    assert "python" in backend.available()
    assert backend.name in backend.available()


def test_use_rejects_unknown_name(restore_backend):
    with pytest.raises(ValueError):
        backend.use("fortran")


def test_use_switches_module(restore_backend):
    mod = backend.use("python")
    assert backend.name == "python"
    assert backend.kernels is mod
    assert mod.__name__.endswith("_kernels_py")


@needs_both
def test_backends_agree_on_all_kernels(restore_backend):
    rng = np.random.default_rng(17)
    phi = np.ascontiguousarray(rng.uniform(-10, 10, 512))
    codes = np.ascontiguousarray(rng.uniform(-2, 2, (256, 5)))
    x = np.ascontiguousarray(rng.uniform(-40, 40, 1024))

    results = {}
    for which in ("python", "compiled"):
        k = backend.use(which)
        results[which] = {
            "encode": [k.encode_batch(phi, n) for n in (3, 4, 5, 8)],
            "sums": k.decode_sums(codes),
            "squash": k.squash(x),
            "sgrad": k.squash_grad(x),
        }

    for a, b in zip(results["python"]["encode"], results["compiled"]["encode"]):
        assert np.abs(a - b).max() < 1e-15
    for part in range(2):
        gap = np.abs(results["python"]["sums"][part] - results["compiled"]["sums"][part])
        assert gap.max() < 1e-12
    assert np.abs(results["python"]["squash"] - results["compiled"]["squash"]).max() < 1e-15
    assert np.abs(results["python"]["sgrad"] - results["compiled"]["sgrad"]).max() < 1e-15


@needs_both
def test_round_trip_agrees_through_either_backend(restore_backend):
    from phasecoder import decode, encode

    phi = np.linspace(-3.1, 3.1, 2000)
    outputs = {}
    for which in ("python", "compiled"):
        backend.use(which)
        outputs[which] = decode(encode(phi, 3))
    # summation order differs between the BLAS and loop paths, so demand
    # agreement to rounding level rather than bitwise identity
    assert np.abs(outputs["python"] - outputs["compiled"]).max() < 1e-12


@pytest.mark.parametrize("choice", ["python", "auto"])
def test_environment_variable_selection(choice):
    code = (
        "from phasecoder import backend; print(backend.name)"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "PHASECODER_BACKEND": choice},
    )
    assert out.returncode == 0
    assert out.stdout.strip() in (["python"] if choice == "python" else backend.available())


def test_environment_variable_bad_value():
    out = subprocess.run(
        [sys.executable, "-c", "import phasecoder"],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "PHASECODER_BACKEND": "gpu"},
    )
    assert out.returncode != 0
    assert "unknown backend" in out.stderr
