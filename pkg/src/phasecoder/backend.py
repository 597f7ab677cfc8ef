"""Kernel backend selection.

The hot transform loops exist twice: a compiled Cython module and a NumPy
reference.  By default the compiled one is used when importable and the
NumPy one otherwise.  Set PHASECODER_BACKEND=python or =compiled to force a
choice (forcing "compiled" raises if the extension was not built).
"""

import importlib
import os

_MODULES = {
    "python": "phasecoder._kernels_py",
    "compiled": "phasecoder._kernels_cy",
}

kernels = None
name = None


def available():
    """Names of the backends that can be imported on this install."""
    out = []
    for label, module in _MODULES.items():
        try:
            importlib.import_module(module)
        except ImportError:
            continue
        out.append(label)
    return out


def use(which):
    """Switch the active backend; returns the kernel module."""
    global kernels, name
    if which not in _MODULES:
        raise ValueError(f"unknown backend {which!r}, expected one of {sorted(_MODULES)}")
    kernels = importlib.import_module(_MODULES[which])
    name = which
    return kernels


def _init():
    pref = os.environ.get("PHASECODER_BACKEND", "auto").strip().lower()
    if pref in ("", "auto"):
        try:
            use("compiled")
        except ImportError:
            use("python")
    else:
        use(pref)


_init()
