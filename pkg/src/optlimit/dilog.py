"""Complex dilogarithm and principal logarithm.

The compiled kernels are used when the extension module is importable; setting
``OPTLIMIT_PURE_PYTHON=1`` forces the pure-Python implementation.
"""

from __future__ import annotations

import os

from . import _pykernels

kernels = _pykernels
BACKEND = "python"

if not os.environ.get("OPTLIMIT_PURE_PYTHON"):
    try:
        from . import _ckernels as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        kernels = _pykernels

PI2_6 = _pykernels.PI2_6


def li2(z: complex) -> complex:
    """Principal-branch dilogarithm, cut along [1, inf); on the cut the value has Im = -pi log z."""
    return kernels.li2(z)


def log_principal(z: complex) -> complex:
    """Principal logarithm, imaginary part in (-pi, pi]."""
    z = complex(z)
    if z == 0:
        raise ValueError("log_principal(0) is undefined")
    return kernels.clog(z)
