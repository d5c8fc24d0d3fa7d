"""Kernel backend selection.

The compiled extension is used when it imports; ``COMONOTONE_PURE=1`` forces
the numpy fallback.  ``BACKEND`` names the active one.
"""
import os

from . import _kernels_py as python_kernels

compiled_kernels = None
if os.environ.get("COMONOTONE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

_impl = compiled_kernels or python_kernels
BACKEND = "cython" if compiled_kernels is not None else "python"

jet_mul = _impl.jet_mul
jet_recip = _impl.jet_recip
jet_exp = _impl.jet_exp
jet_log = _impl.jet_log
newton_dd = _impl.newton_dd
newton_dd_batch = _impl.newton_dd_batch
fd_sup = _impl.fd_sup
